#include "aklv/io.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace aklv {

using ordered_json = nlohmann::ordered_json;

CheckOutcome verify_hecke_axioms(const OrbitGraph& g, const AffineCtx& ctx) {
  CheckOutcome out;
  out.name = "hecke";
  out.ran = true;
  const HalfLaurent q = HalfLaurent::q();
  const HalfLaurent one = HalfLaurent::one();
  for (int v = 0; v < g.num_nodes(); ++v)
    for (int c = 0; c < g.num_chars(v); ++c) {
      ModuleElt m = ModuleElt::basis(v, c);
      for (int k = 0; k < g.num_roots; ++k) {
        try {
          ModuleElt tm = t_simple(g, k, m);
          ModuleElt lhs = t_simple(g, k, tm);
          ModuleElt rhs = tm.scaled(q - one) + m.scaled(q);
          ++out.checked;
          if (!(lhs == rhs))
            out.failures.push_back("quadratic relation fails at node " + std::to_string(v) +
                                   " root " + std::to_string(k));
        } catch (const TruncationOverflow&) {
          ++out.skipped;
        }
      }
      // braid relations for finite-order pairs
      for (int k1 = 0; k1 < g.num_roots; ++k1)
        for (int k2 = k1 + 1; k2 < g.num_roots; ++k2) {
          int ord = braid_order(ctx, k1, k2);
          if (ord == 0) continue;
          try {
            ModuleElt a = m, b = m;
            for (int i = 0; i < ord; ++i) {
              a = t_simple(g, (i % 2 == 0) ? k1 : k2, a);
              b = t_simple(g, (i % 2 == 0) ? k2 : k1, b);
            }
            ++out.checked;
            if (!(a == b))
              out.failures.push_back("braid relation fails at node " + std::to_string(v) +
                                     " roots " + std::to_string(k1) + "," + std::to_string(k2));
          } catch (const TruncationOverflow&) {
            ++out.skipped;
          }
        }
    }
  return out;
}

BasedRootDatum group_case_factor_datum(const BasedRootDatum& doubled) {
  if (doubled.rank % 2 != 0) throw AklvError("group case datum must have even rank");
  const Eigen::Index m = doubled.rank / 2;
  BasedRootDatum factor;
  factor.rank = m;
  factor.cartan_type_label = doubled.cartan_type_label + "_factor";
  std::vector<Eigen::Index> first;
  for (Eigen::Index i = 0; i < doubled.num_simple(); ++i) {
    if (doubled.simple_roots.col(i).tail(m).isZero())
      first.push_back(i);
    else if (!doubled.simple_roots.col(i).head(m).isZero())
      throw AklvError("group case simple root mixes the two factors");
  }
  factor.simple_roots.resize(m, static_cast<Eigen::Index>(first.size()));
  factor.simple_coroots.resize(m, static_cast<Eigen::Index>(first.size()));
  for (size_t j = 0; j < first.size(); ++j) {
    factor.simple_roots.col(static_cast<Eigen::Index>(j)) =
        doubled.simple_roots.col(first[j]).head(m);
    factor.simple_coroots.col(static_cast<Eigen::Index>(j)) =
        doubled.simple_coroots.col(first[j]).head(m);
  }
  InvolutionDatum trivial;
  trivial.theta_cochar = IntMat::Identity(m, m);
  trivial.pinning_signs.assign(first.size(), 1);
  validate(factor, trivial);
  return factor;
}

namespace {

// Oracle-side bar involution: T-bar_w = T-bar_s T-bar_{w'} with
// T-bar_s = q^{-1} T_s + (q^{-1} - 1), expanded in the standard basis.
std::map<int, HalfLaurent> oracle_bar_expansion(const CoxeterOracle& orc, int w,
                                                std::map<int, std::map<int, HalfLaurent>>& memo) {
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  std::map<int, HalfLaurent> out;
  if (orc.len(w) == 0) {
    out[w] = HalfLaurent::one();
  } else {
    int s = -1;
    for (int i = 0; i < orc.num_gens() && s < 0; ++i) {
      int lw = orc.mul_gen(w, i, true);
      if (orc.len(lw) < orc.len(w)) s = i;
    }
    auto rest = oracle_bar_expansion(orc, orc.mul_gen(w, s, true), memo);
    const HalfLaurent qinv = HalfLaurent::q_pow_half(-2);
    const HalfLaurent qm1 = qinv - HalfLaurent::one();
    for (const auto& [u, coeff] : rest) {
      // T_s T_u = T_{su} if su > u else (q-1)T_u + q T_{su}
      int su = orc.mul_gen(u, s, true);
      if (orc.len(su) > orc.len(u)) {
        out[su] += coeff * qinv;
      } else {
        out[u] += coeff * qinv * (HalfLaurent::q() - HalfLaurent::one());
        out[su] += coeff * qinv * HalfLaurent::q();
      }
      out[u] += coeff * qm1;
    }
    for (auto i2 = out.begin(); i2 != out.end();) {
      if (i2->second.is_zero())
        i2 = out.erase(i2);
      else
        ++i2;
    }
  }
  memo[w] = out;
  return out;
}

}  // namespace

CheckOutcome verify_group_case(const OrbitGraph& g, const AffineCtx& ctx, const DualityTable& d,
                               const PTable& p) {
  CheckOutcome out;
  out.name = "group_case";
  out.ran = true;
  BasedRootDatum factor = group_case_factor_datum(ctx.datum());
  InvolutionDatum trivial;
  trivial.theta_cochar = IntMat::Identity(factor.rank, factor.rank);
  trivial.pinning_signs.assign(static_cast<size_t>(factor.num_simple()), 1);
  AffineCtx fctx(factor, trivial);
  CoxeterOracle orc(affine_cartan_matrix(factor), g.max_delta + 1);

  // bijection: node -> oracle element via a reduced word of the factor element
  std::vector<int> to_oracle(static_cast<size_t>(g.num_nodes()), -1);
  for (int v = 0; v < g.num_nodes(); ++v) {
    ExtAffWeylElt u = group_case_factor(g, ctx, v);
    if (length(fctx, u) != g.delta(v)) {
      out.failures.push_back("node delta differs from factor length at node " +
                             std::to_string(v));
      continue;
    }
    std::vector<int> word = reduced_word_left(fctx, u);
    int e = 0;
    for (auto itw = word.rbegin(); itw != word.rend(); ++itw) e = orc.mul_gen(e, *itw, true);
    to_oracle[static_cast<size_t>(v)] = e;
  }
  // node count per level matches the oracle ball
  for (Int dlt = 0; dlt <= g.max_delta; ++dlt) {
    int engine = 0, oracle = 0;
    for (int v = 0; v < g.num_nodes(); ++v)
      if (g.delta(v) == dlt) ++engine;
    for (int e = 0; e < orc.num_elements(); ++e)
      if (orc.len(e) == dlt) ++oracle;
    ++out.checked;
    if (engine != oracle)
      out.failures.push_back("node count at delta " + std::to_string(dlt) +
                             " differs from the Weyl ball");
  }
  // P table comparison, both directions
  std::map<int, std::map<int, HalfLaurent>> bar_memo;
  for (int v = 0; v < g.num_nodes(); ++v) {
    auto bar = oracle_bar_expansion(orc, to_oracle[static_cast<size_t>(v)], bar_memo);
    for (int u = 0; u < g.num_nodes(); ++u) {
      const int eu = to_oracle[static_cast<size_t>(u)], ev = to_oracle[static_cast<size_t>(v)];
      HalfLaurent engine_p = p.get({u, 0}, {v, 0});
      HalfLaurent oracle_p = orc.kl_poly(eu, ev);
      ++out.checked;
      if (engine_p != oracle_p) {
        out.failures.push_back("P mismatch at nodes (" + std::to_string(u) + "," +
                               std::to_string(v) + "): engine " + engine_p.str() + " vs oracle " +
                               oracle_p.str());
        continue;
      }
      // duality coefficients against the oracle bar involution
      HalfLaurent engine_b = d.b(g, {u, 0}, {v, 0});
      HalfLaurent oracle_b;
      auto itb = bar.find(eu);
      if (itb != bar.end()) oracle_b = itb->second;
      if (engine_b != oracle_b)
        out.failures.push_back("b mismatch at nodes (" + std::to_string(u) + "," +
                               std::to_string(v) + ")");
      // oracle-internal R-duality: bar-expansion coefficients are signed,
      // q^{-l(w)}-scaled R polynomials (two independent recursions)
      if (orc.bruhat_leq(eu, ev)) {
        HalfLaurent r = orc.r_poly(eu, ev).shifted(static_cast<int>(-2 * orc.len(ev)));
        if ((orc.len(ev) - orc.len(eu)) % 2 != 0) r = -r;
        if (oracle_b != r)
          out.failures.push_back("oracle bar/R identity fails at (" + std::to_string(u) + "," +
                                 std::to_string(v) + ")");
      }
      // closure order vs Bruhat order
      if (g.closure_leq(u, v) != orc.bruhat_leq(eu, ev))
        out.failures.push_back("closure/Bruhat mismatch at (" + std::to_string(u) + "," +
                               std::to_string(v) + ")");
    }
  }
  return out;
}

namespace {

CheckOutcome from_duality_check(const std::string& name, const DualityCheck& c) {
  CheckOutcome out;
  out.name = name;
  out.ran = true;
  out.checked = c.checked;
  out.skipped = c.skipped;
  out.failures = c.failures;
  return out;
}
CheckOutcome from_klv_check(const std::string& name, const KlvCheck& c) {
  CheckOutcome out;
  out.name = name;
  out.ran = true;
  out.checked = c.checked;
  out.failures = c.failures;
  return out;
}

bool wants(const RunConfig& cfg, const std::string& what) {
  return cfg.verify.count("all") > 0 || cfg.verify.count(what) > 0;
}

}  // namespace

std::unique_ptr<Pipeline> run_pipeline(const RunConfig& config) {
  auto pipe = std::make_unique<Pipeline>();
  pipe->spec = load_pair_spec(config.pair_spec_path);
  pipe->validation = validate(pipe->spec.datum, pipe->spec.inv);
  if (!pipe->validation.schema_ok())
    throw SchemaError("pair spec violates schema: " + pipe->validation.str());

  if (wants(config, "gl2o2")) {
    CheckOutcome out;
    out.name = "gl2o2";
    out.ran = true;
    for (int m = 0; m <= 20; ++m) {
      auto seq = gl2o2_sequences(m);
      ++out.checked;
      for (const auto& f : seq.failures)
        out.failures.push_back("m=" + std::to_string(m) + ": " + f);
      if (m >= 1 && seq.lambda[1] != BigRat(1, 2))
        out.failures.push_back("lambda_1 != 1/2 at m=" + std::to_string(m));
      if (m >= 1 && seq.lambda[2] != BigRat(-1, 8))
        out.failures.push_back("lambda_2 != -1/8 at m=" + std::to_string(m));
    }
    pipe->checks.push_back(out);
  }

  // "report" emits only the verification report and never forces a graph
  const bool needs_graph =
      config.outputs.count("orbits") || config.outputs.count("b") || config.outputs.count("P") ||
      config.outputs.count("c") || config.outputs.count("relkf") ||
      config.outputs.count("oracle_P") || wants(config, "hecke") || wants(config, "duality") ||
      wants(config, "selfdual") || wants(config, "parity") || wants(config, "positivity") ||
      wants(config, "degree") || wants(config, "codim") || wants(config, "group_case") ||
      wants(config, "relkf");
  if (!needs_graph) return pipe;

  pipe->ctx.emplace(pipe->spec.datum, pipe->spec.inv);
  BuildOptions opts;
  opts.max_delta = config.max_delta;
  opts.group_case = pipe->spec.inv.group_case;
  pipe->graph = build_orbit_graph(*pipe->ctx, opts);
  const OrbitGraph& g = *pipe->graph;

  if (wants(config, "hecke")) pipe->checks.push_back(verify_hecke_axioms(g, *pipe->ctx));

  pipe->duality = compute_duality(g, config.threads);
  // theorem-backed verifications are opt-out: they run whenever their tables exist
  pipe->checks.push_back(from_duality_check("duality:d_squared", verify_d_squared(g, *pipe->duality)));
  pipe->checks.push_back(
      from_duality_check("duality:hecke_compat", verify_hecke_compat(g, *pipe->duality)));
  pipe->checks.push_back(
      from_duality_check("degree:b_table", verify_b_invariants(g, *pipe->duality)));

  pipe->p_table = solve_P(g, *pipe->duality, config.threads);
  pipe->checks.push_back(
      from_klv_check("positivity:P", verify_p_invariants(g, *pipe->p_table)));
  pipe->checks.push_back(
      from_klv_check("selfdual:C", verify_selfdual(g, *pipe->duality, *pipe->p_table)));
  pipe->c_table = c_from_P(g, *pipe->p_table);
  pipe->checks.push_back(from_klv_check("parity:c_slots", verify_c_parity(g, *pipe->c_table)));
  pipe->checks.push_back(from_klv_check(
      "duality:bc_relation",
      verify_bc_relation(g, *pipe->duality, *pipe->p_table, *pipe->c_table)));

  // spherical level
  Int bound = config.spherical_bound >= 0 ? config.spherical_bound : config.max_delta;
  pipe->spherical = enumerate_dominant(g, *pipe->ctx, bound);
  if (config.outputs.count("relkf") || wants(config, "relkf") || wants(config, "codim")) {
    pipe->relkf = rel_kf(g, *pipe->p_table, pipe->spherical);
    pipe->b_sph = b_spherical(g, *pipe->duality, pipe->spherical);
    pipe->checks.push_back(from_klv_check(
        "relkf:recurrence",
        verify_spherical_recurrence(g, pipe->spherical, *pipe->b_sph, *pipe->relkf)));
  }
  if (wants(config, "codim")) {
    if (lx_connected(pipe->spec.datum, pipe->spec.inv)) {
      pipe->checks.push_back(from_klv_check(
          "codim", codim_check(pipe->spec.datum, pipe->spec.inv, pipe->spherical)));
    } else {
      CheckOutcome out;
      out.name = "codim";
      out.ran = false;  // not applicable: LX disconnected
      pipe->checks.push_back(out);
    }
  }
  if (wants(config, "group_case")) {
    if (pipe->spec.inv.group_case) {
      pipe->checks.push_back(verify_group_case(g, *pipe->ctx, *pipe->duality, *pipe->p_table));
    } else if (config.verify.count("group_case")) {
      throw UnsupportedInput("group_case verification requested for a non-group-case pair");
    } else {
      CheckOutcome out;
      out.name = "group_case";
      out.ran = false;  // not applicable under --verify all
      pipe->checks.push_back(out);
    }
  }
  return pipe;
}

namespace {

ordered_json poly_json(const HalfLaurent& f) {
  ordered_json arr = ordered_json::array();
  for (const auto& [e, c] : f.serialized()) arr.push_back({e, c});
  return arr;
}

// q^{delta} b and P entries are polynomials in q: list [q-exponent, coeff]
ordered_json qpoly_json(const HalfLaurent& f) {
  ordered_json arr = ordered_json::array();
  for (const auto& [e, c] : f.serialized()) {
    if (e % 2 != 0) throw AklvError("expected integral q-powers in dump");
    arr.push_back({e / 2, c});
  }
  return arr;
}

std::string poly_csv(const HalfLaurent& f) {
  std::string s;
  for (const auto& [e, c] : f.serialized()) {
    if (!s.empty()) s += ";";
    s += std::to_string(e) + ":" + c;
  }
  return s.empty() ? "0" : s;
}

ordered_json vec_json(const IntVec& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}
ordered_json mat_json(const IntMat& m) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    arr.push_back(row);
  }
  return arr;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write output file: " + path);
  out << content;
}

}  // namespace

void write_outputs(const Pipeline& pipe, const RunConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const bool json = config.format == "json";
  const OrbitGraph* g = pipe.graph ? &*pipe.graph : nullptr;

  if (config.outputs.count("orbits") && g) {
    if (json) {
      ordered_json doc;
      doc["name"] = pipe.spec.name;
      doc["max_delta"] = g->max_delta;
      doc["nodes"] = ordered_json::array();
      for (int v = 0; v < g->num_nodes(); ++v) {
        const Node& n = g->nodes[static_cast<size_t>(v)];
        ordered_json jn;
        jn["id"] = v;
        jn["delta"] = n.delta;
        jn["tw_inv"] = {{"translation", vec_json(n.w.tr)}, {"finite_part", mat_json(n.w.fin)}};
        jn["tag"] = vec_json(n.tag);
        jn["component_group_order"] = n.cg.order();
        doc["nodes"].push_back(jn);
      }
      doc["edges"] = ordered_json::array();
      for (int v = 0; v < g->num_nodes(); ++v)
        for (int k = 0; k < g->num_roots; ++k) {
          const Edge& e = g->edge(v, k);
          ordered_json je;
          je["source"] = v;
          je["root"] = k;
          je["type"] = orbit_type_name(e.type);
          je["up"] = e.up;
          je["partner"] = e.partner;
          je["down"] = e.down;
          ordered_json tr;
          if (!e.cross_up.empty()) tr["cross_up"] = e.cross_up;
          if (!e.cross_partner.empty()) tr["cross_partner"] = e.cross_partner;
          if (!e.cross_down.empty()) tr["cross_down"] = e.cross_down;
          if (!e.a_nonzero.empty()) tr["a_nonzero"] = e.a_nonzero;
          if (!e.bar_down.empty()) tr["bar_down"] = e.bar_down;
          if (!e.xi_prime.empty()) tr["xi_prime"] = e.xi_prime;
          if (!e.preimages.empty()) {
            ordered_json pre = ordered_json::array();
            for (auto& [a, b] : e.preimages) pre.push_back({a, b});
            tr["preimages"] = pre;
          }
          je["transport"] = tr;
          doc["edges"].push_back(je);
        }
      write_file(config.out_dir + "/orbits.json", doc.dump(2) + "\n");
    } else {
      auto ints = [](const IntVec& x) {
        std::string s;
        for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x(i));
        return s;
      };
      std::string csv = "id,delta,translation,tag,component_group_order\n";
      for (int v = 0; v < g->num_nodes(); ++v) {
        const Node& n = g->nodes[static_cast<size_t>(v)];
        csv += std::to_string(v) + "," + std::to_string(n.delta) + ",\"" + ints(n.w.tr) + "\",\"" +
               ints(n.tag) + "\"," + std::to_string(n.cg.order()) + "\n";
      }
      write_file(config.out_dir + "/orbits.csv", csv);
    }
  }

  // row order for tables: column-major by v (node ids are already sorted by
  // (delta, canonical key)), then u, then characters
  if (config.outputs.count("b") && g && pipe.duality) {
    std::vector<std::tuple<int, int, int, int, HalfLaurent>> sorted;  // v,u,xi,eta
    for (const auto& [key, dm] : pipe.duality->d) {
      const auto& [v, xi] = key;
      for (const auto& [lk, coeff] : dm.terms()) {
        const auto& [u, eta] = lk;
        if (u == v) continue;
        sorted.emplace_back(v, u, xi, eta, coeff.shifted(static_cast<int>(2 * g->delta(v))));
      }
    }
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a)) <
             std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b));
    });
    ordered_json rows = ordered_json::array();
    std::string csv = "u,eta,v,xi,q_delta_b\n";
    for (const auto& [v, u, xi, eta, scaled] : sorted) {
      if (json) {
        ordered_json r;
        r["u"] = u;
        r["eta"] = eta;
        r["v"] = v;
        r["xi"] = xi;
        r["q_delta_b"] = qpoly_json(scaled);
        rows.push_back(r);
      } else {
        csv += std::to_string(u) + "," + std::to_string(eta) + "," + std::to_string(v) + "," +
               std::to_string(xi) + ",\"" + poly_csv(scaled) + "\"\n";
      }
    }
    if (json)
      write_file(config.out_dir + "/b.json", rows.dump(2) + "\n");
    else
      write_file(config.out_dir + "/b.csv", csv);
  }

  if (config.outputs.count("P") && g && pipe.p_table) {
    std::vector<std::tuple<int, int, int, int, HalfLaurent>> sorted;
    for (const auto& [key, val] : pipe.p_table->entries)
      sorted.emplace_back(key.second.first, key.first.first, key.second.second,
                          key.first.second, val);
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a)) <
             std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b));
    });
    ordered_json rows = ordered_json::array();
    std::string csv = "u,eta,v,xi,P\n";
    for (const auto& [v, u, xi, eta, val] : sorted) {
      if (json) {
        ordered_json r;
        r["u"] = u;
        r["eta"] = eta;
        r["v"] = v;
        r["xi"] = xi;
        r["P"] = qpoly_json(val);
        rows.push_back(r);
      } else {
        csv += std::to_string(u) + "," + std::to_string(eta) + "," + std::to_string(v) + "," +
               std::to_string(xi) + ",\"" + poly_csv(val) + "\"\n";
      }
    }
    if (json)
      write_file(config.out_dir + "/P.json", rows.dump(2) + "\n");
    else
      write_file(config.out_dir + "/P.csv", csv);
  }

  if (config.outputs.count("c") && g && pipe.c_table) {
    std::vector<std::tuple<int, int, int, int, Int, HalfLaurent>> sorted;
    for (const auto& [key, val] : pipe.c_table->entries) {
      const auto& [uk, vk, i] = key;
      sorted.emplace_back(vk.first, uk.first, vk.second, uk.second, i, val);
    }
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a),
                      std::get<4>(a)) < std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b),
                                                 std::get<3>(b), std::get<4>(b));
    });
    ordered_json rows = ordered_json::array();
    std::string csv = "u,eta,v,xi,i,value\n";
    for (const auto& [v, u, xi, eta, i, val] : sorted) {
      if (json) {
        ordered_json r;
        r["u"] = u;
        r["eta"] = eta;
        r["v"] = v;
        r["xi"] = xi;
        r["i"] = i;
        r["value"] = poly_json(val);
        rows.push_back(r);
      } else {
        csv += std::to_string(u) + "," + std::to_string(eta) + "," + std::to_string(v) + "," +
               std::to_string(xi) + "," + std::to_string(i) + ",\"" + poly_csv(val) + "\"\n";
      }
    }
    if (json)
      write_file(config.out_dir + "/c.json", rows.dump(2) + "\n");
    else
      write_file(config.out_dir + "/c.csv", csv);
  }

  if (config.outputs.count("oracle_P") && g && pipe.spec.inv.group_case) {
    // classical KL table of the factor, in the P.json row schema for diffing
    BasedRootDatum factor = group_case_factor_datum(pipe.spec.datum);
    CoxeterOracle orc(affine_cartan_matrix(factor), g->max_delta + 1);
    InvolutionDatum trivial;
    trivial.theta_cochar = IntMat::Identity(factor.rank, factor.rank);
    trivial.pinning_signs.assign(static_cast<size_t>(factor.num_simple()), 1);
    AffineCtx fctx(factor, trivial);
    ordered_json rows = ordered_json::array();
    std::string csv = "u,eta,v,xi,P\n";
    for (int v = 0; v < g->num_nodes(); ++v) {
      ExtAffWeylElt fv = group_case_factor(*g, *pipe.ctx, v);
      std::vector<int> wv = reduced_word_left(fctx, fv);
      int ev = 0;
      for (auto it = wv.rbegin(); it != wv.rend(); ++it) ev = orc.mul_gen(ev, *it, true);
      for (int u = 0; u < g->num_nodes(); ++u) {
        ExtAffWeylElt fu = group_case_factor(*g, *pipe.ctx, u);
        std::vector<int> wu = reduced_word_left(fctx, fu);
        int eu = 0;
        for (auto it = wu.rbegin(); it != wu.rend(); ++it) eu = orc.mul_gen(eu, *it, true);
        HalfLaurent p = orc.kl_poly(eu, ev);
        if (p.is_zero()) continue;
        if (json) {
          ordered_json r;
          r["u"] = u;
          r["eta"] = 0;
          r["v"] = v;
          r["xi"] = 0;
          r["P"] = qpoly_json(p);
          rows.push_back(r);
        } else {
          csv += std::to_string(u) + ",0," + std::to_string(v) + ",0,\"" + poly_csv(p) + "\"\n";
        }
      }
    }
    if (json)
      write_file(config.out_dir + "/oracle_P.json", rows.dump(2) + "\n");
    else
      write_file(config.out_dir + "/oracle_P.csv", csv);
  }

  if (config.outputs.count("relkf") && pipe.relkf) {
    ordered_json rows = ordered_json::array();
    std::string csv = "mu,chi_prime,lambda,chi,P\n";
    for (const auto& [key, val] : pipe.relkf->entries) {
      const auto& [mi, chip, li, chi] = key;
      const auto& mu = pipe.spherical[static_cast<size_t>(mi)];
      const auto& lam = pipe.spherical[static_cast<size_t>(li)];
      if (json) {
        ordered_json r;
        r["mu_label"] = vec_json(mu.label);
        r["chi_prime"] = chip;
        r["lambda_label"] = vec_json(lam.label);
        r["chi"] = chi;
        r["P"] = qpoly_json(val);
        rows.push_back(r);
      } else {
        auto lbl = [](const IntVec& x) {
          std::string s = "(";
          for (Eigen::Index i = 0; i < x.size(); ++i)
            s += (i ? " " : "") + std::to_string(x(i));
          return s + ")";
        };
        csv += "\"" + lbl(mu.label) + "\"," + std::to_string(chip) + ",\"" + lbl(lam.label) +
               "\"," + std::to_string(chi) + ",\"" + poly_csv(val) + "\"\n";
      }
    }
    if (json)
      write_file(config.out_dir + "/relkf.json", rows.dump(2) + "\n");
    else
      write_file(config.out_dir + "/relkf.csv", csv);
  }

  write_file(config.out_dir + "/verification_report.json", verification_report_json(pipe));
}

std::string verification_report_json(const Pipeline& pipe) {
  ordered_json doc;
  doc["pair"] = pipe.spec.name;
  doc["checks"] = ordered_json::array();
  bool all = true;
  for (const CheckOutcome& c : pipe.checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["ran"] = c.ran;
    jc["checked"] = c.checked;
    jc["skipped"] = c.skipped;
    jc["pass"] = c.pass();
    jc["failures"] = c.failures;
    doc["checks"].push_back(jc);
    all = all && c.pass();
  }
  doc["all_pass"] = all;
  return doc.dump(2) + "\n";
}

}  // namespace aklv
