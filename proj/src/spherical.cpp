#include "aklv/spherical.hpp"

#include <algorithm>
#include <queue>

namespace aklv {

std::vector<SphericalOrbit> enumerate_dominant(const OrbitGraph& g, const AffineCtx& ctx,
                                               Int bound) {
  if (bound > g.max_delta)
    throw UnsupportedInput("orbit graph too shallow: bound " + std::to_string(bound) +
                           " exceeds max_delta " + std::to_string(g.max_delta));
  const int n = g.num_nodes();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int nc = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[static_cast<size_t>(start)] >= 0) continue;
    std::queue<int> bfs;
    bfs.push(start);
    comp[static_cast<size_t>(start)] = nc;
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (int k = 0; k < g.num_finite_roots; ++k) {
        const Edge& e = g.edge(v, k);
        for (int nb : {e.up, e.partner, e.down}) {
          if (nb >= 0 && comp[static_cast<size_t>(nb)] < 0) {
            comp[static_cast<size_t>(nb)] = nc;
            bfs.push(nb);
          }
        }
      }
    }
    ++nc;
  }
  std::vector<SphericalOrbit> out;
  for (int c = 0; c < nc; ++c) {
    SphericalOrbit orbit;
    bool reliable = true;
    for (int v = 0; v < n; ++v) {
      if (comp[static_cast<size_t>(v)] != c) continue;
      orbit.members.push_back(v);
      for (int k = 0; k < g.num_finite_roots; ++k)
        if (g.edge(v, k).up == kBeyond) reliable = false;
    }
    if (!reliable) continue;  // its open node provably exceeds max_delta >= bound
    Int dmax = -1;
    int open = -1;
    bool unique = true;
    for (int v : orbit.members) {
      if (g.delta(v) > dmax) {
        dmax = g.delta(v);
        open = v;
        unique = true;
      } else if (g.delta(v) == dmax) {
        unique = false;
      }
    }
    if (!unique)
      throw TheoremViolation("spherical stratum without a unique open Iwahori orbit");
    if (dmax > bound) continue;
    orbit.open_node = open;
    orbit.delta = dmax;
    orbit.label = dominantize(ctx.datum(), g.nodes[static_cast<size_t>(open)].w.tr);
    // characters that extend across the whole stratum
    for (int chi = 0; chi < g.num_chars(open); ++chi) {
      bool total = true;
      for (int u : orbit.members)
        if (restrict_char(g, orbit, chi, u) < 0) total = false;
      if (total) orbit.chars.push_back(chi);
    }
    if (orbit.chars.empty())
      throw TheoremViolation("spherical stratum without the trivial system");
    out.push_back(std::move(orbit));
  }
  std::sort(out.begin(), out.end(), [](const SphericalOrbit& a, const SphericalOrbit& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    return lex_cmp(a.label, b.label) < 0;
  });
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i].label == out[i - 1].label && out[i].delta == out[i - 1].delta)
      throw TheoremViolation("two spherical strata with the same label");
  return out;
}

int restrict_char(const OrbitGraph& g, const SphericalOrbit& orbit, int chi, int u) {
  // Transport from the open node downward along descent edges inside the
  // stratum. A nonzero a-value along the way means the Kummer system has
  // monodromy in that rank-one direction and does not extend equivariantly
  // over the stratum: the transport is reported undefined everywhere.
  std::map<int, int> assigned;  // node -> char index
  assigned[orbit.open_node] = chi;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : orbit.members) {
      auto av = assigned.find(v);
      if (av == assigned.end()) continue;
      const int cv = av->second;
      for (int k = 0; k < g.num_finite_roots; ++k) {
        const Edge& e = g.edge(v, k);
        if (!is_type_b(e.type)) continue;
        auto push = [&](int target, int chr) {
          if (target < 0 || chr < 0) return;
          auto it = assigned.find(target);
          if (it == assigned.end()) {
            assigned[target] = chr;
            changed = true;
          } else if (it->second != chr) {
            throw TheoremViolation("restriction mismatch: inconsistent character transport");
          }
        };
        const size_t ci = static_cast<size_t>(cv);
        if (e.type == OrbitType::IIb) {
          push(e.down, e.cross_down[ci]);
        } else {
          if (e.a_nonzero[ci]) return -1;  // no equivariant extension
          push(e.down, e.bar_down[ci]);
          if (e.type == OrbitType::IIIb) push(e.partner, e.bar_down[ci]);
        }
      }
    }
  }
  auto it = assigned.find(u);
  return it == assigned.end() ? -1 : it->second;
}

RelKFTable rel_kf(const OrbitGraph& g, const PTable& p, const std::vector<SphericalOrbit>& sph) {
  RelKFTable table;
  for (size_t li = 0; li < sph.size(); ++li) {
    const SphericalOrbit& lam = sph[li];
    const int vl = lam.open_node;
    for (int chi : lam.chars) {
      table.entries[{static_cast<int>(li), chi, static_cast<int>(li), chi}] = HalfLaurent::one();
      for (size_t mi = 0; mi < sph.size(); ++mi) {
        if (mi == li) continue;
        const SphericalOrbit& mu = sph[mi];
        const int u0 = mu.open_node;
        if (!g.closure_leq(u0, vl)) continue;
        for (int chip : mu.chars) {
          HalfLaurent val = p.get({u0, chip}, {vl, chi});
          // independence of the Iwahori representative
          for (int u : mu.members) {
            if (u == u0 || !g.closure_leq(u, vl)) continue;
            int eta = restrict_char(g, mu, chip, u);
            if (eta < 0) continue;
            if (p.get({u, eta}, {vl, chi}) != val)
              throw TheoremViolation(
                  "restriction mismatch: P depends on the Iwahori representative");
          }
          if (!val.is_zero())
            table.entries[{static_cast<int>(mi), chip, static_cast<int>(li), chi}] = val;
        }
      }
    }
  }
  return table;
}

SphericalBTable b_spherical(const OrbitGraph& g, const DualityTable& d,
                            const std::vector<SphericalOrbit>& sph) {
  SphericalBTable table;
  for (size_t li = 0; li < sph.size(); ++li) {
    const SphericalOrbit& lam = sph[li];
    for (int chi : lam.chars) {
      table.entries[{static_cast<int>(li), chi, static_cast<int>(li), chi}] =
          HalfLaurent::q_pow_half(static_cast<int>(-2 * lam.delta));
      for (size_t mi = 0; mi < sph.size(); ++mi) {
        if (mi == li) continue;
        const SphericalOrbit& mu = sph[mi];
        for (int chip : mu.chars) {
          std::optional<HalfLaurent> common;
          // the sum must not depend on the representative (eta, u) in (chi', mu)
          for (int u : mu.members) {
            int eta = (u == mu.open_node) ? chip : restrict_char(g, mu, chip, u);
            if (eta < 0) continue;
            HalfLaurent total;
            bool complete = true;
            for (int v : lam.members) {
              int xi = (v == lam.open_node) ? chi : restrict_char(g, lam, chi, v);
              if (xi < 0) {
                complete = false;
                break;
              }
              if (!g.closure_leq(u, v)) continue;
              total += d.b(g, {u, eta}, {v, xi});
            }
            if (!complete) continue;
            if (!common) {
              common = total;
            } else if (*common != total) {
              throw TheoremViolation("restriction mismatch: spherical B not well defined");
            }
          }
          if (common && !common->is_zero())
            table.entries[{static_cast<int>(mi), chip, static_cast<int>(li), chi}] = *common;
        }
      }
    }
  }
  return table;
}

KlvCheck verify_spherical_recurrence(const OrbitGraph& g, const std::vector<SphericalOrbit>& sph,
                                     const SphericalBTable& b, const RelKFTable& p) {
  KlvCheck rep;
  const int ns = static_cast<int>(sph.size());
  for (int li = 0; li < ns; ++li)
    for (int chi : sph[static_cast<size_t>(li)].chars)
      for (int mi = 0; mi < ns; ++mi) {
        if (mi == li) continue;
        for (int chip : sph[static_cast<size_t>(mi)].chars) {
          const Int dl = sph[static_cast<size_t>(li)].delta;
          const Int dm = sph[static_cast<size_t>(mi)].delta;
          const int neg_chi = g.char_neg(sph[static_cast<size_t>(li)].open_node, chi);
          const int neg_chip = g.char_neg(sph[static_cast<size_t>(mi)].open_node, chip);
          HalfLaurent lhs = p.get(mi, chip, li, neg_chi) -
                            p.get(mi, neg_chip, li, chi).bar().shifted(
                                static_cast<int>(2 * (dl - dm)));
          HalfLaurent rhs;
          for (int gi = 0; gi < ns; ++gi) {
            if (gi == mi) continue;
            for (int chi2 : sph[static_cast<size_t>(gi)].chars) {
              HalfLaurent bb = b.get(mi, chip, gi, chi2);
              if (bb.is_zero()) continue;
              HalfLaurent pp =
                  (gi == li && chi2 == chi) ? HalfLaurent::one() : p.get(gi, chi2, li, chi);
              if (pp.is_zero()) continue;
              rhs += bb * pp.bar();
            }
          }
          rhs = rhs.shifted(static_cast<int>(2 * dl));
          bool relevant = !lhs.is_zero() || !rhs.is_zero();
          if (!relevant) continue;
          ++rep.checked;
          if (lhs != rhs)
            rep.failures.push_back("spherical recurrence residual at strata (" +
                                   std::to_string(mi) + "," + std::to_string(li) + ")");
        }
      }
  // pole-order bound: q^{delta(lambda)} B is a polynomial in q
  for (const auto& [key, val] : b.entries) {
    const Int dl = sph[static_cast<size_t>(std::get<2>(key))].delta;
    ++rep.checked;
    if (!val.shifted(static_cast<int>(2 * dl)).is_poly_in_q())
      rep.failures.push_back("spherical B pole order exceeds delta(lambda)");
  }
  return rep;
}

bool lx_connected(const BasedRootDatum& datum, const InvolutionDatum& inv) {
  LambdaSBasis ls = lambda_s_basis(datum, inv);
  return ls.quotient_invariants.empty();
}

KlvCheck codim_check(const BasedRootDatum& datum, const InvolutionDatum& inv,
                     const std::vector<SphericalOrbit>& sph) {
  if (!lx_connected(datum, inv))
    throw UnsupportedInput("codim_check requires connected LX (Lambda_S = Lambda_S cap Q)");
  KlvCheck rep;
  for (const SphericalOrbit& lam : sph)
    for (const SphericalOrbit& mu : sph) {
      if (!coroot_sum_leq(datum, lam.label, mu.label)) continue;
      ++rep.checked;
      Int expect = rho_pair(datum, IntVec(mu.label - lam.label));
      if (mu.delta - lam.delta != expect)
        rep.failures.push_back("codim formula fails: delta gap " +
                               std::to_string(mu.delta - lam.delta) + " vs <rho,mu-lambda> " +
                               std::to_string(expect));
    }
  return rep;
}

bool spherical_closure_leq(const BasedRootDatum& datum, const InvolutionDatum& inv,
                           const IntVec& mu, const IntVec& lambda) {
  for (const IntVec& arg : {mu, lambda}) {
    if (!is_dominant(datum, arg)) throw AklvError("spherical label is not dominant");
    IntVec th = dominantize(datum, IntVec(inv.theta_cochar * arg));
    IntVec neg = dominantize(datum, IntVec(-arg));
    if (th != neg) throw AklvError("not in Lambda_S: theta(arg) not Weyl-conjugate to -arg");
  }
  return coroot_sum_leq(datum, mu, lambda);
}

}  // namespace aklv
