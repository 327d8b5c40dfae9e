#include "aklv/orbit_graph.hpp"

#include <algorithm>
#include <map>

namespace aklv {

const char* orbit_type_name(OrbitType t) {
  switch (t) {
    case OrbitType::I: return "I";
    case OrbitType::IIa: return "IIa";
    case OrbitType::IIb: return "IIb";
    case OrbitType::IIIa: return "IIIa";
    case OrbitType::IIIb: return "IIIb";
    case OrbitType::IVa: return "IVa";
    case OrbitType::IVb: return "IVb";
  }
  return "?";
}

int ComponentGroup::char_index(const IntVec& canonical_rep) const {
  for (size_t i = 0; i < chars.size(); ++i)
    if (chars[i] == canonical_rep) return static_cast<int>(i);
  return -1;
}

ComponentGroup component_group(const IntMat& psi) {
  const Eigen::Index n = psi.rows();
  if (!(psi * psi).isIdentity()) throw AklvError("not an involution");
  ComponentGroup cg;
  cg.psi = psi;
  IntMat A = psi.transpose() - IntMat::Identity(n, n);
  cg.L = column_hnf_basis(A);
  Snf s = smith_normal_form(A);
  std::vector<Eigen::Index> two_slots;
  Eigen::Index r = std::min(s.D.rows(), s.D.cols());
  for (Eigen::Index i = 0; i < r; ++i) {
    Int d = s.D(i, i);
    if (d != 0 && d != 1 && d != 2) throw AklvError("involution with invariant factor > 2");
    if (d == 2) two_slots.push_back(i);
  }
  IntMat Uinv = unimodular_inverse(s.U);
  const size_t m = two_slots.size();
  std::vector<IntVec> reps;
  for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
    IntVec x = IntVec::Zero(n);
    for (size_t b = 0; b < m; ++b)
      if (mask & (size_t(1) << b)) x += Uinv.col(two_slots[b]);
    reps.push_back(hnf_reduce(cg.L, x));
  }
  std::sort(reps.begin(), reps.end(), [](const IntVec& a, const IntVec& b) {
    bool za = a.isZero(), zb = b.isZero();
    if (za != zb) return za;
    return lex_cmp(a, b) < 0;
  });
  for (size_t i = 1; i < reps.size(); ++i)
    if (reps[i] == reps[i - 1]) throw AklvError("component group: duplicate class");
  cg.chars = std::move(reps);
  if (cg.chars.empty() || !cg.chars[0].isZero())
    throw AklvError("component group: missing trivial character");
  return cg;
}

bool OrbitGraph::is_closed(int v) const {
  for (const Edge& e : nodes[static_cast<size_t>(v)].edges)
    if (is_type_b(e.type)) return false;
  return true;
}

int OrbitGraph::char_neg(int v, int c) const {
  const ComponentGroup& cg = nodes[static_cast<size_t>(v)].cg;
  IntVec neg = cg.reduce(IntVec(-cg.chars[static_cast<size_t>(c)]));
  int idx = cg.char_index(neg);
  if (idx < 0) throw AklvError("char_neg: negation left the character group");
  return idx;
}

bool OrbitGraph::closure_leq(int u, int v) const {
  if (leq_.empty()) throw AklvError("closure order not finalized");
  return leq_[static_cast<size_t>(u)][static_cast<size_t>(v)] != 0;
}

int OrbitGraph::find_node(const ExtAffWeylElt& w, const IntVec& tag) const {
  for (int i = 0; i < num_nodes(); ++i)
    if (nodes[static_cast<size_t>(i)].w == w && nodes[static_cast<size_t>(i)].tag == tag) return i;
  return -1;
}

void OrbitGraph::finalize_closure() {
  const size_t n = static_cast<size_t>(num_nodes());
  leq_.assign(n, std::vector<char>(n, 0));
  for (size_t v = 0; v < n; ++v) {
    leq_[v][v] = 1;
    for (const Edge& e : nodes[v].edges) {
      if (!is_type_b(e.type)) continue;
      for (int lower : {e.down, e.partner})
        if (lower >= 0) leq_[static_cast<size_t>(lower)][v] = 1;
    }
  }
  // Richardson-Springer monoid saturation: u <= v implies that every orbit of
  // the rank-one set P_k O_u lies in the closure of the open orbit of P_k O_v.
  // (Plain descent generation misses pairs already in the SL2/T fixture.)
  auto members = [&](size_t u, int k, std::vector<int>& out) {
    out.clear();
    out.push_back(static_cast<int>(u));
    const Edge& e = nodes[u].edges[static_cast<size_t>(k)];
    for (int nb : {e.up, e.partner, e.down})
      if (nb >= 0) out.push_back(nb);
  };
  auto open_member = [&](size_t v, int k) -> int {
    const Edge& e = nodes[v].edges[static_cast<size_t>(k)];
    if (is_type_b(e.type) || e.type == OrbitType::I) return static_cast<int>(v);
    return e.up;  // may be kBeyond above the truncation
  };
  bool changed = true;
  std::vector<int> mem;
  while (changed) {
    changed = false;
    for (size_t v = 0; v < n; ++v)
      for (int k = 0; k < num_roots; ++k) {
        int o = open_member(v, k);
        if (o < 0) continue;
        for (size_t u = 0; u < n; ++u) {
          if (!leq_[u][v]) continue;
          members(u, k, mem);
          for (int a : mem)
            if (!leq_[static_cast<size_t>(a)][static_cast<size_t>(o)]) {
              leq_[static_cast<size_t>(a)][static_cast<size_t>(o)] = 1;
              changed = true;
            }
        }
      }
    // transitive closure after each saturation pass
    for (size_t z = 0; z < n; ++z)
      for (size_t u = 0; u < n; ++u)
        if (leq_[u][z])
          for (size_t v = 0; v < n; ++v)
            if (leq_[z][v] && !leq_[u][v]) {
              leq_[u][v] = 1;
              changed = true;
            }
  }
  // sanity: delta is monotone along the order
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v)
      if (leq_[u][v] && nodes[u].delta > nodes[v].delta)
        throw TheoremViolation("closure order violates delta monotonicity");
  down_sets_.assign(n, {});
  for (size_t v = 0; v < n; ++v)
    for (size_t u = 0; u < n; ++u)
      if (leq_[u][v]) down_sets_[v].push_back(static_cast<int>(u));
}

OrbitType classify(const OrbitGraph& g, int v, int k) { return g.edge(v, k).type; }

namespace {

struct Builder {
  const AffineCtx& ctx;
  const BuildOptions& opts;
  OrbitGraph g;
  std::map<std::pair<std::vector<Int>, std::vector<Int>>, int> index;

  Builder(const AffineCtx& c, const BuildOptions& o) : ctx(c), opts(o) {}

  static std::vector<Int> vec_key(const IntVec& v) {
    return std::vector<Int>(v.data(), v.data() + v.size());
  }
  static std::pair<std::vector<Int>, std::vector<Int>> node_key(const ExtAffWeylElt& w,
                                                                const IntVec& tag) {
    std::vector<Int> kw(w.tr.data(), w.tr.data() + w.tr.size());
    for (Eigen::Index i = 0; i < w.fin.rows(); ++i)
      for (Eigen::Index j = 0; j < w.fin.cols(); ++j) kw.push_back(w.fin(i, j));
    return {kw, vec_key(tag)};
  }

  IntMat tag_span(const IntMat& psi) const {
    const Eigen::Index n = ctx.datum().rank;
    IntMat one_minus = IntMat::Identity(n, n) - psi;
    return f2_column_basis(saturation_basis(one_minus));
  }

  int add_node(const TitsElt& tau, Int delta_expected) {
    if (!is_twisted_involution(ctx, tau.w))
      throw TheoremViolation("orbit parameter is not a twisted involution");
    IntMat psi = tau.w.fin * ctx.inv().theta_cochar;
    // the representative must satisfy theta(tau) = tau^{-1} exactly
    TitsElt lhs = tits_theta(ctx, tau);
    TitsElt rhs = tits_inverse(ctx, tau);
    if (!(lhs.w == rhs.w) || lhs.kappa != rhs.kappa)
      throw TheoremViolation("fiber tag outside the anti-fixed torus");
    IntVec tag = f2_reduce(tag_span(psi), tau.kappa);
    auto key = node_key(tau.w, tag);
    auto it = index.find(key);
    if (it != index.end()) {
      if (g.nodes[static_cast<size_t>(it->second)].delta != delta_expected)
        throw TheoremViolation("delta inconsistency at node " + std::to_string(it->second));
      return it->second;
    }
    Node node;
    node.w = tau.w;
    node.tag = tag;
    node.tau = tau;
    node.psi = psi;
    node.cg = component_group(psi);
    node.delta = delta_expected;
    node.edges.resize(static_cast<size_t>(g.num_roots));
    g.nodes.push_back(std::move(node));
    int id = g.num_nodes() - 1;
    index.emplace(key, id);
    return id;
  }

  // sign of psi_v on the root subgroups of a psi_v-fixed simple affine root
  Int sigma_sign(int v, int k) {
    const Node& node = g.nodes[static_cast<size_t>(v)];
    IntVec coroot2 = mod2(IntVec(ctx.simple_affine_coroot(k)));
    if (coroot2.isZero())
      throw UnsupportedInput("untracked scalar: affine coroot trivial mod 2");
    TitsElt nk = tits_of(ctx, ctx.simple_reflection(k));
    TitsElt conj =
        tits_mul(ctx, node.tau, tits_mul(ctx, tits_theta(ctx, nk), tits_inverse(ctx, node.tau)));
    if (!(conj.w == ctx.simple_reflection(k)))
      throw AklvError("sigma_sign: conjugate is not the expected reflection");
    if (conj.kappa.isZero()) return 1;
    if (conj.kappa == coroot2) return -1;
    throw UnsupportedInput("untracked scalar: unexpected torus part in pinning transport");
  }

  // index map xi -> s_alpha xi from node `from` into node `to`
  std::vector<int> cross_map(int from, int to, int k) const {
    const ComponentGroup& a = g.nodes[static_cast<size_t>(from)].cg;
    const ComponentGroup& b = g.nodes[static_cast<size_t>(to)].cg;
    IntMat s_char = ctx.simple_reflection(k).fin.transpose();
    std::vector<int> out;
    for (const IntVec& x : a.chars) {
      IntVec img = b.reduce(IntVec(s_char * x));
      int idx = b.char_index(img);
      if (idx < 0) throw TheoremViolation("cross action left the character group");
      out.push_back(idx);
    }
    return out;
  }

  // decompose 2x = y + m*beta with y in L; returns m (unique)
  Int beta_coefficient(const IntMat& L, const IntVec& beta, const IntVec& x) const {
    const Eigen::Index n = x.size();
    IntMat stacked(n, L.cols() + 1);
    if (L.cols() > 0) stacked.leftCols(L.cols()) = L;
    stacked.col(L.cols()) = beta;
    auto sol = solve_rational(stacked, IntVec(2 * x));
    if (!sol) throw TheoremViolation("character outside the rank-one lattice");
    for (const BigRat& c : *sol)
      if (boost::multiprecision::denominator(c) != 1)
        throw TheoremViolation("non-integral rank-one decomposition");
    return static_cast<Int>(boost::multiprecision::numerator((*sol)[L.cols()]));
  }

  // fill the descent-side edge at the open node `o` for root k
  void fill_b_edge(int o, int k, OrbitType type, int down, int partner) {
    Edge& e = g.nodes[static_cast<size_t>(o)].edges[static_cast<size_t>(k)];
    if (e.type != OrbitType::I || e.down != kUnset) {
      // already registered from the partner's expansion; must agree
      if (e.type != type || e.down != down || e.partner != partner)
        if (!(e.type == type &&
              ((e.down == down && e.partner == partner) ||
               (e.down == partner && e.partner == down))))
          throw TheoremViolation("inconsistent descent registration");
      return;
    }
    e.type = type;
    e.down = down;
    e.partner = partner;
    const Node& no = g.nodes[static_cast<size_t>(o)];
    const Node& nl = g.nodes[static_cast<size_t>(down)];
    const IntVec beta = ctx.simple_affine(k).root;
    if (partner >= 0) {
      const Node& np = g.nodes[static_cast<size_t>(partner)];
      if (nl.cg.chars != np.cg.chars)
        throw TheoremViolation("IIIb lower orbits carry different character groups");
    }
    const int nc = no.cg.order();
    e.a_nonzero.assign(static_cast<size_t>(nc), 0);
    e.bar_down.assign(static_cast<size_t>(nc), -1);
    if (type == OrbitType::IVb) e.xi_prime.assign(static_cast<size_t>(nc), -1);
    // M = L_lower + Z beta, shared with L_o + Z beta
    IntMat M_low(no.psi.rows(), nl.cg.L.cols() + 1);
    if (nl.cg.L.cols() > 0) M_low.leftCols(nl.cg.L.cols()) = nl.cg.L;
    M_low.col(nl.cg.L.cols()) = beta;
    IntMat M = column_hnf_basis(M_low);
    for (int c = 0; c < nc; ++c) {
      const IntVec& x = no.cg.chars[static_cast<size_t>(c)];
      Int m = beta_coefficient(nl.cg.L, beta, x);
      if (m % 2 != 0) {
        e.a_nonzero[static_cast<size_t>(c)] = 1;
      } else {
        IntVec xbar = x - (m / 2) * beta;
        int idx = nl.cg.char_index(nl.cg.reduce(xbar));
        if (idx < 0) throw TheoremViolation("induced character missing on the lower orbit");
        e.bar_down[static_cast<size_t>(c)] = idx;
      }
      if (type == OrbitType::IVb) {
        int other = -1;
        for (int c2 = 0; c2 < nc; ++c2) {
          if (c2 == c) continue;
          if (lattice_contains(M, IntVec(no.cg.chars[static_cast<size_t>(c2)] - x))) {
            if (other >= 0) throw TheoremViolation("IVb: more than one partner character");
            other = c2;
          }
        }
        if (other < 0) throw TheoremViolation("IVb: partner character missing");
        e.xi_prime[static_cast<size_t>(c)] = other;
      }
    }
  }

  void expand(int v, int k) {
    Node& node = g.nodes[static_cast<size_t>(v)];
    Edge& e = node.edges[static_cast<size_t>(k)];
    const AffineRoot a = ctx.simple_affine(k);
    const AffineRoot psi_a = act_on_affine_root(node.w, ctx.theta_on_affine(a));
    const AffineRoot neg_a{IntVec(-a.root), -a.level};
    const bool at_cap = node.delta == opts.max_delta;

    if (psi_a == a) {
      if (!ctx.is_positive(act_on_affine_root(inverse(node.w), a)))
        throw TheoremViolation("fixed root on the descent side");
      if (sigma_sign(v, k) == 1) {
        e.type = OrbitType::I;
        return;
      }
      // IIIa or IVa: partner = beta_vee(-1)-shifted tag
      IntVec kappa_p = mod2(IntVec(node.tau.kappa + ctx.simple_affine_coroot(k)));
      IntVec tag_p = f2_reduce(tag_span(node.psi), kappa_p);
      const bool same = tag_p == node.tag;
      e.type = same ? OrbitType::IVa : OrbitType::IIIa;
      int partner = kUnset;
      if (!same) {
        partner = g.find_node(node.w, tag_p);
        if (partner < 0)
          throw TheoremViolation("IIIa partner parameter missing (incomplete fiber)");
        e.partner = partner;
      }
      if (at_cap) {
        e.up = kBeyond;
        return;
      }
      TitsElt tau_o = tits_mul(ctx, tits_of(ctx, ctx.simple_reflection(k)), node.tau);
      // derivation gives tau(open) = beta_vee(x) * s_beta(kappa)(-1) n_{s_k w};
      // the beta_vee(x) factor lies in the identity component and is dropped.
      int o = add_node(tau_o, node.delta + 1);
      Node& nv = g.nodes[static_cast<size_t>(v)];  // re-fetch (vector may move)
      Edge& ev = nv.edges[static_cast<size_t>(k)];
      ev.up = o;
      if (same) {
        // IVa: two preimage characters on the open orbit
        const Node& no = g.nodes[static_cast<size_t>(o)];
        IntMat M_low(nv.psi.rows(), nv.cg.L.cols() + 1);
        if (nv.cg.L.cols() > 0) M_low.leftCols(nv.cg.L.cols()) = nv.cg.L;
        M_low.col(nv.cg.L.cols()) = a.root;
        IntMat M = column_hnf_basis(M_low);
        ev.preimages.assign(static_cast<size_t>(nv.cg.order()), {-1, -1});
        for (int c = 0; c < nv.cg.order(); ++c) {
          std::vector<int> pre;
          for (int c2 = 0; c2 < no.cg.order(); ++c2)
            if (lattice_contains(
                    M, IntVec(no.cg.chars[static_cast<size_t>(c2)] -
                              nv.cg.chars[static_cast<size_t>(c)])))
              pre.push_back(c2);
          if (pre.size() != 2)
            throw TheoremViolation("IVa: expected exactly two preimage characters, found " +
                                   std::to_string(pre.size()));
          ev.preimages[static_cast<size_t>(c)] = {pre[0], pre[1]};
        }
        fill_b_edge(o, k, OrbitType::IVb, v, kUnset);
      } else {
        ev.cross_up = cross_map(v, o, k);
        ev.cross_partner = cross_map(v, partner, k);
        fill_b_edge(o, k, OrbitType::IIIb, v, partner);
      }
      return;
    }

    if (psi_a == neg_a) {
      // descent side of a III/IV pair; the edge is registered by the lower
      // orbit's expansion (levels are processed in order).
      if (e.down == kUnset && !is_type_b(e.type))
        throw TheoremViolation("IIIb/IVb edge missing its lower registration");
      return;
    }

    // type II
    const bool ascent = ctx.is_positive(act_on_affine_root(inverse(node.w), a));
    if (!ascent) {
      if (e.type != OrbitType::IIb || e.down == kUnset)
        throw TheoremViolation("IIb edge missing its lower registration");
      return;
    }
    e.type = OrbitType::IIa;
    if (at_cap) {
      e.up = kBeyond;
      return;
    }
    TitsElt nk = tits_of(ctx, ctx.simple_reflection(k));
    TitsElt tau_o =
        tits_mul(ctx, nk, tits_mul(ctx, node.tau, tits_inverse(ctx, tits_theta(ctx, nk))));
    if (length(ctx, tau_o.w) != length(ctx, node.w) + 2)
      throw TheoremViolation("IIa ascent does not raise length by 2");
    int o = add_node(tau_o, node.delta + 1);
    Node& nv = g.nodes[static_cast<size_t>(v)];
    Edge& ev = nv.edges[static_cast<size_t>(k)];
    ev.up = o;
    ev.cross_up = cross_map(v, o, k);
    Edge& eo = g.nodes[static_cast<size_t>(o)].edges[static_cast<size_t>(k)];
    if (eo.down != kUnset) {
      if (eo.type != OrbitType::IIb || eo.down != v)
        throw TheoremViolation("inconsistent IIb registration");
    } else {
      eo.type = OrbitType::IIb;
      eo.down = v;
      eo.cross_down = cross_map(o, v, k);
    }
  }

  void validate() {
    for (int v = 0; v < g.num_nodes(); ++v) {
      const Node& node = g.nodes[static_cast<size_t>(v)];
      bool any_b = false;
      for (int k = 0; k < g.num_roots; ++k) {
        const Edge& e = node.edges[static_cast<size_t>(k)];
        const AffineRoot a = ctx.simple_affine(k);
        const bool desc = !ctx.is_positive(act_on_affine_root(inverse(node.w), a));
        if (desc != is_type_b(e.type))
          throw TheoremViolation("type-b/descent mismatch at node " + std::to_string(v));
        if (is_type_b(e.type)) {
          any_b = true;
          if (e.down < 0) throw TheoremViolation("descent edge without lower neighbor");
          if (g.delta(e.down) != node.delta - 1)
            throw TheoremViolation("descent neighbor with wrong delta");
          if (e.type == OrbitType::IIIb &&
              (e.partner < 0 || g.delta(e.partner) != node.delta - 1))
            throw TheoremViolation("IIIb without two lower neighbors");
        }
        if (opts.group_case && e.type != OrbitType::IIa && e.type != OrbitType::IIb)
          throw TheoremViolation("group case produced a non-II edge");
      }
      if (!opts.finite_only) {
        const bool len0 = length(ctx, node.w) == 0;
        if (len0 != !any_b)
          throw TheoremViolation("closed-orbit characterization failed at node " +
                                 std::to_string(v));
        if (len0 && node.delta != 0) throw TheoremViolation("closed orbit with delta != 0");
      }
      if (opts.group_case && node.cg.order() != 1)
        throw TheoremViolation("group case with nontrivial component group");
    }
  }

  OrbitGraph run() {
    g.group_case = opts.group_case;
    g.max_delta = opts.max_delta;
    g.num_finite_roots = static_cast<int>(ctx.datum().num_simple());
    g.num_roots = opts.finite_only ? g.num_finite_roots : ctx.num_simple_affine();
    if (ctx.inv().simple_perm.empty())
      throw UnsupportedInput(
          "seed construction unsupported: theta is not Borel-preserving for this pair");
    auto omegas = omega_elements(ctx);
    if (omegas.size() != 1)
      throw UnsupportedInput(
          "seed construction unsupported: nontrivial length-zero elements (Omega lifts untracked)");
    // seeds: fiber-tag classes over the identity
    const Eigen::Index n = ctx.datum().rank;
    IntMat theta = ctx.inv().theta_cochar;
    IntMat span = tag_span(theta);
    std::vector<IntVec> classes;
    IntVec kappa = IntVec::Zero(n);
    while (true) {
      if (mod2(IntVec((theta + IntMat::Identity(n, n)) * kappa)).isZero()) {
        IntVec cls = f2_reduce(span, kappa);
        if (std::find(classes.begin(), classes.end(), cls) == classes.end())
          classes.push_back(cls);
      }
      Eigen::Index pos = 0;
      while (pos < n && kappa(pos) == 1) kappa(pos++) = 0;
      if (pos == n) break;
      kappa(pos) = 1;
    }
    std::sort(classes.begin(), classes.end(),
              [](const IntVec& x, const IntVec& y) { return lex_cmp(x, y) < 0; });
    for (const IntVec& cls : classes) add_node({cls, ctx.identity()}, 0);

    // level-synchronous upward sweep
    for (Int d = 0; d <= opts.max_delta; ++d) {
      std::vector<int> level;
      for (int v = 0; v < g.num_nodes(); ++v)
        if (g.delta(v) == d) level.push_back(v);
      for (int v : level)
        for (int k = 0; k < g.num_roots; ++k) expand(v, k);
    }
    validate();

    // deterministic renumbering: (delta, element, tag)
    std::vector<int> order(static_cast<size_t>(g.num_nodes()));
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      const Node& a = g.nodes[static_cast<size_t>(x)];
      const Node& b = g.nodes[static_cast<size_t>(y)];
      if (a.delta != b.delta) return a.delta < b.delta;
      int c = cmp(a.w, b.w);
      if (c != 0) return c < 0;
      return lex_cmp(a.tag, b.tag) < 0;
    });
    std::vector<int> new_id(order.size());
    for (size_t i = 0; i < order.size(); ++i) new_id[static_cast<size_t>(order[i])] = static_cast<int>(i);
    OrbitGraph sorted;
    sorted.num_roots = g.num_roots;
    sorted.num_finite_roots = g.num_finite_roots;
    sorted.max_delta = g.max_delta;
    sorted.group_case = g.group_case;
    sorted.nodes.resize(g.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) {
      Node node = g.nodes[static_cast<size_t>(order[i])];
      for (Edge& e : node.edges) {
        if (e.up >= 0) e.up = new_id[static_cast<size_t>(e.up)];
        if (e.partner >= 0) e.partner = new_id[static_cast<size_t>(e.partner)];
        if (e.down >= 0) e.down = new_id[static_cast<size_t>(e.down)];
      }
      sorted.nodes[i] = std::move(node);
    }
    sorted.finalize_closure();
    return sorted;
  }
};

}  // namespace

OrbitGraph build_orbit_graph(const AffineCtx& ctx, const BuildOptions& opts) {
  Builder b(ctx, opts);
  return b.run();
}

ExtAffWeylElt group_case_factor(const OrbitGraph& g, const AffineCtx& ctx, int v) {
  if (!g.group_case) throw AklvError("group_case_factor on a non-group-case graph");
  const Node& node = g.nodes[static_cast<size_t>(v)];
  const Eigen::Index n = ctx.datum().rank;
  if (n % 2 != 0) throw AklvError("group case lattice must have even rank");
  const Eigen::Index m = n / 2;
  if (!node.w.fin.topRightCorner(m, m).isZero() || !node.w.fin.bottomLeftCorner(m, m).isZero())
    throw AklvError("group case element is not block-diagonal");
  ExtAffWeylElt out;
  out.tr = node.w.tr.head(m);
  out.fin = node.w.fin.topLeftCorner(m, m);
  out.fin_inv = node.w.fin_inv.topLeftCorner(m, m);
  return out;
}

}  // namespace aklv
