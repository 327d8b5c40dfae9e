#pragma once

// The decorated Iwahori-orbit parameter graph: nodes are (twisted involution,
// fiber tag) pairs carrying a finite 2-group of equivariant characters; edges
// are typed rank-one moves (I, IIa/b, IIIa/b, IVa/b) decorated with the
// character transport the Hecke action needs; delta is the dimension function
// normalized to 0 on closed orbits; closure is the order generated by
// rank-one descents.

#include "aklv/affine_weyl.hpp"

namespace aklv {

// pi_0 of the psi-fixed subtorus: characters are integer vectors x with
// 2x in L = im(psi^T - 1), taken modulo L in canonical (HNF-reduced) form.
struct ComponentGroup {
  IntMat psi;               // involution on the cocharacter lattice
  IntMat L;                 // HNF basis of im(psi^T - 1)
  std::vector<IntVec> chars;  // canonical reps; chars[0] = 0

  int order() const { return static_cast<int>(chars.size()); }
  int char_index(const IntVec& canonical_rep) const;
  IntVec reduce(const IntVec& x) const { return hnf_reduce(L, x); }
};

ComponentGroup component_group(const IntMat& psi);

enum class OrbitType { I, IIa, IIb, IIIa, IIIb, IVa, IVb };
const char* orbit_type_name(OrbitType t);
inline bool is_type_b(OrbitType t) {
  return t == OrbitType::IIb || t == OrbitType::IIIb || t == OrbitType::IVb;
}

// Neighbor id conventions: >=0 a node, kUnset absent, kBeyond above truncation.
constexpr int kUnset = -1;
constexpr int kBeyond = -2;

struct Edge {
  OrbitType type = OrbitType::I;
  int up = kUnset;       // a-types: the open orbit of the rank-one set
  int partner = kUnset;  // IIIa: the other codim-1 orbit; IIIb: the second lower orbit
  int down = kUnset;     // b-types: the (first) lower orbit
  // character transport, indexed by the source node's character index:
  std::vector<int> cross_up;       // IIa: s_alpha xi on `up`; IIIa: same on `up`
  std::vector<int> cross_partner;  // IIIa: s_alpha xi on `partner`
  std::vector<int> cross_down;     // IIb: s_alpha xi on `down`
  std::vector<int> a_nonzero;      // IIIb/IVb: 1 iff a_{v'}(xi) != 0
  std::vector<int> bar_down;       // IIIb/IVb, a=0: induced character on `down` (else -1)
  std::vector<int> xi_prime;       // IVb: the character xi' at the node itself
  std::vector<std::pair<int, int>> preimages;  // IVa: xi_1, xi_2 on `up`
};

struct Node {
  ExtAffWeylElt w;       // twisted involution
  IntVec tag;            // canonical fiber-tag class in X_*/2X_*
  TitsElt tau;           // exact representative tau(x_v) = kappa(-1) n_w
  IntMat psi;            // W_bar * Theta on the cocharacter lattice
  ComponentGroup cg;
  Int delta = 0;
  std::vector<Edge> edges;  // one per simple (affine) root index
};

struct BuildOptions {
  Int max_delta = 4;
  bool group_case = false;
  bool finite_only = false;  // use only the level-0 simple roots (finite symmetric variety)
};

class OrbitGraph {
 public:
  std::vector<Node> nodes;
  int num_roots = 0;          // number of rank-one move directions
  int num_finite_roots = 0;   // prefix of `num_roots` at level 0
  Int max_delta = 0;
  bool group_case = false;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  Int delta(int v) const { return nodes[static_cast<size_t>(v)].delta; }
  const Edge& edge(int v, int k) const {
    return nodes[static_cast<size_t>(v)].edges[static_cast<size_t>(k)];
  }
  int num_chars(int v) const { return nodes[static_cast<size_t>(v)].cg.order(); }
  bool is_closed(int v) const;
  int char_neg(int v, int c) const;  // -xi (identity on an elementary 2-group, kept explicit)

  // closure order generated by rank-one descents (reflexive-transitive)
  bool closure_leq(int u, int v) const;
  const std::vector<int>& down_set(int v) const {
    return down_sets_[static_cast<size_t>(v)];
  }

  int find_node(const ExtAffWeylElt& w, const IntVec& tag) const;

  void finalize_closure();  // fills down_sets_; nodes must be sorted by delta

 private:
  std::vector<std::vector<int>> down_sets_;
  std::vector<std::vector<char>> leq_;
};

// Builds the graph by upward BFS from the closed-orbit seeds.
// Throws UnsupportedInput("seed construction unsupported...") for data outside
// the tracked scope and TheoremViolation("delta inconsistency...") if two
// paths disagree.
OrbitGraph build_orbit_graph(const AffineCtx& ctx, const BuildOptions& opts);

// Rank-one orbit-type classification of an existing edge (exposed for tests).
OrbitType classify(const OrbitGraph& g, int v, int k);

// Group-case helper: the W~ element of the first factor attached to a node
// (nodes correspond to pairs (u, u^{-1}) on the doubled lattice).
ExtAffWeylElt group_case_factor(const OrbitGraph& g, const AffineCtx& ctx, int v);

}  // namespace aklv
