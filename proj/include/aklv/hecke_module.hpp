#pragma once

// The affine Lusztig-Vogan module M: free Z[q^{1/2},q^{-1/2}]-module on basis
// m_{xi,v} indexed by (orbit parameter, character), with the nine-case simple
// reflection action and the length-zero (Omega) action.

#include "aklv/half_laurent.hpp"
#include "aklv/orbit_graph.hpp"

namespace aklv {

// (node id, character index)
using BasisKey = std::pair<int, int>;

class ModuleElt {
 public:
  using Terms = std::map<BasisKey, HalfLaurent>;

  ModuleElt() = default;
  static ModuleElt basis(int node, int chr) {
    ModuleElt m;
    m.terms_[{node, chr}] = HalfLaurent::one();
    return m;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  HalfLaurent coeff(const BasisKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? HalfLaurent() : it->second;
  }

  void add(const BasisKey& k, const HalfLaurent& c);
  ModuleElt operator+(const ModuleElt& o) const;
  ModuleElt operator-(const ModuleElt& o) const;
  ModuleElt scaled(const HalfLaurent& f) const;
  // bar-twisted scalars, for anti-linear operators
  ModuleElt bar_scaled(const HalfLaurent& f) const;
  bool operator==(const ModuleElt& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

// Action of [L_{s_alpha}] for the simple (affine) root index k.
// Throws TruncationOverflow when an a-type case needs a neighbor above the
// graph truncation.
ModuleElt t_simple(const OrbitGraph& g, int k, const ModuleElt& m);

// Action of a length-zero element: permutes basis elements (xi, v) -> (w xi, w v).
ModuleElt omega_act(const OrbitGraph& g, const AffineCtx& ctx, const ExtAffWeylElt& omega,
                    const ModuleElt& m);

struct WordStep {
  bool is_omega = false;
  int root = -1;
  ExtAffWeylElt omega;
};
ModuleElt word_act(const OrbitGraph& g, const AffineCtx& ctx, const std::vector<WordStep>& word,
                   ModuleElt m);

// Braid order m(s,t) of two simple affine roots from the Cartan pairing
// (2,3,4,6; 0 encodes infinity).
int braid_order(const AffineCtx& ctx, int k1, int k2);

}  // namespace aklv
