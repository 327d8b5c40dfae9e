#pragma once

// Solves the defining recurrence for the affine Kazhdan-Lusztig-Vogan
// polynomials P via the degree-window extraction, assembles the KL basis,
// derives the c-table, and enforces parity/positivity/self-duality.

#include "aklv/duality.hpp"

namespace aklv {

struct PTable {
  // (u-key, v-key) -> P_{eta,u;xi,v}; diagonal entries are 1 and stored.
  std::map<std::pair<BasisKey, BasisKey>, HalfLaurent> entries;

  HalfLaurent get(const BasisKey& u, const BasisKey& v) const {
    auto it = entries.find({u, v});
    return it == entries.end() ? HalfLaurent() : it->second;
  }
};

struct CTable {
  // (u-key, v-key, i) -> c_{eta,u;xi,v,i} (a multiple of q^{(i+delta(v))/2})
  std::map<std::tuple<BasisKey, BasisKey, Int>, HalfLaurent> entries;
};

PTable solve_P(const OrbitGraph& g, const DualityTable& b, int threads = 1);

ModuleElt kl_basis_elt(const OrbitGraph& g, const PTable& p, int v, int xi);

struct KlvCheck {
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// D(C_{xi,v}) - q^{-delta(v)} C_{-xi,v} must vanish.
KlvCheck verify_selfdual(const OrbitGraph& g, const DualityTable& d, const PTable& p);

// positivity / parity (integral powers) / diagonal-1 / degree window
KlvCheck verify_p_invariants(const OrbitGraph& g, const PTable& p);

CTable c_from_P(const OrbitGraph& g, const PTable& p);

// parity slots: c_{...,i} = 0 when i + delta(v) is odd
KlvCheck verify_c_parity(const OrbitGraph& g, const CTable& c);

// the b<->c coefficient relation (alternating sums against the b-table)
KlvCheck verify_bc_relation(const OrbitGraph& g, const DualityTable& d, const PTable& p,
                            const CTable& c);

}  // namespace aklv
