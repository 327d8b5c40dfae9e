#pragma once

// The anti-linear duality D_delta on M and its transition table b.
// Computed by an ascending-delta sweep: closed-orbit base case, the IIb
// descent recursion, and an exact linear block solve over the type-b roots
// for orbits with no IIb descent.

#include "aklv/hecke_module.hpp"

namespace aklv {

struct DualityTable {
  // D(m_{xi,v}) expanded in the standard basis
  std::map<BasisKey, ModuleElt> d;

  const ModuleElt& of(const BasisKey& k) const {
    auto it = d.find(k);
    if (it == d.end()) throw AklvError("duality: dependency missing");
    return it->second;
  }
  // b_{eta,u;xi,v}; the u = v diagonal uses the q^{-delta(v)} convention.
  HalfLaurent b(const OrbitGraph& g, const BasisKey& u_eta, const BasisKey& v_xi) const;
};

// Base case: closed orbit, D(m_{xi,v}) = m_{-xi,v}.
ModuleElt d_base_closed(const OrbitGraph& g, int v, int xi);

// IIb step: D(m_{xi,v}) = (q^{-1} T_alpha + q^{-1} - 1) D(m_{s xi, v'}).
ModuleElt d_step_IIb(const OrbitGraph& g, const DualityTable& partial, int v, int xi, int k);

// Block solve at an orbit with no IIb root: all characters simultaneously.
// Throws TheoremViolation("underdetermined block...") / ("no integral
// solution...") when the verified unique solution does not exist.
std::vector<ModuleElt> d_block_solve(const OrbitGraph& g, const DualityTable& partial, int v);

// Full sweep; post-validates the b-table invariants.
DualityTable compute_duality(const OrbitGraph& g, int threads = 1);

// Anti-linear extension of D to arbitrary module elements.
ModuleElt apply_duality(const DualityTable& table, const ModuleElt& m);

struct DualityCheck {
  int checked = 0;
  int skipped = 0;  // pairs whose verification left the truncation
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// D^2 = id on every basis element.
DualityCheck verify_d_squared(const OrbitGraph& g, const DualityTable& table);
// D(T_s m) = (q^{-1} T_s + q^{-1} - 1) D(m) wherever both sides stay in bounds.
DualityCheck verify_hecke_compat(const OrbitGraph& g, const DualityTable& table);
// degree/integrality/support/diagonal invariants of the b-table
DualityCheck verify_b_invariants(const OrbitGraph& g, const DualityTable& table);

}  // namespace aklv
