#pragma once

// Based root data with a distinguished involution compatible with a
// theta-stable Borel pair. Simple roots live in the character lattice,
// simple coroots in the cocharacter lattice; the pairing is the standard
// dot product between the two.

#include <string>

#include "aklv/basics.hpp"
#include "aklv/lattice.hpp"

namespace aklv {

struct BasedRootDatum {
  Eigen::Index rank = 0;           // lattice rank
  IntMat simple_roots;             // rank x s, columns
  IntMat simple_coroots;           // rank x s, columns
  std::string cartan_type_label;

  // filled by validate()/finalize():
  IntMat positive_roots;           // rank x N, deterministic order
  IntMat positive_coroots;         // rank x N, matching order
  IntVec two_rho;                  // sum of positive roots
  std::vector<std::vector<int>> components;  // simple-root indices per Dynkin component
  IntMat highest_roots;            // rank x #components
  IntMat highest_coroots;          // coroots of the highest roots

  Eigen::Index num_simple() const { return simple_roots.cols(); }
  IntMat cartan() const;  // C(i,j) = <alpha_j, coroot_i>

  Int pair(const IntVec& character, const IntVec& cocharacter) const {
    return character.dot(cocharacter);
  }
  // Simple reflection action on the character lattice: x - <x, coroot_i> alpha_i.
  IntVec reflect_char(int i, const IntVec& x) const;
  // Simple reflection action on the cocharacter lattice: y - <alpha_i, y> coroot_i.
  IntVec reflect_cochar(int i, const IntVec& y) const;
  // Matrix of s_i on the cocharacter lattice.
  IntMat simple_reflection_cochar(int i) const;
};

struct InvolutionDatum {
  IntMat theta_cochar;             // involution on the cocharacter lattice
  std::vector<Int> pinning_signs;  // per simple root, the scalar on the pinned vector
  bool group_case = false;

  // filled by validate(): permutation induced on simple roots by theta
  // (theta^T alpha_i = alpha_{perm[i]}), empty when theta is not Borel-preserving.
  std::vector<int> simple_perm;

  IntMat theta_char() const { return theta_cochar.transpose(); }
};

struct ValidationReport {
  std::vector<std::string> violations;  // hard schema problems (theta^2 != 1, bad Cartan...)
  std::vector<std::string> findings;    // structural notes (theta not Borel-preserving)
  bool schema_ok() const { return violations.empty(); }
  bool borel_preserving = false;
  std::string str() const;
};

// Validates invariants, finalizes cached data (positive roots, rho, components,
// highest roots, simple_perm). Throws SchemaError on malformed input
// (non-Cartan pairing, non-involutive theta, infinite root closure).
ValidationReport validate(BasedRootDatum& datum, InvolutionDatum& inv);

// <rho, lambda> where rho is the half-sum of positive roots. Errors when the
// pairing is half-integral for this lambda.
Int rho_pair(const BasedRootDatum& datum, const IntVec& lambda);

// mu <= lambda iff lambda - mu is a nonnegative integer sum of positive
// coroots. `strict_lattice` demands theta*arg = -arg ("not in Lambda_S" error).
bool dominance_leq(const BasedRootDatum& datum, const InvolutionDatum& inv, const IntVec& mu,
                   const IntVec& lambda, bool strict_lattice = true);

// Core test without the Lambda_S membership check.
bool coroot_sum_leq(const BasedRootDatum& datum, const IntVec& mu, const IntVec& lambda);

struct LambdaSBasis {
  IntMat lambda_s;          // basis of {lambda : theta lambda = -lambda}
  IntMat lambda_s_cap_q;    // basis of Lambda_S intersect coroot lattice
  std::vector<Int> quotient_invariants;  // abelian invariants of Lambda_S/(Lambda_S cap Q), 0 = Z
};
LambdaSBasis lambda_s_basis(const BasedRootDatum& datum, const InvolutionDatum& inv);

bool is_dominant(const BasedRootDatum& datum, const IntVec& lambda);
IntVec dominantize(const BasedRootDatum& datum, IntVec lambda);

struct PairSpec {
  BasedRootDatum datum;
  InvolutionDatum inv;
  std::string name;
};
// Pair-spec JSON loader; throws SchemaError on malformed files.
PairSpec load_pair_spec(const std::string& path);
PairSpec parse_pair_spec(const std::string& json_text);

}  // namespace aklv
