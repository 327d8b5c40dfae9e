#pragma once

// Exact integer-lattice arithmetic on Eigen integer matrices: Smith and
// column-Hermite normal forms, canonical reduction modulo a sublattice,
// saturation, and small F2 / rational solvers. Everything here is desk-scale
// (lattice ranks <= 8).

#include "aklv/basics.hpp"

namespace aklv {

struct Snf {
  IntMat U, D, V;  // U * A * V = D, U and V unimodular, D diagonal d1 | d2 | ...
};

Snf smith_normal_form(const IntMat& A);

// Column Hermite basis of the column span of A: n x r, pivots strictly
// descending row structure (zeros above each pivot, positive pivots).
IntMat column_hnf_basis(const IntMat& A);

// Canonical representative of x modulo the lattice spanned by the columns of
// the HNF basis H (as produced by column_hnf_basis).
IntVec hnf_reduce(const IntMat& H, IntVec x);

inline bool lattice_contains(const IntMat& H, const IntVec& x) {
  return hnf_reduce(H, x).isZero();
}

// Basis of the saturation {x : m*x in colspan(A), some m != 0}.
IntMat saturation_basis(const IntMat& A);

// Exact inverse of a unimodular integer matrix.
IntMat unimodular_inverse(const IntMat& U);

// Exact solve A c = b over the rationals. Returns nullopt when inconsistent;
// when A has full column rank the solution is unique.
std::optional<std::vector<BigRat>> solve_rational(const IntMat& A, const IntVec& b);

// --- F2 linear algebra (vectors over Z/2 as IntVec with 0/1 entries) ---

inline IntVec mod2(IntVec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = ((v(i) % 2) + 2) % 2;
  return v;
}
inline IntMat mod2(IntMat m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = ((m(i, j) % 2) + 2) % 2;
  return m;
}

// Reduced column echelon basis of an F2 column span.
IntMat f2_column_basis(const IntMat& A);

// Canonical representative of x modulo the F2 span of basis columns.
IntVec f2_reduce(const IntMat& basis, IntVec x);

inline bool f2_contains(const IntMat& basis, const IntVec& x) {
  return f2_reduce(basis, x).isZero();
}

// Kernel basis of the F2 map given by A (columns span ker as F2 space).
IntMat f2_kernel(const IntMat& A);

}  // namespace aklv
