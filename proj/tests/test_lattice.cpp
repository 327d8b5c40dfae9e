#include <doctest.h>

#include "aklv/lattice.hpp"

using namespace aklv;

namespace {
IntMat mat2(Int a, Int b, Int c, Int d) {
  IntMat m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

TEST_CASE("smith normal form invariants") {
  IntMat a(2, 2);
  a << 2, 4, 6, 10;
  Snf s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.D(0, 0) == 2);
  CHECK(s.D(1, 1) % s.D(0, 0) == 0);
  IntMat ui = unimodular_inverse(s.U);
  CHECK((s.U * ui).isIdentity());
}

TEST_CASE("smith normal form of 1 - swap has no torsion") {
  IntMat one_minus_swap = mat2(1, -1, -1, 1);
  Snf s = smith_normal_form(one_minus_swap);
  CHECK(s.D(0, 0) == 1);
  CHECK(s.D(1, 1) == 0);
}

TEST_CASE("hnf reduction gives canonical representatives") {
  IntMat L(2, 1);
  L << 2, 0;
  IntMat H = column_hnf_basis(L);
  IntVec x = int_vec({5, 3});
  IntVec r = hnf_reduce(H, x);
  CHECK(r(0) == 1);
  CHECK(r(1) == 3);
  CHECK(lattice_contains(H, int_vec({4, 0})));
  CHECK(!lattice_contains(H, int_vec({1, 0})));
  CHECK(hnf_reduce(H, int_vec({7, 3})) == r);
}

TEST_CASE("saturation divides out finite index") {
  IntMat a(2, 1);
  a << 2, 4;
  IntMat s = saturation_basis(a);
  REQUIRE(s.cols() == 1);
  CHECK(s(0, 0) == 1);
  CHECK(s(1, 0) == 2);
}

TEST_CASE("rational solve") {
  IntMat a = mat2(2, 1, 1, 1);
  auto x = solve_rational(a, int_vec({3, 2}));
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 1);
  IntMat sing(2, 1);
  sing << 1, 0;
  CHECK(!solve_rational(sing, int_vec({0, 1})).has_value());
}

TEST_CASE("F2 helpers") {
  IntMat a = mat2(1, 1, 1, 1);
  IntMat basis = f2_column_basis(a);
  CHECK(basis.cols() == 1);
  CHECK(f2_contains(basis, int_vec({1, 1})));
  CHECK(!f2_contains(basis, int_vec({1, 0})));
  CHECK(f2_reduce(basis, int_vec({1, 1})).isZero());
  IntMat k = f2_kernel(a);
  CHECK(k.cols() == 1);
  CHECK(f2_reduce(f2_column_basis(k), int_vec({1, 1})).isZero());
}
