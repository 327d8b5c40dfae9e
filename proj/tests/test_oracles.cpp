#include <doctest.h>

#include "aklv/io.hpp"
#include "aklv/oracles.hpp"

using namespace aklv;

namespace {
BasedRootDatum sl2_datum() {
  PairSpec s = load_pair_spec(std::string(AKLV_PRESET_DIR) + "/sl2_t.json");
  validate(s.datum, s.inv);
  return s.datum;
}
BasedRootDatum sl3_datum() {
  PairSpec s = load_pair_spec(std::string(AKLV_PRESET_DIR) + "/a2_group.json");
  validate(s.datum, s.inv);
  return group_case_factor_datum(s.datum);
}
}  // namespace

TEST_CASE("coxeter oracle on affine A1") {
  CoxeterOracle orc(affine_cartan_matrix(sl2_datum()), 10);
  CHECK(orc.num_elements() == 21);  // 2L+1 elements up to length 10
  // P_{w,w} = 1 and all KL polynomials are 1 for the infinite dihedral group
  for (int w = 0; w < orc.num_elements(); ++w)
    for (int u = 0; u < orc.num_elements(); ++u) {
      if (!orc.bruhat_leq(u, w)) {
        CHECK(orc.kl_poly(u, w).is_zero());
        continue;
      }
      CHECK(orc.kl_poly(u, w).is_one());
      // R_{u,w}(1) = 0 for u < w
      if (u != w) {
        HalfLaurent r = orc.r_poly(u, w);
        BigInt at_one = 0;
        for (const auto& [e, c] : r.coeffs()) at_one += c;
        CHECK(at_one == 0);
      }
    }
}

TEST_CASE("coxeter oracle degree bounds on affine A2") {
  CoxeterOracle orc(affine_cartan_matrix(sl3_datum()), 6);
  for (int w = 0; w < orc.num_elements(); ++w)
    for (int u = 0; u < orc.num_elements(); ++u) {
      if (!orc.bruhat_leq(u, w)) continue;
      HalfLaurent p = orc.kl_poly(u, w);
      REQUIRE(!p.is_zero());
      CHECK(p.is_poly_in_q());
      CHECK(p.nonneg_coeffs());
      if (u != w) CHECK(2 * p.deg_q() <= orc.len(w) - orc.len(u) - 1);
      CHECK(p.coeff(0) == 1);  // constant term of a KL polynomial
    }
}

TEST_CASE("bruhat order sanity") {
  CoxeterOracle orc(affine_cartan_matrix(sl2_datum()), 6);
  for (int w = 0; w < orc.num_elements(); ++w) CHECK(orc.bruhat_leq(0, w));
  // dihedral Bruhat order is total on each pair of lengths
  for (int u = 0; u < orc.num_elements(); ++u)
    for (int w = 0; w < orc.num_elements(); ++w)
      if (orc.len(u) < orc.len(w)) CHECK(orc.bruhat_leq(u, w));
}

TEST_CASE("q-weight multiplicities") {
  BasedRootDatum sl2 = sl2_datum();
  // mu = lambda
  CHECK(q_weight_mult(sl2, int_vec({3}), int_vec({3})).is_one());
  // rank one: K = q^{n-m} in coroot units
  for (Int n = 0; n <= 4; ++n)
    for (Int m = 0; m <= n; ++m)
      CHECK(q_weight_mult(sl2, int_vec({n}), int_vec({m})) ==
            HalfLaurent::q_pow_half(static_cast<int>(2 * (n - m))));
  // A2 adjoint: zero weight multiplicity q + q^2
  BasedRootDatum sl3 = sl3_datum();
  HalfLaurent expect = HalfLaurent::q() + HalfLaurent::q() * HalfLaurent::q();
  CHECK(q_weight_mult(sl3, int_vec({1, 1}), int_vec({0, 0})) == expect);
  // q = 1 specialization equals the classical weight multiplicity (adjoint: 2)
  HalfLaurent k = q_weight_mult(sl3, int_vec({1, 1}), int_vec({0, 0}));
  BigInt at_one = 0;
  for (const auto& [e, c] : k.coeffs()) at_one += c;
  CHECK(at_one == 2);
}

TEST_CASE("GL2/O2 sequences") {
  for (int m = 0; m <= 20; ++m) {
    GL2O2Seq seq = gl2o2_sequences(m);
    CHECK(seq.ok());
    CHECK(seq.lambda[0] == BigRat(1));
    if (m >= 1) {
      CHECK(seq.lambda[1] == BigRat(1, 2));
      CHECK(seq.lambda[2] == BigRat(-1, 8));
    }
  }
  // the proxy -4 sum mu_i mu_{m-i} = 4 (Delta_0 = 4 s^2 nonvanishing)
  GL2O2Seq seq = gl2o2_sequences(5);
  BigRat conv = 0;
  for (int k = 0; k <= 5; ++k) conv += seq.mu_over_mu0[static_cast<size_t>(k)] *
                                       seq.mu_over_mu0[static_cast<size_t>(5 - k)];
  conv *= ((5 + 1) % 2 == 0) ? 1 : -1;  // mu0^2
  CHECK(BigRat(-4) * conv == BigRat(4));
}
