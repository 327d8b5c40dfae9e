#include <doctest.h>

#include <random>

#include "aklv/half_laurent.hpp"

using namespace aklv;

namespace {
HalfLaurent random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> exp_d(-6, 6), coeff_d(-5, 5), terms_d(0, 5);
  HalfLaurent f;
  int terms = terms_d(rng);
  for (int i = 0; i < terms; ++i)
    f += HalfLaurent::monomial(coeff_d(rng), exp_d(rng));
  return f;
}
}  // namespace

TEST_CASE("ring arithmetic basics") {
  HalfLaurent q = HalfLaurent::q();
  CHECK((q + (-q)).is_zero());
  CHECK(HalfLaurent::q_pow_half(1) * HalfLaurent::q_pow_half(1) == q);
  HalfLaurent one = HalfLaurent::one();
  CHECK((q - one) * (q + one) == q * q - one);
}

TEST_CASE("bar involution") {
  CHECK(HalfLaurent::q_pow_half(1).bar() == HalfLaurent::q_pow_half(-1));
  HalfLaurent f = HalfLaurent(2) * HalfLaurent::q() - HalfLaurent(3);
  CHECK(f.bar() == HalfLaurent(2) * HalfLaurent::q_pow_half(-2) - HalfLaurent(3));
  HalfLaurent g = HalfLaurent::one() + HalfLaurent::q_pow_half(3);
  CHECK(g.bar().bar() == g);
}

TEST_CASE("bar is a ring homomorphism on random values") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    HalfLaurent a = random_poly(rng), b = random_poly(rng);
    CHECK((a * b).bar() == a.bar() * b.bar());
    CHECK((a + b).bar() == a.bar() + b.bar());
    CHECK(a.bar().bar() == a);
  }
}

TEST_CASE("arith associativity/commutativity/distributivity on random triples") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    HalfLaurent a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("kl_extract examples") {
  // 5 - 5q^2 with d = 2 -> 5
  HalfLaurent g = HalfLaurent(5) - HalfLaurent(5) * HalfLaurent::q() * HalfLaurent::q();
  CHECK(kl_extract(g, 2) == HalfLaurent(5));
  // 1 + 2q - 2q^2 - q^3 with d = 3 -> 1 + 2q
  HalfLaurent q = HalfLaurent::q();
  HalfLaurent g2 = HalfLaurent::one() + HalfLaurent(2) * q - HalfLaurent(2) * q * q - q * q * q;
  CHECK(kl_extract(g2, 3) == HalfLaurent::one() + HalfLaurent(2) * q);
  for (int d = 1; d <= 5; ++d) CHECK(kl_extract(HalfLaurent(), d).is_zero());
}

TEST_CASE("kl_extract recovers random P") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coeff_d(-4, 4);
  for (int d = 1; d <= 9; ++d)
    for (int trial = 0; trial < 40; ++trial) {
      HalfLaurent p;
      for (int j = 0; 2 * j <= d - 1; ++j)
        p += HalfLaurent::monomial(coeff_d(rng), 2 * j);
      HalfLaurent g = p - p.bar().shifted(2 * d);
      CHECK(kl_extract(g, d) == p);
    }
}

TEST_CASE("kl_extract window violations") {
  CHECK_THROWS_AS(kl_extract(HalfLaurent::q_pow_half(1), 2), TheoremViolation);
  CHECK_THROWS_AS(kl_extract(HalfLaurent::q(), 2), TheoremViolation);  // q != P - q^2 bar P
  CHECK_THROWS_AS(kl_extract(HalfLaurent::monomial(1, 10), 2), TheoremViolation);
}

TEST_CASE("exact division and gcd") {
  HalfLaurent q = HalfLaurent::q();
  HalfLaurent prod = (q - HalfLaurent::one()) * (q + HalfLaurent(2));
  auto quot = prod.divide_exact(q - HalfLaurent::one());
  REQUIRE(quot.has_value());
  CHECK(*quot == q + HalfLaurent(2));
  CHECK(!(q + HalfLaurent::one()).divide_exact(HalfLaurent(2)).has_value());
  HalfLaurent g = laurent_gcd(prod, (q - HalfLaurent::one()) * q);
  // gcd is q-1 up to units
  CHECK(g == q - HalfLaurent::one());
}

TEST_CASE("fractions normalize and detect Laurent values") {
  HalfLaurent q = HalfLaurent::q();
  LaurentFrac f(q * q - HalfLaurent::one(), q - HalfLaurent::one());
  auto val = f.as_laurent();
  REQUIRE(val.has_value());
  CHECK(*val == q + HalfLaurent::one());
  LaurentFrac half(HalfLaurent::one(), q + HalfLaurent::one());
  CHECK(!half.as_laurent().has_value());
}

TEST_CASE("serialization is ascending half-exponent pairs") {
  HalfLaurent f = HalfLaurent::q_pow_half(-1) + HalfLaurent(3) * HalfLaurent::q();
  auto s = f.serialized();
  REQUIRE(s.size() == 2);
  CHECK(s[0].first == -1);
  CHECK(s[0].second == "1");
  CHECK(s[1].first == 2);
  CHECK(s[1].second == "3");
}
