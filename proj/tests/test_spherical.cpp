#include <doctest.h>

#include "aklv/io.hpp"
#include "aklv/spherical.hpp"

using namespace aklv;

namespace {
struct Fixture {
  PairSpec spec;
  std::unique_ptr<AffineCtx> ctx;
  OrbitGraph graph;
  DualityTable duality;
  PTable p;
  std::vector<SphericalOrbit> sph;
  Fixture(const char* name, Int max_delta) {
    spec = load_pair_spec(std::string(AKLV_PRESET_DIR) + "/" + name + ".json");
    validate(spec.datum, spec.inv);
    ctx = std::make_unique<AffineCtx>(spec.datum, spec.inv);
    BuildOptions opts;
    opts.max_delta = max_delta;
    opts.group_case = spec.inv.group_case;
    graph = build_orbit_graph(*ctx, opts);
    duality = compute_duality(graph);
    p = solve_P(graph, duality);
    sph = enumerate_dominant(graph, *ctx, max_delta);
  }
};
}  // namespace

TEST_CASE("group case A1 strata carry dominant factor coweights") {
  Fixture f("a1_group", 6);
  // strata with delta <= 6: nu = 0 (delta 1), nu = 1 (delta 3), nu = 2 (delta 5)
  REQUIRE(f.sph.size() == 3);
  CHECK(f.sph[0].delta == 1);
  CHECK(f.sph[0].label == int_vec({0, 0}));
  CHECK(f.sph[1].delta == 3);
  CHECK(f.sph[1].label == int_vec({1, 1}));
  CHECK(f.sph[2].delta == 5);
  CHECK(f.sph[2].label == int_vec({2, 2}));
  // each stratum = a full W t^nu W double coset: 4, 8, 8 Iwahori orbits... check counts
  CHECK(f.sph[0].members.size() == 2);  // e and s (lengths 0,1)
  // delta(lambda) growth matches <2 rho, nu> + l(w0) = 2 nu + 1
  for (size_t i = 0; i < f.sph.size(); ++i)
    CHECK(f.sph[i].delta == 2 * f.sph[i].label(0) + 1);
}

TEST_CASE("SL2/T strata: one per translation class, codim one apart") {
  Fixture f("sl2_t", 5);
  REQUIRE(f.sph.size() >= 3);
  for (size_t i = 0; i < f.sph.size(); ++i) {
    CHECK(f.sph[i].delta == static_cast<Int>(i) + 1);
    CHECK(f.sph[i].label == int_vec({static_cast<Int>(i)}));
    CHECK(f.sph[i].members.size() == (i == 0 ? 3u : 2u));
  }
}

TEST_CASE("codimension formula on connected presets") {
  Fixture a1("a1_group", 6);
  CHECK(lx_connected(a1.spec.datum, a1.spec.inv));
  auto rep = codim_check(a1.spec.datum, a1.spec.inv, a1.sph);
  CHECK(rep.ok());
  CHECK(rep.checked > 3);

  Fixture t("sl2_t", 5);
  CHECK(lx_connected(t.spec.datum, t.spec.inv));
  auto rep2 = codim_check(t.spec.datum, t.spec.inv, t.sph);
  CHECK(rep2.ok());

  Fixture a2("a2_group", 4);
  CHECK(lx_connected(a2.spec.datum, a2.spec.inv));
  auto rep3 = codim_check(a2.spec.datum, a2.spec.inv, a2.sph);
  CHECK(rep3.ok());
}

TEST_CASE("relative KF table for the A1 group case") {
  Fixture f("a1_group", 8);
  RelKFTable kf = rel_kf(f.graph, f.p, f.sph);
  // diagonal 1; affine A1 KL-triviality makes every comparable entry 1
  for (size_t li = 0; li < f.sph.size(); ++li)
    for (size_t mi = 0; mi <= li; ++mi) {
      HalfLaurent val = kf.get(static_cast<int>(mi), 0, static_cast<int>(li), 0);
      CHECK(val.is_one());
    }
  // modified Kostka-Foulkes comparison: P(q) = q^d K(1/q) with d = (delta gap)/2
  BasedRootDatum factor = group_case_factor_datum(f.spec.datum);
  for (size_t li = 0; li < f.sph.size(); ++li)
    for (size_t mi = 0; mi <= li; ++mi) {
      IntVec lam = f.sph[li].label.head(1), mu = f.sph[mi].label.head(1);
      HalfLaurent k = q_weight_mult(factor, lam, mu);
      Int gap = f.sph[li].delta - f.sph[mi].delta;
      REQUIRE(gap % 2 == 0);
      HalfLaurent modified = k.bar().shifted(static_cast<int>(gap));
      CHECK(kf.get(static_cast<int>(mi), 0, static_cast<int>(li), 0) == modified);
      // rank one: K is the monomial q^{<rho, lam - mu>}
      CHECK(k == HalfLaurent::q_pow_half(static_cast<int>(2 * rho_pair(factor, IntVec(lam - mu)))));
    }
}

TEST_CASE("spherical B and the spherical recurrence") {
  Fixture f("a1_group", 6);
  RelKFTable kf = rel_kf(f.graph, f.p, f.sph);
  SphericalBTable b = b_spherical(f.graph, f.duality, f.sph);
  // diagonal convention
  for (size_t li = 0; li < f.sph.size(); ++li)
    CHECK(b.get(static_cast<int>(li), 0, static_cast<int>(li), 0) ==
          HalfLaurent::q_pow_half(static_cast<int>(-2 * f.sph[li].delta)));
  auto rep = verify_spherical_recurrence(f.graph, f.sph, b, kf);
  CHECK(rep.ok());
  CHECK(rep.checked > 0);

  Fixture t("sl2_t", 5);
  RelKFTable kft = rel_kf(t.graph, t.p, t.sph);
  SphericalBTable bt = b_spherical(t.graph, t.duality, t.sph);
  CHECK(verify_spherical_recurrence(t.graph, t.sph, bt, kft).ok());
}

TEST_CASE("spherical closure order") {
  PairSpec g = load_pair_spec(std::string(AKLV_PRESET_DIR) + "/gl2_o2.json");
  validate(g.datum, g.inv);
  // reflexive
  CHECK(spherical_closure_leq(g.datum, g.inv, int_vec({2, 0}), int_vec({2, 0})));
  // the paper's GL2/O2 closure: (m,0) <= (m+1,-1)
  for (Int m = 0; m <= 4; ++m)
    CHECK(spherical_closure_leq(g.datum, g.inv, int_vec({m, 0}), int_vec({m + 1, -1})));
  // distinct components are incomparable
  CHECK(!spherical_closure_leq(g.datum, g.inv, int_vec({0, 0}), int_vec({1, 0})));
  CHECK(!spherical_closure_leq(g.datum, g.inv, int_vec({1, -1}), int_vec({0, 0})));
  // group case labels
  PairSpec a1 = load_pair_spec(std::string(AKLV_PRESET_DIR) + "/a1_group.json");
  validate(a1.datum, a1.inv);
  CHECK(spherical_closure_leq(a1.datum, a1.inv, int_vec({0, 0}), int_vec({1, 1})));
  CHECK(!spherical_closure_leq(a1.datum, a1.inv, int_vec({1, 1}), int_vec({0, 0})));
}

TEST_CASE("restriction transport is consistent on the group case") {
  Fixture f("a1_group", 6);
  for (const SphericalOrbit& orbit : f.sph)
    for (int u : orbit.members) CHECK(restrict_char(f.graph, orbit, 0, u) == 0);
}

TEST_CASE("too-shallow bound errors") {
  Fixture f("a1_group", 4);
  CHECK_THROWS_AS(enumerate_dominant(f.graph, *f.ctx, 10), UnsupportedInput);
}
