#include <doctest.h>

#include "aklv/orbit_graph.hpp"

using namespace aklv;

namespace {
struct Fixture {
  PairSpec spec;
  std::unique_ptr<AffineCtx> ctx;
  OrbitGraph graph;
  Fixture(const char* name, Int max_delta, bool finite = false) {
    spec = load_pair_spec(std::string(AKLV_PRESET_DIR) + "/" + name + ".json");
    validate(spec.datum, spec.inv);
    ctx = std::make_unique<AffineCtx>(spec.datum, spec.inv);
    BuildOptions opts;
    opts.max_delta = max_delta;
    opts.group_case = spec.inv.group_case;
    opts.finite_only = finite;
    graph = build_orbit_graph(*ctx, opts);
  }
};

int count_delta(const OrbitGraph& g, Int d) {
  int n = 0;
  for (int v = 0; v < g.num_nodes(); ++v)
    if (g.delta(v) == d) ++n;
  return n;
}
}  // namespace

TEST_CASE("component groups via Smith normal form") {
  // psi = -1 on Z: order 2
  CHECK(component_group(IntMat::Constant(1, 1, -1)).order() == 2);
  // psi = +1: trivial
  CHECK(component_group(IntMat::Identity(1, 1)).order() == 1);
  // psi = swap on Z^2: fixed torus connected
  IntMat swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(component_group(swap).order() == 1);
  IntMat not_inv(1, 1);
  not_inv << 2;
  CHECK_THROWS_AS(component_group(not_inv), AklvError);
}

TEST_CASE("SL2/T affine graph matches the hand computation") {
  Fixture f("sl2_t", 3);
  const OrbitGraph& g = f.graph;
  // two closed seeds, then two parameters per level
  CHECK(count_delta(g, 0) == 2);
  CHECK(count_delta(g, 1) == 2);
  CHECK(count_delta(g, 2) == 2);
  CHECK(count_delta(g, 3) == 2);
  CHECK(g.num_nodes() == 8);

  for (int v = 0; v < g.num_nodes(); ++v) {
    const Node& n = g.nodes[static_cast<size_t>(v)];
    if (n.delta == 0) {
      CHECK(g.is_closed(v));
      CHECK(n.cg.order() == 1);  // closed orbits carry only the trivial system
      CHECK(n.w == f.ctx->identity());
      // both roots are type IIIa with the other seed as partner
      for (int k = 0; k < 2; ++k) {
        CHECK(g.edge(v, k).type == OrbitType::IIIa);
        CHECK(g.edge(v, k).partner == 1 - v);
      }
    } else {
      CHECK(!g.is_closed(v));
      CHECK(n.cg.order() == 2);  // reflection parameters carry two characters
    }
  }

  // delta-1 nodes: one IIIb root (down to the two seeds), one IIa root
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (g.delta(v) != 1) continue;
    int iiib = -1, iia = -1;
    for (int k = 0; k < 2; ++k) {
      if (g.edge(v, k).type == OrbitType::IIIb) iiib = k;
      if (g.edge(v, k).type == OrbitType::IIa) iia = k;
    }
    REQUIRE(iiib >= 0);
    REQUIRE(iia >= 0);
    const Edge& e = g.edge(v, iiib);
    CHECK(((e.down == 0 && e.partner == 1) || (e.down == 1 && e.partner == 0)));
    // character transport: nontrivial character is a (T+1)-eigenvector
    CHECK(e.a_nonzero[0] == 0);  // trivial character
    CHECK(e.a_nonzero[1] == 1);  // Kummer character
    CHECK(e.bar_down[0] == 0);
    CHECK(e.bar_down[1] == -1);
    // closure: both seeds below
    CHECK(g.closure_leq(0, v));
    CHECK(g.closure_leq(1, v));
  }

  // IIa ascents land at delta+1 and register IIb back-edges
  for (int v = 0; v < g.num_nodes(); ++v)
    for (int k = 0; k < 2; ++k) {
      const Edge& e = g.edge(v, k);
      if (e.type == OrbitType::IIa && e.up >= 0) {
        CHECK(g.delta(e.up) == g.delta(v) + 1);
        CHECK(g.edge(e.up, k).type == OrbitType::IIb);
        CHECK(g.edge(e.up, k).down == v);
      }
      if (is_type_b(e.type)) CHECK(g.delta(e.down) == g.delta(v) - 1);
    }

  // closed orbits have length-zero twisted involutions; delta = 0
  for (int v = 0; v < g.num_nodes(); ++v)
    CHECK(g.is_closed(v) == (length(*f.ctx, g.nodes[static_cast<size_t>(v)].w) == 0));
}

TEST_CASE("SL2/T finite subgraph is the classical three-orbit picture") {
  Fixture f("sl2_t", 4, /*finite=*/true);
  const OrbitGraph& g = f.graph;
  CHECK(g.num_nodes() == 3);
  CHECK(count_delta(g, 0) == 2);
  CHECK(count_delta(g, 1) == 1);
  int open = -1;
  for (int v = 0; v < 3; ++v)
    if (g.delta(v) == 1) open = v;
  CHECK(g.edge(open, 0).type == OrbitType::IIIb);
  CHECK(g.num_chars(open) == 2);
}

TEST_CASE("group case A1 matches the Weyl ball") {
  Fixture f("a1_group", 4);
  const OrbitGraph& g = f.graph;
  // node count at delta d = elements of length d: 1,2,2,2,2
  CHECK(count_delta(g, 0) == 1);
  for (Int d = 1; d <= 4; ++d) CHECK(count_delta(g, d) == 2);
  for (int v = 0; v < g.num_nodes(); ++v) {
    CHECK(g.num_chars(v) == 1);
    ExtAffWeylElt u = group_case_factor(g, *f.ctx, v);
    // delta equals the factor length
    BasedRootDatum factor;  // quick check via the pair length instead
    CHECK(length(*f.ctx, g.nodes[static_cast<size_t>(v)].w) == 2 * g.delta(v));
    (void)u;
    for (int k = 0; k < g.num_roots; ++k) {
      OrbitType t = g.edge(v, k).type;
      CHECK((t == OrbitType::IIa || t == OrbitType::IIb));
    }
  }
}

TEST_CASE("group case A2 node counts at small delta") {
  Fixture f("a2_group", 3);
  const OrbitGraph& g = f.graph;
  // affine A2 Weyl ball: 1, 3, 6, 9 elements at lengths 0..3
  CHECK(count_delta(g, 0) == 1);
  CHECK(count_delta(g, 1) == 3);
  CHECK(count_delta(g, 2) == 6);
  CHECK(count_delta(g, 3) == 9);
}

TEST_CASE("closure order is generated by descents") {
  Fixture f("sl2_t", 3);
  const OrbitGraph& g = f.graph;
  for (int v = 0; v < g.num_nodes(); ++v) {
    CHECK(g.closure_leq(v, v));
    for (int u : g.down_set(v)) CHECK(g.delta(u) <= g.delta(v));
  }
  // antisymmetry
  for (int u = 0; u < g.num_nodes(); ++u)
    for (int v = 0; v < g.num_nodes(); ++v)
      if (u != v && g.closure_leq(u, v)) CHECK(!g.closure_leq(v, u));
}

TEST_CASE("graph build refuses non-Borel-preserving pairs") {
  PairSpec s = load_pair_spec(std::string(AKLV_PRESET_DIR) + "/gl2_o2.json");
  validate(s.datum, s.inv);
  AffineCtx ctx(s.datum, s.inv);
  BuildOptions opts;
  opts.max_delta = 2;
  CHECK_THROWS_AS(build_orbit_graph(ctx, opts), UnsupportedInput);
}

TEST_CASE("exactly one type per (node, root) and b iff descent") {
  for (const char* name : {"sl2_t", "a1_group"}) {
    Fixture f(name, 3);
    const OrbitGraph& g = f.graph;
    for (int v = 0; v < g.num_nodes(); ++v)
      for (int k = 0; k < g.num_roots; ++k) {
        const Node& n = g.nodes[static_cast<size_t>(v)];
        bool desc =
            !f.ctx->is_positive(act_on_affine_root(inverse(n.w), f.ctx->simple_affine(k)));
        CHECK(is_type_b(g.edge(v, k).type) == desc);
      }
  }
}
