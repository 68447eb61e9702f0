#include "continuum_lab/continua.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "continuum_lab/errors.hpp"

using namespace continuum_lab;

namespace {

std::set<std::vector<std::size_t>> as_member_lists(const std::vector<VertexSet>& sets) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& s : sets) out.insert(s.members());
  return out;
}

GraphContinuum random_connected_graph(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point2> v;
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i) v.push_back({static_cast<double>(i), static_cast<double>(rng() % 5)});
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(rng() % i, i);
  for (int extra = 0; extra < 3; ++extra) {
    const std::size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    if (std::find(e.begin(), e.end(), std::pair{a, b}) != e.end() ||
        std::find(e.begin(), e.end(), std::pair{b, a}) != e.end()) {
      continue;
    }
    e.emplace_back(a, b);
  }
  return GraphContinuum(ContinuumKind::custom, v, e);
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(BuildContinuum, IntervalCycleAndFan) {
  const auto path = build_continuum(ContinuumKind::interval, 4);
  ASSERT_EQ(path.size(), 5u);
  EXPECT_EQ(path.vertices().front(), (Point2{0.0, 0.0}));
  EXPECT_EQ(path.vertices().back(), (Point2{1.0, 0.0}));
  EXPECT_EQ(path.edges().size(), 4u);

  const auto cycle = build_continuum(ContinuumKind::cycle, 6);
  ASSERT_EQ(cycle.size(), 6u);
  EXPECT_EQ(cycle.edges().size(), 6u);
  for (const auto& p : cycle.vertices()) EXPECT_NEAR(std::hypot(p.x, p.y), 1.0, 1e-12);

  const auto fan = build_continuum(ContinuumKind::cantor_fan, 2);
  EXPECT_EQ(fan.size(), 13u);
  EXPECT_EQ(fan.neighbors(0).size(), 4u);
  for (std::size_t v = 1; v < fan.size(); ++v) EXPECT_LE(fan.neighbors(v).size(), 2u);

  const auto star = build_continuum(ContinuumKind::star, 2);
  EXPECT_EQ(star.size(), 7u);
}

TEST(BuildContinuum, RejectsBadSizes) {
  EXPECT_THROW(build_continuum(ContinuumKind::interval, 0), DomainError);
  EXPECT_THROW(build_continuum(ContinuumKind::cycle, 2), DomainError);
  EXPECT_THROW(GraphContinuum(ContinuumKind::custom, {{0, 0}, {1, 0}}, {}), DomainError);
  EXPECT_THROW(GraphContinuum(ContinuumKind::custom, {{0, 0}, {1, 0}}, {{0, 2}}), DomainError);
}

TEST(BuildContinuum, KindNames) {
  EXPECT_EQ(continuum_kind_from_string("path"), ContinuumKind::interval);
  EXPECT_EQ(continuum_kind_from_string("circle"), ContinuumKind::cycle);
  EXPECT_EQ(continuum_kind_from_string("triod"), ContinuumKind::star);
  EXPECT_THROW(continuum_kind_from_string("torus"), DomainError);
}

TEST(Enumerate, ClosedFormsForPathsAndCycles) {
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto path = build_continuum(ContinuumKind::interval, n);
    EXPECT_EQ(enumerate_subcontinua(path).size(), (n + 1) * (n + 2) / 2);
  }
  for (std::size_t n = 3; n <= 12; ++n) {
    EXPECT_EQ(enumerate_subcontinua(build_continuum(ContinuumKind::cycle, n)).size(), n * (n - 1) + 1);
  }
  EXPECT_EQ(enumerate_subcontinua(build_continuum(ContinuumKind::interval, 4)).size(), 15u);
  EXPECT_EQ(enumerate_subcontinua(build_continuum(ContinuumKind::cycle, 4)).size(), 13u);
}

TEST(Enumerate, SingletonGraph) {
  const GraphContinuum g(ContinuumKind::custom, {{0.0, 0.0}}, {});
  EXPECT_EQ(enumerate_subcontinua(g).size(), 1u);
}

TEST(Enumerate, MatchesBruteForce) {
  std::vector<GraphContinuum> graphs = {build_continuum(ContinuumKind::star, 3),
                                        build_continuum(ContinuumKind::cantor_fan, 1),
                                        build_continuum(ContinuumKind::cycle, 9)};
  std::mt19937_64 rng(3);
  for (int i = 0; i < 6; ++i) graphs.push_back(random_connected_graph(rng, 6 + i));
  for (const auto& g : graphs) {
    const auto poset = enumerate_subcontinua(g);
    EXPECT_EQ(as_member_lists(poset.elements()), as_member_lists(brute_force_subcontinua(g)));
  }
}

TEST(Enumerate, CoversAreOneVertexExtensions) {
  const auto poset = enumerate_subcontinua(build_continuum(ContinuumKind::star, 2));
  for (std::size_t i = 0; i < poset.size(); ++i) {
    std::vector<std::size_t> expected;
    for (std::size_t j = 0; j < poset.size(); ++j) {
      if (poset[i].is_subset_of(poset[j]) && poset[j].count() == poset[i].count() + 1) expected.push_back(j);
    }
    auto got = poset.covers(i);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected);
  }
  for (std::size_t i = 1; i < poset.size(); ++i) EXPECT_FALSE(canonical_less(poset[i], poset[i - 1]));
}

TEST(Enumerate, SizeCapAndElementLimit) {
  const auto g = build_continuum(ContinuumKind::cycle, 8);
  const auto capped = enumerate_subcontinua(g, 2);
  EXPECT_EQ(capped.size(), 16u);  // 8 points and 8 edges
  ScopedEnv env("CONTINUUM_LAB_MAX_ELEMENTS", "10");
  EXPECT_EQ(element_limit(), 10u);
  EXPECT_THROW(enumerate_subcontinua(g), ResourceError);
}

TEST(OrderArcs, SpecCases) {
  const auto path3 = build_continuum(ContinuumKind::interval, 2);
  const auto a = VertexSet(3, {1});
  const auto all = VertexSet::full(3);
  EXPECT_EQ(order_arcs_between(path3, a, all).size(), 2u);
  const auto same = order_arcs_between(path3, a, a);
  ASSERT_EQ(same.size(), 1u);
  EXPECT_EQ(same[0].size(), 1u);
  EXPECT_THROW(order_arcs_between(path3, VertexSet(3, {0}), VertexSet(3, {1, 2})), DomainError);
}

TEST(OrderArcs, MaximalArcsOnAPathCountBinomially) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto g = build_continuum(ContinuumKind::interval, n - 1);
    const auto arcs = maximal_order_arcs(g);
    EXPECT_EQ(arcs.size(), std::size_t{1} << (n - 1));
    for (const auto& arc : arcs) {
      ASSERT_EQ(arc.size(), n);
      for (std::size_t s = 1; s < arc.size(); ++s) {
        EXPECT_TRUE(arc[s - 1].is_subset_of(arc[s]));
        EXPECT_EQ((arc[s] - arc[s - 1]).count(), 1u);
        EXPECT_TRUE(g.is_connected(arc[s]));
      }
    }
  }
}

TEST(Homeomorphisms, TriangleExactValues) {
  EXPECT_EQ(triangle_map(0.3, 0.3), (Point2{0.3, 0.0}));
  EXPECT_EQ(triangle_map(0.0, 1.0), (Point2{0.5, 1.0}));
  EXPECT_THROW(triangle_map(0.6, 0.2), DomainError);
  const auto [a, b] = triangle_inverse({0.5, 1.0});
  EXPECT_EQ(a, 0.0);
  EXPECT_EQ(b, 1.0);
}

TEST(Homeomorphisms, DiskCentreAndRoundTrip) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const Point2 c = disk_map(1.0, 1.0 + two_pi);
  EXPECT_EQ(c.x, 0.0);
  EXPECT_EQ(c.y, 0.0);
  const auto [a0, b0] = disk_inverse({0.0, 0.0});
  EXPECT_EQ(a0, 0.0);
  EXPECT_EQ(b0, two_pi);
  const auto [a, b] = disk_inverse(disk_map(5.0, 6.5));
  EXPECT_NEAR(a, 5.0, 1e-12);
  EXPECT_NEAR(b, 6.5, 1e-12);
  const auto [a2, b2] = disk_inverse(disk_map(7.0, 7.5));
  EXPECT_NEAR(a2, 7.0 - two_pi, 1e-12);
  EXPECT_NEAR(b2 - a2, 0.5, 1e-12);
  EXPECT_THROW(disk_inverse({1.0, 1.0}), DomainError);
}

TEST(Terminal, WholeSpaceAndIntervals) {
  const auto g = build_continuum(ContinuumKind::interval, 4);
  const auto family = enumerate_subcontinua(g).elements();
  EXPECT_TRUE(is_terminal(VertexSet::full(5), family).terminal);
  const auto r = is_terminal(VertexSet(5, {1, 2}), family);
  EXPECT_FALSE(r.terminal);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(*r.witness == VertexSet(5, {2, 3}) || *r.witness == VertexSet(5, {0, 1}));
  EXPECT_TRUE(r.witness->intersects(VertexSet(5, {1, 2})));
  EXPECT_TRUE(is_terminal(VertexSet(5, {3}), family).terminal);
}

TEST(Terminal, AtomicDecompositions) {
  const auto g = build_continuum(ContinuumKind::interval, 4);
  const auto family = enumerate_subcontinua(g).elements();
  std::vector<VertexSet> points;
  for (std::size_t v = 0; v < 5; ++v) points.push_back(VertexSet(5, {v}));
  EXPECT_TRUE(is_atomic(points, family));
  const std::vector<VertexSet> halves = {VertexSet(5, {0, 1}), VertexSet(5, {2, 3, 4})};
  EXPECT_FALSE(is_atomic(halves, family));
}

TEST(Triod, StarHasOnePathAndCycleDoNot) {
  EXPECT_FALSE(detect_triod(enumerate_subcontinua(build_continuum(ContinuumKind::interval, 7))));
  EXPECT_FALSE(detect_triod(enumerate_subcontinua(build_continuum(ContinuumKind::cycle, 7))));
  const auto t = detect_triod(enumerate_subcontinua(build_continuum(ContinuumKind::star, 2)));
  ASSERT_TRUE(t);
  EXPECT_EQ(t->a & t->b, t->core);
  EXPECT_EQ(t->b & t->c, t->core);
  EXPECT_EQ(t->a & t->c, t->core);
  for (const auto* s : {&t->a, &t->b, &t->c}) {
    EXPECT_TRUE(t->core.is_subset_of(*s));
    EXPECT_NE(t->core, *s);
  }
}

TEST(Triod, BudgetIsEnforced) {
  const auto poset = enumerate_subcontinua(build_continuum(ContinuumKind::cycle, 7));
  EXPECT_THROW(detect_triod(poset, 10), ResourceError);
}

TEST(CantorFan, ElementsThroughTheVertexAreAmple) {
  const auto fan = build_continuum(ContinuumKind::cantor_fan, 2);
  EXPECT_EQ(classify_cantor_fan(fan, VertexSet(fan.size(), {0})), ElementClass::ample);
  EXPECT_EQ(classify_cantor_fan(fan, VertexSet(fan.size(), {fan.neighbors(0)[0]})), ElementClass::filament);
  EXPECT_THROW(classify_cantor_fan(build_continuum(ContinuumKind::star, 2), VertexSet(7, {0})), DomainError);
}

TEST(ContinuaJson, GraphRoundTrip) {
  const auto g = build_continuum(ContinuumKind::star, 2);
  const nlohmann::json j = g;
  const auto back = graph_from_json(j);
  EXPECT_EQ(back.kind(), ContinuumKind::star);
  EXPECT_EQ(back.vertices(), g.vertices());
  EXPECT_EQ(back.edges(), g.edges());
  const auto pj = poset_to_json(enumerate_subcontinua(build_continuum(ContinuumKind::interval, 2)));
  EXPECT_EQ(pj.at("count"), 6);
}
