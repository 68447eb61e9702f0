#include "continuum_lab/whitney.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "continuum_lab/continua.hpp"
#include "continuum_lab/errors.hpp"
#include "continuum_lab/nerve.hpp"

using namespace continuum_lab;

namespace {

GraphContinuum path(std::size_t vertices) { return build_continuum(ContinuumKind::interval, vertices - 1); }

std::vector<double> values_of(const WhitneyMap& mu, const std::vector<VertexSet>& family) {
  std::vector<double> v;
  for (const auto& s : family) v.push_back(mu(s));
  return v;
}

}  // namespace

// Reference values from a direct evaluation of the series in double precision
// outside this code base: points 0, 1/4, ..., 1 taken in index order.
TEST(WhitneyMap, GoldenValuesOnPathFive) {
  const auto mu = build_whitney_map(path(5));
  EXPECT_NEAR(mu.whole(), 0.44122023809523814, 1e-15);
  EXPECT_NEAR(mu(VertexSet(5, {1, 2})), 0.1529761904761905, 1e-15);
  EXPECT_NEAR(mu(VertexSet(5, {0, 1, 2})), 0.27782738095238096, 1e-15);
  EXPECT_DOUBLE_EQ(mu.term(1, VertexSet::full(5)), 0.5);
  EXPECT_EQ(mu.tail_bound(), 0.0);
}

TEST(WhitneyMap, SingletonAmbientIsZero) {
  const auto mu = build_whitney_map(FiniteMetricSpace::from_points({{2.0, 3.0}}));
  EXPECT_EQ(mu(VertexSet(1, {0})), 0.0);
}

TEST(WhitneyMap, StrictlyMonotoneOnPathFive) {
  const auto g = path(5);
  const auto family = enumerate_subcontinua(g).elements();
  ASSERT_EQ(family.size(), 15u);
  const auto mu = build_whitney_map(g);
  for (const auto& a : family) {
    for (const auto& b : family) {
      if (a != b && a.is_subset_of(b)) EXPECT_LT(mu(a), mu(b));
    }
    if (a.count() == 1) EXPECT_EQ(mu(a), 0.0);
  }
}

TEST(WhitneyMap, TruncationTailBound) {
  const auto g = path(12);
  const auto full = build_whitney_map(g);
  const auto family = enumerate_subcontinua(g).elements();
  for (std::size_t n : {1u, 3u, 6u, 9u}) {
    const auto cut = build_whitney_map(g, 0, n);
    EXPECT_TRUE(cut.truncated());
    EXPECT_EQ(cut.tail_bound(), std::ldexp(1.0, -static_cast<int>(n)));
    for (const auto& a : family) EXPECT_LE(std::abs(cut(a) - full(a)), cut.tail_bound());
  }
}

TEST(WhitneyMap, RejectsBadSequencesAndSets) {
  const auto space = FiniteMetricSpace::from_points({{0, 0}, {1, 0}});
  EXPECT_THROW(WhitneyMap(space, {0, 0}), DomainError);
  EXPECT_THROW(WhitneyMap(space, {0}), DomainError);
  const WhitneyMap mu(space, {1, 0});
  EXPECT_THROW(mu(VertexSet(2)), DomainError);
  EXPECT_THROW(mu(VertexSet(3, {0})), DomainError);
}

TEST(WhitneyMap, SeedsGiveOtherValidMaps) {
  const auto g = path(8);
  const auto family = enumerate_subcontinua(g).elements();
  const auto base = build_whitney_map(g);
  const auto shuffled = build_whitney_map(g, 9);
  EXPECT_NE(base.sequence(), shuffled.sequence());
  EXPECT_TRUE(check_whitney_axioms(shuffled.as_function(), family).pass());
  EXPECT_EQ(build_whitney_map(g, 9).sequence(), shuffled.sequence());
}

TEST(Axioms, ConstructedMapPassesOnPathEight) {
  const auto g = path(8);
  const auto family = enumerate_subcontinua(g).elements();
  const auto r = check_whitney_axioms(build_whitney_map(g).as_function(), family);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked_a, 8u);
  EXPECT_GT(r.checked_c_prime, 0u);
}

TEST(Axioms, NegativeSizeFailsMonotonicity) {
  const auto family = enumerate_subcontinua(path(6)).elements();
  const SetFunction neg = [](const VertexSet& a) { return -static_cast<double>(a.count()); };
  const auto r = check_whitney_axioms(neg, family);
  EXPECT_FALSE(r.b);
  EXPECT_FALSE(r.b_violations.empty());
}

// -|A| is additive on intersecting unions, so (c) holds with equality, while
// (c') fails; the equivalence of the two needs (a) and (b), which -|A| breaks.
TEST(Axioms, NegativeSizeSeparatesCFromCPrime) {
  const auto family = enumerate_subcontinua(path(6)).elements();
  const SetFunction neg = [](const VertexSet& a) { return -static_cast<double>(a.count()); };
  const auto r = check_whitney_axioms(neg, family);
  EXPECT_TRUE(r.c);
  EXPECT_FALSE(r.c_prime);
  EXPECT_FALSE(r.c_agrees_with_c_prime());
}

TEST(Axioms, SubadditivityBreakersFailBoth) {
  const auto family = enumerate_subcontinua(build_continuum(ContinuumKind::cycle, 6)).elements();
  const SetFunction sq = [](const VertexSet& a) {
    const double n = static_cast<double>(a.count()) - 1.0;
    return n * n;
  };
  const SetFunction ex = [](const VertexSet& a) { return std::ldexp(1.0, static_cast<int>(a.count())) - 2.0; };
  for (const auto& f : {sq, ex}) {
    const auto r = check_whitney_axioms(f, family);
    EXPECT_TRUE(r.a);
    EXPECT_TRUE(r.b);
    EXPECT_FALSE(r.c);
    EXPECT_FALSE(r.c_prime);
  }
}

TEST(WhitneyDistance, Properties) {
  const auto g = path(6);
  const auto mu = build_whitney_map(g);
  const auto f = mu.as_function();
  const VertexSet a(6, {1, 2}), b(6, {1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(whitney_distance(f, a, b), mu(b) - mu(a));
  EXPECT_DOUBLE_EQ(whitney_distance(f, b, VertexSet(6, {3})), mu(b));
  EXPECT_EQ(whitney_distance(f, b, b), 0.0);
  const auto apart = whitney_distance(f, g, VertexSet(6, {0}), VertexSet(6, {4, 5}));
  EXPECT_TRUE(apart.two_x_mode);
  EXPECT_DOUBLE_EQ(apart.value, mu(VertexSet(6, {0, 4, 5})));
  EXPECT_FALSE(whitney_distance(f, g, a, b).two_x_mode);
}

TEST(WhitneyDistance, MetricAndIsometryOnPathEight) {
  const auto g = path(8);
  const auto family = enumerate_subcontinua(g).elements();
  const auto f = build_whitney_map(g).as_function();
  const auto d = distance_matrix(f, family);
  const auto r = check_metric_axioms(d);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.triples, family.size() * family.size() * family.size());
  EXPECT_EQ(check_point_distance(f, family), 0u);
  EXPECT_LE(order_arc_isometry_defect(f, maximal_order_arcs(g)), 1e-12);
}

TEST(WhitneyDistance, BrokenTableIsCaught) {
  std::vector<std::vector<double>> d = {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};
  const auto r = check_metric_axioms(d);
  EXPECT_FALSE(r.triangle);
  ASSERT_TRUE(r.triangle_violation);
  d[0][1] = 2;
  EXPECT_FALSE(check_metric_axioms(d).symmetry);
}

TEST(Modulus, DeltasCertifyBothDirections) {
  const auto g = path(10);
  const auto family = enumerate_subcontinua(g).elements();
  const auto f = build_whitney_map(g).as_function();
  const auto dmu = distance_matrix(f, family);
  std::vector<std::vector<double>> dh(family.size(), std::vector<double>(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) dh[i][j] = hausdorff_distance(g.metric(), family[i], family[j]).value;
  }
  const std::vector<double> grid{0.01, 0.05, 0.1, 0.3};
  const auto rows = modulus_table(dmu, dh, grid);
  ASSERT_EQ(rows.size(), grid.size());
  for (const auto& row : rows) {
    EXPECT_GT(row.delta_h_to_mu, 0.0);
    EXPECT_GT(row.delta_mu_to_h, 0.0);
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t j = 0; j < family.size(); ++j) {
        if (dh[i][j] < row.delta_h_to_mu) EXPECT_LT(dmu[i][j], row.eps);
        if (dmu[i][j] < row.delta_mu_to_h) EXPECT_LT(dh[i][j], row.eps);
      }
    }
  }
}

TEST(Levels, BottomAndTop) {
  const auto g = path(7);
  const auto family = enumerate_subcontinua(g).elements();
  const auto mu = build_whitney_map(g);
  const auto v = values_of(mu, family);
  const double top = max_value(v);
  EXPECT_EQ(top, mu.whole());
  const auto bottom = whitney_level(v, 0.0, 1e-12, top);
  EXPECT_EQ(bottom.size(), 7u);
  for (std::size_t i : bottom) EXPECT_EQ(family[i].count(), 1u);
  const auto whole = whitney_level(v, top, default_level_tolerance(v), top);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(family[whole[0]], VertexSet::full(7));
  EXPECT_THROW(whitney_level(v, top * 1.5, 1e-12, top), DomainError);
  EXPECT_THROW(whitney_level(v, -0.1, 1e-12, top), DomainError);
  const auto block = whitney_block(v, 0.0, top, 1e-12, top);
  EXPECT_EQ(block.size(), family.size());
}

TEST(Levels, DefaultToleranceIsHalfTheSmallestGap) {
  const std::vector<double> v{0.0, 0.0, 0.3, 0.5, 0.55};
  EXPECT_NEAR(default_level_tolerance(v), 0.025, 1e-15);
}

TEST(Levels, CrossingLevelsOnTheCycleFormACircle) {
  const auto g = build_continuum(ContinuumKind::cycle, 8);
  const auto poset = enumerate_subcontinua(g);
  const auto family = poset.elements();
  const auto mu = build_whitney_map(g);
  const auto v = values_of(mu, family);
  std::vector<std::vector<std::size_t>> up(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) up[i] = poset.covers(i);
  for (double frac : {0.2, 0.4, 0.6}) {
    const auto level = crossing_level(v, up, frac * mu.whole());
    std::vector<std::vector<double>> d(level.size(), std::vector<double>(level.size()));
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = 0; j < level.size(); ++j) {
        d[i][j] = hausdorff_distance(g.metric(), family[level[i]], family[level[j]]).value;
      }
    }
    std::vector<std::size_t> all(level.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto nerve = proximity_nerve(d, connectivity_threshold(d, all));
    EXPECT_TRUE(nerve.cyclic()) << "t = " << frac << " top: " << nerve.components << " components, betti1 "
                                << nerve.betti1;
  }
}

TEST(Refinement, WholeSpaceAtItsOwnValue) {
  const auto g = path(6);
  const auto family = enumerate_subcontinua(g).elements();
  const auto mu = build_whitney_map(g);
  const auto v = values_of(mu, family);
  const std::vector<VertexSet> members{VertexSet::full(6)};
  const auto r = equal_level_refinement(members, family, v, mu.whole(), 1e-12);
  ASSERT_EQ(r.pieces.size(), 1u);
  EXPECT_EQ(r.pieces[0], whitney_level(v, mu.whole(), 1e-12, mu.whole()));
}

TEST(Refinement, PiecesCoverAndStayInside) {
  const auto g = path(9);
  const auto family = enumerate_subcontinua(g).elements();
  const auto mu = build_whitney_map(g);
  const auto v = values_of(mu, family);
  const std::vector<VertexSet> members{VertexSet::range(9, 0, 3), VertexSet::range(9, 4, 8)};
  const double r0 = std::min(mu(members[0]), mu(members[1]));
  const auto r = equal_level_refinement(members, family, v, 0.5 * r0);
  VertexSet covered(9);
  for (std::size_t d = 0; d < members.size(); ++d) {
    EXPECT_FALSE(r.pieces[d].empty());
    for (std::size_t p : r.pieces[d]) {
      EXPECT_TRUE(family[p].is_subset_of(members[d]));
      EXPECT_LE(std::abs(v[p] - 0.5 * r0), r.tol);
      covered |= family[p];
    }
  }
  EXPECT_EQ(covered, VertexSet::full(9));
  EXPECT_THROW(equal_level_refinement(members, family, v, 1.1 * r0), DomainError);
  const std::vector<VertexSet> overlapping{VertexSet::range(9, 0, 4), VertexSet::range(9, 4, 8)};
  EXPECT_THROW(equal_level_refinement(overlapping, family, v, 0.1 * r0), DomainError);
}

TEST(WhitneyJson, ReportsSerialize) {
  const auto g = path(5);
  const auto family = enumerate_subcontinua(g).elements();
  const auto mu = build_whitney_map(g);
  const nlohmann::json j = check_whitney_axioms(mu.as_function(), family);
  EXPECT_EQ(j.at("pass"), true);
  EXPECT_EQ(j.at("c_prime").at("pass"), true);
  const auto mj = whitney_map_to_json(mu);
  EXPECT_EQ(mj.at("sequence").size(), 5u);
}
