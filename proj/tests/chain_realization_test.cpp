#include "continuum_lab/chain_realization.hpp"

#include <gtest/gtest.h>

#include "continuum_lab/errors.hpp"

using namespace continuum_lab;

namespace {

bool share_cell(const Link& a, const Link& b) {
  for (const auto& c : a.cells) {
    for (const auto& d : b.cells) {
      if (c == d) return true;
    }
  }
  return false;
}

}  // namespace

TEST(RealizePlanar, ThreeOverlappingRectangles) {
  const auto s = realize_planar(3, 8);
  const auto c = to_chain(s);
  ASSERT_EQ(c.links.size(), 3u);
  EXPECT_TRUE(share_cell(c.links[0], c.links[1]));
  EXPECT_TRUE(share_cell(c.links[1], c.links[2]));
  EXPECT_FALSE(share_cell(c.links[0], c.links[2]));
  for (const auto& l : c.links) {
    for (const auto& cell : l.cells) EXPECT_EQ(cell.j, 0);
  }
  EXPECT_TRUE(verify_chain(c, c.mesh + 1e-9).pass);
  EXPECT_THROW(realize_planar(3, 2), ResourceError);
}

TEST(RealizePlanar, MeshIsTheLargestLinkDiameter) {
  const auto c = to_chain(realize_planar(5, 12));
  double worst = 0.0;
  for (const auto& l : c.links) worst = std::max(worst, link_diameter(c.frame, l.cells));
  EXPECT_DOUBLE_EQ(c.mesh, worst);
}

TEST(RefineSnake, FoldedPatternFitsInsideFourLinks) {
  const std::vector<std::size_t> p{0, 1, 2, 1, 2, 3};
  EXPECT_EQ(required_refinement_factor(p), 7u);
  const auto coarse = realize_planar(4, 8);
  const auto r = refine_snake(coarse, p, 7);
  EXPECT_EQ(r.pattern.assignment, p);
  for (bool flag : r.pattern.containment) EXPECT_TRUE(flag);
  const auto fine = to_chain(r.fine);
  EXPECT_TRUE(verify_chain(fine, fine.mesh + 1e-9).pass);
  EXPECT_TRUE(is_crooked(r.pattern, 4).crooked);
}

TEST(RefineSnake, RejectsSmallOrEvenFactors) {
  const std::vector<std::size_t> p{0, 1, 2, 1, 2, 3};
  const auto coarse = realize_planar(4, 8);
  EXPECT_THROW(refine_snake(coarse, p, 5), ResourceError);
  EXPECT_THROW(refine_snake(coarse, p, 8), ResourceError);
}

TEST(ParentCell, FloorsNegativeIndices) {
  EXPECT_EQ(parent_cell({0, 0}, 3), (GridCell{0, 0}));
  EXPECT_EQ(parent_cell({-1, 1}, 3), (GridCell{0, 0}));
  EXPECT_EQ(parent_cell({-2, 2}, 3), (GridCell{-1, 1}));
  EXPECT_EQ(parent_cell({4, -5}, 3), (GridCell{1, -2}));
}

TEST(GridHausdorff, DistanceTransformMatchesBruteForce) {
  const auto coarse = realize_planar(4, 8);
  const std::vector<std::size_t> p{0, 1, 2, 1, 2, 3};
  for (std::size_t factor : {7u, 9u}) {
    const auto r = refine_snake(coarse, p, factor);
    EXPECT_NEAR(grid_hausdorff(coarse, r.fine, factor), grid_hausdorff_brute(coarse, r.fine, factor), 1e-12);
  }
  const auto q = generate_crooked_pattern(5);
  const auto c5 = realize_planar(5, 8);
  const auto f = required_refinement_factor(q.assignment);
  const auto r5 = refine_snake(c5, q.assignment, f);
  EXPECT_NEAR(grid_hausdorff(c5, r5.fine, f), grid_hausdorff_brute(c5, r5.fine, f), 1e-12);
}

TEST(Tower, OneLevelHoldsTheEndpoints) {
  const Point2 x{0.0, 0.0}, y{1.0, 0.0};
  const auto t = build_tower(3, 1, x, y);
  ASSERT_EQ(t.levels.size(), 1u);
  EXPECT_TRUE(link_contains_point(t.levels[0], 0, x));
  EXPECT_TRUE(link_contains_point(t.levels[0], t.levels[0].links.size() - 1, y));
  EXPECT_LE(t.levels[0].mesh, 0.5);
}

TEST(Tower, ThreeLevelsConverge) {
  const auto t = build_tower(3, 3, {0.0, 0.0}, {1.0, 0.0});
  ASSERT_EQ(t.levels.size(), 3u);
  EXPECT_EQ(t.levels[0].links.size(), 3u);
  EXPECT_EQ(t.levels[1].links.size(), 6u);
  EXPECT_EQ(t.levels[2].links.size(), 56u);
  const double bounds[] = {0.5, 0.25, 0.125};
  for (std::size_t n = 0; n < 3; ++n) {
    const auto& d = t.diagnostics[n];
    EXPECT_LE(d.mesh, bounds[n]);
    EXPECT_TRUE(d.endpoints_in_end_links);
    EXPECT_TRUE(d.nested_in_previous);
    EXPECT_TRUE(d.crooked_in_previous);
    EXPECT_TRUE(verify_chain(t.levels[n], bounds[n]).pass);
    if (n < 2) {
      ASSERT_TRUE(d.hausdorff_to_next);
      EXPECT_LE(*d.hausdorff_to_next, d.mesh);
    }
  }
  for (std::size_t n = 1; n < 3; ++n) EXPECT_TRUE(is_crooked(t.patterns[n - 1], t.levels[n - 1].links.size()).crooked);
}

TEST(Tower, WorksAlongAnyAxis) {
  const auto t = build_tower(3, 2, {0.2, -0.1}, {-0.4, 0.5});
  EXPECT_TRUE(t.diagnostics[1].nested_in_previous);
  EXPECT_TRUE(link_contains_point(t.levels[1], 0, {0.2, -0.1}));
  EXPECT_TRUE(link_contains_point(t.levels[1], t.levels[1].links.size() - 1, {-0.4, 0.5}));
  EXPECT_THROW(build_tower(3, 2, {0.0, 0.0}, {2.0, 0.0}), DomainError);
}

TEST(Tower, FourthLevelReportsWhatIsAchievable) {
  try {
    build_tower(3, 4, {0.0, 0.0}, {1.0, 0.0});
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.achievable(), 3u);
  }
}
