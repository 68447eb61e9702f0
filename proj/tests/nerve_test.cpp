#include "continuum_lab/nerve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

using namespace continuum_lab;

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix planar(const std::vector<std::pair<double, double>>& pts) {
  Matrix d(pts.size(), std::vector<double>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      d[i][j] = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
    }
  }
  return d;
}

Matrix polygon(std::size_t n) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts.emplace_back(std::cos(a), std::sin(a));
  }
  return planar(pts);
}

bool connected_at(const Matrix& d, double eps) {
  std::vector<bool> seen(d.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < d.size(); ++w) {
      if (!seen[w] && d[v][w] <= eps) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

TEST(Nerve, SquareIsACycleUntilTheDiagonalsJoin) {
  const auto d = planar({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto ring = proximity_nerve(d, 1.0);
  EXPECT_EQ(ring.edges, 4u);
  EXPECT_EQ(ring.triangles, 0u);
  EXPECT_TRUE(ring.cyclic());
  const auto full = proximity_nerve(d, 1.5);
  EXPECT_EQ(full.edges, 6u);
  EXPECT_EQ(full.triangles, 4u);
  EXPECT_EQ(full.betti1, 0u);
}

TEST(Nerve, HexagonAndComponents) {
  const auto hex = polygon(6);
  EXPECT_TRUE(proximity_nerve(hex, 1.0 + 1e-9).cyclic());
  const auto apart = proximity_nerve(hex, 0.5);
  EXPECT_EQ(apart.components, 6u);
  EXPECT_EQ(apart.betti1, 0u);
  EXPECT_EQ(apart.component_of.size(), 6u);
}

TEST(Nerve, FigureEightHasTwoLoops) {
  // Two unit squares sharing the point (1,0); the far corners are 1 apart only along edges.
  const auto d = planar({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 0}, {2, -1}, {1, -1}});
  const auto r = proximity_nerve(d, 1.0);
  EXPECT_EQ(r.components, 1u);
  EXPECT_EQ(r.triangles, 0u);
  EXPECT_EQ(r.betti1, r.edges + r.components - r.vertices);
  EXPECT_EQ(r.betti1, 2u);
}

TEST(Nerve, EulerCharacteristicOnRandomClouds) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::pair<double, double>> pts(12);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const auto d = planar(pts);
    const auto r = proximity_nerve(d, 0.9);
    // beta1 <= E - V + C, with equality when there are no triangles.
    EXPECT_LE(r.betti1 + r.vertices, r.edges + r.components);
    if (r.triangles == 0) EXPECT_EQ(r.betti1 + r.vertices, r.edges + r.components);
  }
}

TEST(ConnectivityThreshold, MatchesSmallestConnectingDistance) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<double, double>> pts(9);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const auto d = planar(pts);
    std::vector<double> candidates;
    for (const auto& row : d) candidates.insert(candidates.end(), row.begin(), row.end());
    std::sort(candidates.begin(), candidates.end());
    double expected = 0.0;
    for (double c : candidates) {
      if (connected_at(d, c)) {
        expected = c;
        break;
      }
    }
    std::vector<std::size_t> all(9);
    for (std::size_t i = 0; i < 9; ++i) all[i] = i;
    EXPECT_DOUBLE_EQ(connectivity_threshold(d, all), expected);
  }
  const std::vector<std::size_t> one{0};
  EXPECT_EQ(connectivity_threshold(polygon(4), one), 0.0);
}

TEST(Nerve, Json) {
  const nlohmann::json j = proximity_nerve(polygon(5), 1.2);
  EXPECT_EQ(j.at("components"), 1);
  EXPECT_EQ(j.at("betti1"), 1);
}
