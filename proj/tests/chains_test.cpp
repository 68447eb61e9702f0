#include "continuum_lab/chains.hpp"

#include <random>

#include <gtest/gtest.h>

#include "continuum_lab/errors.hpp"

using namespace continuum_lab;

namespace {

GridFrame half_cells() {
  GridFrame f;
  f.cell_size = 0.5;
  return f;
}

std::vector<GridCell> block(std::int64_t i0, std::int64_t i1, std::int64_t j0, std::int64_t j1) {
  std::vector<GridCell> out;
  for (auto i = i0; i <= i1; ++i) {
    for (auto j = j0; j <= j1; ++j) out.push_back({i, j});
  }
  return out;
}

// Condition (2) evaluated literally: for k <= m-3 and i < j with p(i) = k,
// p(j) = m there are i < r < s < j with p(r) = m-1 and p(s) = k+1; and the
// mirror-free one-sided reading used by the library.
bool crooked_by_definition(const std::vector<std::size_t>& p, std::size_t n) {
  for (std::size_t k = 0; k + 3 < n; ++k) {
    for (std::size_t m = k + 3; m < n; ++m) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != k) continue;
        for (std::size_t j = i + 1; j < p.size(); ++j) {
          if (p[j] != m) continue;
          bool found = false;
          for (std::size_t r = i + 1; r < j && !found; ++r) {
            if (p[r] != m - 1) continue;
            for (std::size_t s = r + 1; s < j && !found; ++s) found = p[s] == k + 1;
          }
          if (!found) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST(VerifyChain, ThreeOverlappingBlocksPass) {
  const auto c = make_chain(half_cells(), {block(0, 2, 0, 1), block(2, 4, 0, 1), block(4, 6, 0, 1)});
  const auto r = verify_chain(c, 2.0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(c.mesh, std::hypot(1.5, 1.0), 1e-12);
}

TEST(VerifyChain, NonAdjacentOverlapIsReported) {
  auto l0 = block(0, 2, 0, 1);
  auto l2 = block(4, 6, 0, 1);
  l0.push_back({2, 2});
  l2.push_back({2, 2});
  const auto c = make_chain(half_cells(), {l0, block(2, 4, 0, 1), l2});
  const auto r = verify_chain(c, 3.0);
  EXPECT_FALSE(r.pass);
  ASSERT_EQ(r.adjacency_violations.size(), 1u);
  EXPECT_EQ(r.adjacency_violations[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_TRUE(r.mesh_violations.empty());
}

TEST(VerifyChain, WideLinkBreaksTheMesh) {
  const auto c = make_chain(half_cells(), {block(0, 5, 0, 0)});
  const auto r = verify_chain(c, 2.0);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.mesh_violations, (std::vector<std::size_t>{0}));
}

TEST(VerifyChain, DisconnectedNeighboursAreReported) {
  const auto c = make_chain(half_cells(), {block(0, 1, 0, 0), block(3, 4, 0, 0)});
  EXPECT_FALSE(verify_chain(c, 5.0).pass);
}

TEST(IsCrooked, ShortChainsAreVacuous) {
  EXPECT_TRUE(is_crooked(abstract_pattern({0, 1, 2}, 3), 3).crooked);
}

TEST(IsCrooked, MonotoneFourLinksFails) {
  const auto r = is_crooked(abstract_pattern({0, 1, 2, 3}, 4), 4);
  EXPECT_FALSE(r.crooked);
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ(*r.counterexample, (CrookedCounterexample{0, 3, 0, 3}));
}

TEST(IsCrooked, FoldedFourLinksPasses) {
  EXPECT_TRUE(is_crooked(abstract_pattern({0, 1, 2, 1, 2, 3}, 4), 4).crooked);
}

TEST(IsCrooked, FirstCounterexampleByIThenJ) {
  const auto r = is_crooked(abstract_pattern({1, 0, 1, 2, 3, 4, 3}, 5), 5);
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ(*r.counterexample, (CrookedCounterexample{1, 4, 0, 5}));
}

TEST(IsCrooked, RejectsJumps) {
  EXPECT_THROW(is_crooked(abstract_pattern({0, 2, 3}, 4), 4), PreconditionError);
  RefinementPattern p = abstract_pattern({0, 1, 2}, 3);
  p.containment[1] = false;
  EXPECT_THROW(is_crooked(p, 3), PreconditionError);
}

TEST(IsCrooked, AgreesWithDefinitionOnRandomWalks) {
  std::mt19937_64 rng(5);
  std::size_t crooked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 4 + trial % 3;
    const std::size_t len = 4 + trial % 17;
    std::vector<std::size_t> p{rng() % n};
    while (p.size() < len) {
      const auto v = p.back();
      const int step = static_cast<int>(rng() % 3) - 1;
      if ((v == 0 && step < 0) || (v + 1 == n && step > 0)) continue;
      p.push_back(static_cast<std::size_t>(static_cast<long>(v) + step));
    }
    const bool expected = crooked_by_definition(p, n);
    EXPECT_EQ(is_crooked(abstract_pattern(p, n), n).crooked, expected);
    crooked += expected ? 1 : 0;
  }
  EXPECT_GT(crooked, 100u);
}

TEST(Generator, SmallCases) {
  EXPECT_EQ(generate_crooked_pattern(1).assignment, (std::vector<std::size_t>{0}));
  EXPECT_EQ(generate_crooked_pattern(2).assignment, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(generate_crooked_pattern(4).assignment, (std::vector<std::size_t>{0, 1, 2, 1, 2, 3}));
  EXPECT_THROW(generate_crooked_pattern(0), DomainError);
}

TEST(Generator, OutputIsSpanningAndCrooked) {
  const std::vector<std::size_t> lengths{1, 2, 3, 6, 13, 28, 59};
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto p = generate_crooked_pattern(n);
    EXPECT_EQ(p.assignment.size(), lengths[n - 1]);
    EXPECT_EQ(generated_pattern_length(n), lengths[n - 1]);
    EXPECT_EQ(p.assignment.front(), 0u);
    EXPECT_EQ(p.assignment.back(), n - 1);
    EXPECT_TRUE(is_crooked(p, n).crooked) << "n=" << n;
    EXPECT_TRUE(crooked_by_definition(p.assignment, n)) << "n=" << n;
  }
}

TEST(Generator, RunsAndStays) {
  const auto p = generate_crooked_pattern(5);
  EXPECT_EQ(monotone_runs(p.assignment), 7u);
  const auto doubled = expand_stays(p, 2);
  EXPECT_EQ(doubled.assignment.size(), 2 * p.assignment.size());
  EXPECT_TRUE(is_crooked(doubled, 5).crooked);
}

TEST(ShortestCrooked, MinimalLengthsMatchExhaustiveSearch) {
  const auto four = shortest_crooked_pattern(4, 6);
  ASSERT_TRUE(four);
  EXPECT_EQ(four->size(), 6u);
  EXPECT_FALSE(shortest_crooked_pattern(4, 5));
  const auto five = shortest_crooked_pattern(5, 13);
  ASSERT_TRUE(five);
  EXPECT_EQ(five->size(), 13u);
}

TEST(ChainsJson, PatternAndChainRoundTrip) {
  const auto p = generate_crooked_pattern(4);
  const nlohmann::json j = p;
  EXPECT_EQ(j.at("length"), 6);
  const auto back = j.get<RefinementPattern>();
  EXPECT_EQ(back.assignment, p.assignment);
  EXPECT_EQ(back.n_coarse, 4u);

  const auto c = make_chain(half_cells(), {block(0, 2, 0, 1), block(2, 4, 0, 1)});
  const nlohmann::json cj = c;
  const auto c2 = cj.get<Chain>();
  ASSERT_EQ(c2.links.size(), 2u);
  EXPECT_EQ(c2.links[1].cells, c.links[1].cells);
  EXPECT_DOUBLE_EQ(c2.mesh, c.mesh);
}
