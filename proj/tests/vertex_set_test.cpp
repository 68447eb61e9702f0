#include "continuum_lab/vertex_set.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "continuum_lab/errors.hpp"

using continuum_lab::DomainError;
using continuum_lab::VertexSet;

TEST(VertexSet, BasicMembership) {
  VertexSet s(70, {0, 5, 64, 69});
  EXPECT_EQ(s.count(), 4u);
  EXPECT_TRUE(s.contains(64));
  EXPECT_FALSE(s.contains(63));
  EXPECT_EQ(s.first(), 0u);
  s.erase(0);
  EXPECT_EQ(s.first(), 5u);
  EXPECT_EQ(s.members(), (std::vector<std::size_t>{5, 64, 69}));
  EXPECT_THROW(s.insert(70), DomainError);
}

TEST(VertexSet, EmptySetReportsUniverseAsFirst) {
  VertexSet s(10);
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.first(), 10u);
}

TEST(VertexSet, SetAlgebra) {
  const VertexSet a(8, {1, 2, 3});
  const VertexSet b(8, {3, 4});
  EXPECT_EQ((a | b).members(), (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_EQ((a & b).members(), (std::vector<std::size_t>{3}));
  EXPECT_EQ((a - b).members(), (std::vector<std::size_t>{1, 2}));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_FALSE(a.is_subset_of(b));
  EXPECT_TRUE((a & b).is_subset_of(a));
  EXPECT_EQ(VertexSet::range(8, 2, 4), VertexSet(8, {2, 3, 4}));
  EXPECT_EQ(VertexSet::full(3).count(), 3u);
}

TEST(VertexSet, MismatchedUniversesAreRejected) {
  EXPECT_THROW((void)(VertexSet(4, {1}) | VertexSet(5, {1})), DomainError);
  EXPECT_THROW((void)VertexSet(4, {1}).is_subset_of(VertexSet(5, {1})), DomainError);
}

TEST(VertexSet, CanonicalOrderIsSizeThenLexicographic) {
  std::vector<VertexSet> v = {VertexSet(5, {0, 4}), VertexSet(5, {3}), VertexSet(5, {0, 1}), VertexSet(5, {1})};
  std::sort(v.begin(), v.end(), continuum_lab::canonical_less);
  EXPECT_EQ(v[0], VertexSet(5, {1}));
  EXPECT_EQ(v[1], VertexSet(5, {3}));
  EXPECT_EQ(v[2], VertexSet(5, {0, 1}));
  EXPECT_EQ(v[3], VertexSet(5, {0, 4}));
}

TEST(VertexSet, EqualSetsHashEqually) {
  VertexSet a(100, {3, 99});
  VertexSet b(100);
  b.insert(99);
  b.insert(3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
}
