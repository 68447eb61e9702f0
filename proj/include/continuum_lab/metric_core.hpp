#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "continuum_lab/vertex_set.hpp"

namespace continuum_lab {

inline constexpr double kTolerance = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

double euclidean(Point2 a, Point2 b);

// A finite ambient space. Either planar (distances are Euclidean) or abstract
// (a symmetric distance table). Subsets are VertexSets over its index range.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_points(std::vector<Point2> points);
  // Validates symmetry, zero diagonal and the triangle inequality (1e-12).
  static FiniteMetricSpace from_matrix(const std::vector<std::vector<double>>& matrix);

  std::size_t size() const noexcept { return n_; }
  double distance(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
  bool is_planar() const noexcept { return !points_.empty(); }
  const std::vector<Point2>& points() const noexcept { return points_; }

  double diameter(const VertexSet& s) const;

 private:
  FiniteMetricSpace() = default;

  std::size_t n_ = 0;
  std::vector<Point2> points_;
  std::vector<double> table_;
};

struct DistanceReport {
  double value = 0.0;
  // Indices into (K, L) for the point-set overload, ambient indices otherwise.
  std::pair<std::size_t, std::size_t> witness{0, 0};
};

DistanceReport hausdorff_distance(const FiniteMetricSpace& ambient, const VertexSet& k,
                                  const VertexSet& l);
DistanceReport hausdorff_distance(std::span<const Point2> k, std::span<const Point2> l);

VertexSet closed_neighborhood(const FiniteMetricSpace& ambient, const VertexSet& k, double eps);
// Point-set form: K must be a subset of ambient (exact coordinate match).
std::vector<Point2> closed_neighborhood(std::span<const Point2> k, double eps,
                                        std::span<const Point2> ambient);

void to_json(nlohmann::json& j, const Point2& p);
void from_json(const nlohmann::json& j, Point2& p);
nlohmann::json to_json(const FiniteMetricSpace& space);
FiniteMetricSpace metric_space_from_json(const nlohmann::json& j);

}  // namespace continuum_lab
