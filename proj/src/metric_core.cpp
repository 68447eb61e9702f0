#include "continuum_lab/metric_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "continuum_lab/errors.hpp"

namespace continuum_lab {

double euclidean(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

FiniteMetricSpace FiniteMetricSpace::from_points(std::vector<Point2> points) {
  if (points.empty()) throw DomainError("point set must be non-empty");
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DomainError("point coordinates must be finite");
    }
  }
  FiniteMetricSpace s;
  s.n_ = points.size();
  s.table_.assign(s.n_ * s.n_, 0.0);
  for (std::size_t i = 0; i < s.n_; ++i) {
    for (std::size_t j = i + 1; j < s.n_; ++j) {
      const double d = euclidean(points[i], points[j]);
      s.table_[i * s.n_ + j] = d;
      s.table_[j * s.n_ + i] = d;
    }
  }
  s.points_ = std::move(points);
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(const std::vector<std::vector<double>>& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw DomainError("distance table must be non-empty");
  for (const auto& row : matrix) {
    if (row.size() != n) throw DomainError("distance table must be square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(matrix[i][i]) > kTolerance) throw DomainError("distance table diagonal must be 0");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(matrix[i][j]) || matrix[i][j] < -kTolerance) {
        throw DomainError("distance table entries must be finite and nonnegative");
      }
      if (std::abs(matrix[i][j] - matrix[j][i]) > kTolerance) {
        throw DomainError("distance table must be symmetric");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (matrix[i][k] > matrix[i][j] + matrix[j][k] + kTolerance) {
          throw DomainError("distance table violates the triangle inequality at (" +
                            std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ")");
        }
      }
    }
  }
  FiniteMetricSpace s;
  s.n_ = n;
  s.table_.reserve(n * n);
  for (const auto& row : matrix) s.table_.insert(s.table_.end(), row.begin(), row.end());
  return s;
}

double FiniteMetricSpace::diameter(const VertexSet& s) const {
  const auto m = s.members();
  double d = 0.0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) d = std::max(d, distance(m[a], m[b]));
  }
  return d;
}

namespace {

void check_subset(const FiniteMetricSpace& ambient, const VertexSet& s, const char* name) {
  if (s.universe() != ambient.size()) {
    throw DomainError(std::string(name) + " is drawn from a different ambient space");
  }
  if (s.empty()) throw DomainError(std::string(name) + " must be non-empty");
}

// One directed half of d_H: max over a of min over b. Ties keep the lowest
// indices because comparisons are strict.
template <typename Dist>
DistanceReport directed(std::size_t na, std::size_t nb, Dist dist) {
  DistanceReport r{-1.0, {0, 0}};
  for (std::size_t a = 0; a < na; ++a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t b = 0; b < nb; ++b) {
      const double d = dist(a, b);
      if (d < best) {
        best = d;
        arg = b;
      }
    }
    if (best > r.value) r = {best, {a, arg}};
  }
  return r;
}

template <typename Dist>
DistanceReport symmetric_hausdorff(std::size_t nk, std::size_t nl, Dist dist) {
  const DistanceReport kl = directed(nk, nl, dist);
  DistanceReport lk = directed(nl, nk, [&](std::size_t a, std::size_t b) { return dist(b, a); });
  lk.witness = {lk.witness.second, lk.witness.first};
  if (lk.value > kl.value) return lk;
  if (lk.value == kl.value && lk.witness < kl.witness) return lk;
  return kl;
}

}  // namespace

DistanceReport hausdorff_distance(const FiniteMetricSpace& ambient, const VertexSet& k,
                                  const VertexSet& l) {
  check_subset(ambient, k, "K");
  check_subset(ambient, l, "L");
  const auto km = k.members();
  const auto lm = l.members();
  DistanceReport r = symmetric_hausdorff(km.size(), lm.size(), [&](std::size_t a, std::size_t b) {
    return ambient.distance(km[a], lm[b]);
  });
  r.witness = {km[r.witness.first], lm[r.witness.second]};
  return r;
}

DistanceReport hausdorff_distance(std::span<const Point2> k, std::span<const Point2> l) {
  if (k.empty() || l.empty()) throw DomainError("Hausdorff distance needs non-empty sets");
  return symmetric_hausdorff(k.size(), l.size(),
                             [&](std::size_t a, std::size_t b) { return euclidean(k[a], l[b]); });
}

VertexSet closed_neighborhood(const FiniteMetricSpace& ambient, const VertexSet& k, double eps) {
  if (k.universe() != ambient.size()) throw DomainError("K is drawn from a different ambient space");
  if (!(eps >= 0.0)) throw DomainError("eps must be nonnegative");
  VertexSet out(ambient.size());
  const auto km = k.members();
  for (std::size_t x = 0; x < ambient.size(); ++x) {
    for (std::size_t v : km) {
      if (ambient.distance(x, v) <= eps + kTolerance) {
        out.insert(x);
        break;
      }
    }
  }
  return out;
}

std::vector<Point2> closed_neighborhood(std::span<const Point2> k, double eps,
                                        std::span<const Point2> ambient) {
  if (!(eps >= 0.0)) throw DomainError("eps must be nonnegative");
  for (const auto& p : k) {
    if (std::find(ambient.begin(), ambient.end(), p) == ambient.end()) {
      throw DomainError("K is not a subset of the ambient point set");
    }
  }
  std::vector<Point2> out;
  for (const auto& x : ambient) {
    for (const auto& p : k) {
      if (euclidean(x, p) <= eps + kTolerance) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const Point2& p) { j = nlohmann::json::array({p.x, p.y}); }

void from_json(const nlohmann::json& j, Point2& p) {
  if (!j.is_array() || j.size() != 2) throw DomainError("a point is a [x, y] pair");
  p.x = j.at(0).get<double>();
  p.y = j.at(1).get<double>();
}

nlohmann::json to_json(const FiniteMetricSpace& space) {
  nlohmann::json j;
  if (space.is_planar()) {
    j["points"] = space.points();
  } else {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
      auto row = nlohmann::json::array();
      for (std::size_t k = 0; k < space.size(); ++k) row.push_back(space.distance(i, k));
      rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
  }
  return j;
}

FiniteMetricSpace metric_space_from_json(const nlohmann::json& j) {
  if (j.contains("points")) {
    return FiniteMetricSpace::from_points(j.at("points").get<std::vector<Point2>>());
  }
  if (j.contains("matrix")) {
    return FiniteMetricSpace::from_matrix(j.at("matrix").get<std::vector<std::vector<double>>>());
  }
  throw DomainError("point set JSON needs a \"points\" or \"matrix\" key");
}

}  // namespace continuum_lab
