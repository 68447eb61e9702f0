#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "continuum_lab/continua.hpp"
#include "continuum_lab/metric_core.hpp"
#include "continuum_lab/vertex_set.hpp"

namespace continuum_lab {

using SetFunction = std::function<double(const VertexSet&)>;

// mu(A) = sum_{n <= N} diam f_n(A) / 2^n with f_n(x) = 1 / (1 + d(x_n, x)),
// evaluated on any non-empty subset of the ambient (the 2^X form).
class WhitneyMap {
 public:
  WhitneyMap(FiniteMetricSpace ambient, std::vector<std::size_t> sequence,
             std::optional<std::size_t> truncation = std::nullopt);

  const FiniteMetricSpace& ambient() const noexcept { return ambient_; }
  const std::vector<std::size_t>& sequence() const noexcept { return sequence_; }
  std::size_t truncation() const noexcept { return truncation_; }
  bool truncated() const noexcept { return truncation_ < sequence_.size(); }
  // Bound on |mu - mu_full|; zero when every point of the sequence is used.
  double tail_bound() const noexcept;

  double operator()(const VertexSet& a) const;
  // diam f_n(A), n counted from 1.
  double term(std::size_t n, const VertexSet& a) const;
  double whole() const;

  // The returned function owns a copy, so it may outlive this map.
  SetFunction as_function() const {
    return [self = std::make_shared<const WhitneyMap>(*this)](const VertexSet& a) { return (*self)(a); };
  }

 private:
  FiniteMetricSpace ambient_;
  std::vector<std::size_t> sequence_;
  std::size_t truncation_;
  std::vector<double> f_;  // f_[n * size + x]
};

// Dense sequence: breadth-first order from vertex 0 (graphs) or index order
// (point sets); seed > 0 shuffles it with mt19937_64.
WhitneyMap build_whitney_map(const GraphContinuum& g, std::uint64_t seed = 0,
                             std::optional<std::size_t> truncation = std::nullopt);
WhitneyMap build_whitney_map(const FiniteMetricSpace& space, std::uint64_t seed = 0,
                             std::optional<std::size_t> truncation = std::nullopt);

struct WhitneyDistance {
  double value = 0.0;
  // A u B is not a subcontinuum; the 2^X form of mu was used.
  bool two_x_mode = false;
};

double whitney_distance(const SetFunction& mu, const VertexSet& a, const VertexSet& b);
WhitneyDistance whitney_distance(const SetFunction& mu, const GraphContinuum& g, const VertexSet& a,
                                 const VertexSet& b);

struct AxiomReport {
  bool a = true, b = true, c = true, c_prime = true;
  std::size_t checked_a = 0, checked_b = 0, checked_c = 0, checked_c_prime = 0;
  std::vector<std::size_t> a_violations;
  std::vector<std::pair<std::size_t, std::size_t>> b_violations;
  std::vector<std::pair<std::size_t, std::size_t>> c_violations;
  std::vector<std::array<std::size_t, 3>> c_prime_violations;

  bool pass() const { return a && b && c && c_prime; }
  bool c_agrees_with_c_prime() const { return c == c_prime; }
};

// (a) on singletons, (b) on strict inclusions, (c) on intersecting pairs,
// (c') on all (A' in B', C') triples; unions and intersections as plain sets.
AxiomReport check_whitney_axioms(const SetFunction& mu, std::span<const VertexSet> family,
                                 std::size_t max_violations = 32);

struct MetricAxiomReport {
  bool identity = true, symmetry = true, triangle = true;
  std::size_t triples = 0;
  std::optional<std::array<std::size_t, 3>> triangle_violation;
  bool pass() const { return identity && symmetry && triangle; }
};

std::vector<std::vector<double>> distance_matrix(const SetFunction& mu, std::span<const VertexSet> family);
MetricAxiomReport check_metric_axioms(const std::vector<std::vector<double>>& d);

// d_mu(A, {x}) = mu(A) for all x in A; returns the number of failures.
std::size_t check_point_distance(const SetFunction& mu, std::span<const VertexSet> family);
// d_mu(f(s), f(t)) = mu(f(t)) - mu(f(s)) along each arc; returns the worst deviation.
double order_arc_isometry_defect(const SetFunction& mu, std::span<const OrderArc> arcs);

struct ModulusRow {
  double eps = 0.0;
  double delta_h_to_mu = 0.0;  // d_H < delta implies d_mu < eps
  double delta_mu_to_h = 0.0;  // d_mu < delta implies d_H < eps
};

std::vector<ModulusRow> modulus_table(const std::vector<std::vector<double>>& d_mu,
                                      const std::vector<std::vector<double>>& d_h,
                                      std::span<const double> eps_grid);

// Half of the smallest gap between distinct values.
double default_level_tolerance(std::span<const double> values);
double max_value(std::span<const double> values);

std::vector<std::size_t> whitney_level(std::span<const double> values, double t, double tol, double top);
std::vector<std::size_t> whitney_block(std::span<const double> values, double s, double t, double tol,
                                       double top);
// {A : mu(A) >= t and A covers some B with mu(B) < t}: the elements where
// monotone growth crosses t.
std::vector<std::size_t> crossing_level(std::span<const double> values,
                                        const std::vector<std::vector<std::size_t>>& covers_up, double t);

struct LevelRefinement {
  double t0 = 0.0;
  double tol = 0.0;
  std::vector<std::vector<std::size_t>> pieces;  // per member, indices into the family
};

LevelRefinement equal_level_refinement(std::span<const VertexSet> members, std::span<const VertexSet> family,
                                       std::span<const double> values, double t0,
                                       std::optional<double> tol = std::nullopt);

void to_json(nlohmann::json& j, const AxiomReport& r);
void to_json(nlohmann::json& j, const MetricAxiomReport& r);
void to_json(nlohmann::json& j, const ModulusRow& r);
nlohmann::json whitney_map_to_json(const WhitneyMap& mu);

}  // namespace continuum_lab
