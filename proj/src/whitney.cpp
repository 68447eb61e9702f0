#include "continuum_lab/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "continuum_lab/errors.hpp"

namespace continuum_lab {

WhitneyMap::WhitneyMap(FiniteMetricSpace ambient, std::vector<std::size_t> sequence,
                       std::optional<std::size_t> truncation)
    : ambient_(std::move(ambient)), sequence_(std::move(sequence)) {
  const std::size_t n = ambient_.size();
  if (sequence_.size() != n) throw DomainError("dense sequence must list every ambient point once");
  std::vector<bool> seen(n, false);
  for (std::size_t x : sequence_) {
    if (x >= n || seen[x]) throw DomainError("dense sequence must list every ambient point once");
    seen[x] = true;
  }
  truncation_ = std::min(truncation.value_or(n), n);
  if (truncation_ == 0) throw DomainError("truncation must keep at least one term");
  f_.resize(truncation_ * n);
  for (std::size_t k = 0; k < truncation_; ++k) {
    for (std::size_t x = 0; x < n; ++x) f_[k * n + x] = 1.0 / (1.0 + ambient_.distance(sequence_[k], x));
  }
}

double WhitneyMap::tail_bound() const noexcept {
  return truncated() ? std::ldexp(1.0, -static_cast<int>(truncation_)) : 0.0;
}

double WhitneyMap::term(std::size_t n, const VertexSet& a) const {
  if (n == 0 || n > truncation_) throw DomainError("series term index out of range");
  const std::size_t size = ambient_.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  a.for_each([&](std::size_t x) {
    const double v = f_[(n - 1) * size + x];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  });
  return hi - lo;
}

double WhitneyMap::operator()(const VertexSet& a) const {
  if (a.universe() != ambient_.size()) throw DomainError("set is drawn from a different ambient space");
  if (a.empty()) throw DomainError("Whitney map is undefined on the empty set");
  const auto members = a.members();
  const std::size_t size = ambient_.size();
  double sum = 0.0;
  double weight = 0.5;
  for (std::size_t k = 0; k < truncation_; ++k, weight *= 0.5) {
    const double* row = f_.data() + k * size;
    double lo = row[members[0]];
    double hi = lo;
    for (std::size_t x : members) {
      lo = std::min(lo, row[x]);
      hi = std::max(hi, row[x]);
    }
    sum += weight * (hi - lo);
  }
  return sum;
}

double WhitneyMap::whole() const { return (*this)(VertexSet::full(ambient_.size())); }

namespace {

std::vector<std::size_t> shuffled(std::vector<std::size_t> order, std::uint64_t seed) {
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

}  // namespace

WhitneyMap build_whitney_map(const GraphContinuum& g, std::uint64_t seed, std::optional<std::size_t> truncation) {
  return WhitneyMap(g.metric(), shuffled(g.bfs_order(), seed), truncation);
}

WhitneyMap build_whitney_map(const FiniteMetricSpace& space, std::uint64_t seed,
                             std::optional<std::size_t> truncation) {
  std::vector<std::size_t> order(space.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return WhitneyMap(space, shuffled(std::move(order), seed), truncation);
}

double whitney_distance(const SetFunction& mu, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw DomainError("Whitney distance needs non-empty sets");
  const double u = mu(a | b);
  return std::max(u - mu(a), u - mu(b));
}

WhitneyDistance whitney_distance(const SetFunction& mu, const GraphContinuum& g, const VertexSet& a,
                                 const VertexSet& b) {
  return {whitney_distance(mu, a, b), !g.is_connected(a | b)};
}

AxiomReport check_whitney_axioms(const SetFunction& mu, std::span<const VertexSet> family,
                                 std::size_t max_violations) {
  AxiomReport r;
  const std::size_t n = family.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = mu(family[i]);

  for (std::size_t i = 0; i < n; ++i) {
    if (family[i].count() != 1) continue;
    ++r.checked_a;
    if (std::abs(v[i]) > kTolerance) {
      r.a = false;
      if (r.a_violations.size() < max_violations) r.a_violations.push_back(i);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> nested;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !family[i].is_subset_of(family[j])) continue;
      nested.emplace_back(i, j);
      ++r.checked_b;
      if (!(v[i] < v[j])) {
        r.b = false;
        if (r.b_violations.size() < max_violations) r.b_violations.emplace_back(i, j);
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!family[i].intersects(family[j])) continue;
      ++r.checked_c;
      const double lhs = mu(family[i] | family[j]);
      const double rhs = v[i] + v[j] - mu(family[i] & family[j]);
      if (lhs > rhs + kTolerance) {
        r.c = false;
        if (r.c_violations.size() < max_violations) r.c_violations.emplace_back(i, j);
      }
    }
  }

  for (const auto& [ia, ib] : nested) {
    for (std::size_t ic = 0; ic < n; ++ic) {
      ++r.checked_c_prime;
      const double lhs = mu(family[ib] | family[ic]) - mu(family[ia] | family[ic]);
      if (lhs > v[ib] - v[ia] + kTolerance) {
        r.c_prime = false;
        if (r.c_prime_violations.size() < max_violations) r.c_prime_violations.push_back({ia, ib, ic});
      }
    }
  }
  return r;
}

std::vector<std::vector<double>> distance_matrix(const SetFunction& mu, std::span<const VertexSet> family) {
  const std::size_t n = family.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = mu(family[i]);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double u = mu(family[i] | family[j]);
      d[i][j] = std::max(u - v[i], u - v[j]);
    }
  }
  return d;
}

MetricAxiomReport check_metric_axioms(const std::vector<std::vector<double>>& d) {
  MetricAxiomReport r;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d[i][i]) > kTolerance) r.identity = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !(d[i][j] > kTolerance)) r.identity = false;
      if (std::abs(d[i][j] - d[j][i]) > kTolerance) r.symmetry = false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        ++r.triples;
        if (d[i][k] > d[i][j] + d[j][k] + kTolerance) {
          if (r.triangle) r.triangle_violation = std::array<std::size_t, 3>{i, j, k};
          r.triangle = false;
        }
      }
    }
  }
  return r;
}

std::size_t check_point_distance(const SetFunction& mu, std::span<const VertexSet> family) {
  std::size_t failures = 0;
  for (const auto& a : family) {
    const double va = mu(a);
    a.for_each([&](std::size_t x) {
      const VertexSet point(a.universe(), {x});
      if (std::abs(whitney_distance(mu, a, point) - va) > kTolerance) ++failures;
    });
  }
  return failures;
}

double order_arc_isometry_defect(const SetFunction& mu, std::span<const OrderArc> arcs) {
  double worst = 0.0;
  for (const auto& arc : arcs) {
    std::vector<double> v(arc.size());
    for (std::size_t s = 0; s < arc.size(); ++s) v[s] = mu(arc[s]);
    for (std::size_t s = 0; s < arc.size(); ++s) {
      for (std::size_t t = s; t < arc.size(); ++t) {
        worst = std::max(worst, std::abs(whitney_distance(mu, arc[s], arc[t]) - (v[t] - v[s])));
      }
    }
  }
  return worst;
}

std::vector<ModulusRow> modulus_table(const std::vector<std::vector<double>>& d_mu,
                                      const std::vector<std::vector<double>>& d_h,
                                      std::span<const double> eps_grid) {
  const std::size_t n = d_mu.size();
  if (d_h.size() != n) throw DomainError("distance tables differ in size");
  std::vector<ModulusRow> rows;
  for (double eps : eps_grid) {
    ModulusRow row{eps, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d_mu[i][j] >= eps) row.delta_h_to_mu = std::min(row.delta_h_to_mu, d_h[i][j]);
        if (d_h[i][j] >= eps) row.delta_mu_to_h = std::min(row.delta_mu_to_h, d_mu[i][j]);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

double default_level_tolerance(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double g = v[i] - v[i - 1];
    if (g > kTolerance) gap = std::min(gap, g);
  }
  return std::isfinite(gap) ? gap / 2.0 : kTolerance;
}

double max_value(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

std::vector<std::size_t> whitney_level(std::span<const double> values, double t, double tol, double top) {
  if (!(t >= -kTolerance && t <= top + kTolerance)) {
    throw DomainError("level " + std::to_string(t) + " outside [0, " + std::to_string(top) + "]");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - t) <= tol) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> whitney_block(std::span<const double> values, double s, double t, double tol,
                                       double top) {
  if (!(s >= -kTolerance && s <= t && t <= top + kTolerance)) {
    throw DomainError("block bounds must satisfy 0 <= s <= t <= top");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= s - tol && values[i] <= t + tol) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> crossing_level(std::span<const double> values,
                                        const std::vector<std::vector<std::size_t>>& covers_up, double t) {
  std::vector<bool> in(values.size(), false);
  for (std::size_t b = 0; b < values.size(); ++b) {
    if (!(values[b] < t - kTolerance)) continue;
    for (std::size_t a : covers_up[b]) {
      if (values[a] >= t - kTolerance) in[a] = true;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) out.push_back(i);
  }
  return out;
}

LevelRefinement equal_level_refinement(std::span<const VertexSet> members, std::span<const VertexSet> family,
                                       std::span<const double> values, double t0, std::optional<double> tol) {
  if (members.empty()) throw DomainError("decomposition has no members");
  if (family.size() != values.size()) throw DomainError("family and values differ in size");
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (members[a].intersects(members[b])) throw DomainError("decomposition members overlap");
    }
  }
  // Member values are read from the family.
  double r = std::numeric_limits<double>::infinity();
  for (const auto& d : members) {
    const auto it = std::find(family.begin(), family.end(), d);
    if (it == family.end()) throw DomainError("decomposition member is not in the family");
    r = std::min(r, values[static_cast<std::size_t>(it - family.begin())]);
  }
  if (!(t0 > 0.0) || t0 > r + kTolerance) {
    throw DomainError("t0 must lie in (0, " + std::to_string(r) + "], the smallest member value");
  }

  LevelRefinement out;
  out.t0 = t0;
  if (tol) {
    out.tol = *tol;
  } else {
    // Smallest tolerance whose level pieces cover every point of every member.
    double need = 0.0;
    for (const auto& d : members) {
      d.for_each([&](std::size_t x) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t e = 0; e < family.size(); ++e) {
          if (family[e].contains(x) && family[e].is_subset_of(d)) best = std::min(best, std::abs(values[e] - t0));
        }
        need = std::max(need, best);
      });
    }
    out.tol = need + kTolerance;
  }
  for (const auto& d : members) {
    std::vector<std::size_t> pieces;
    for (std::size_t e = 0; e < family.size(); ++e) {
      if (family[e].is_subset_of(d) && std::abs(values[e] - t0) <= out.tol) pieces.push_back(e);
    }
    out.pieces.push_back(std::move(pieces));
  }
  return out;
}

void to_json(nlohmann::json& j, const AxiomReport& r) {
  auto pairs = [](const std::vector<std::pair<std::size_t, std::size_t>>& v) {
    auto a = nlohmann::json::array();
    for (const auto& [x, y] : v) a.push_back({x, y});
    return a;
  };
  j = {{"pass", r.pass()},
       {"c_agrees_with_c_prime", r.c_agrees_with_c_prime()},
       {"a", {{"pass", r.a}, {"checked", r.checked_a}, {"violations", r.a_violations}}},
       {"b", {{"pass", r.b}, {"checked", r.checked_b}, {"violations", pairs(r.b_violations)}}},
       {"c", {{"pass", r.c}, {"checked", r.checked_c}, {"violations", pairs(r.c_violations)}}},
       {"c_prime", {{"pass", r.c_prime}, {"checked", r.checked_c_prime}, {"violations", r.c_prime_violations}}}};
}

void to_json(nlohmann::json& j, const MetricAxiomReport& r) {
  j = {{"pass", r.pass()}, {"identity", r.identity}, {"symmetry", r.symmetry}, {"triangle", r.triangle},
       {"triples", r.triples}};
  if (r.triangle_violation) j["triangle_violation"] = *r.triangle_violation;
}

void to_json(nlohmann::json& j, const ModulusRow& r) {
  j = {{"eps", r.eps}, {"delta_h_to_mu", r.delta_h_to_mu}, {"delta_mu_to_h", r.delta_mu_to_h}};
}

nlohmann::json whitney_map_to_json(const WhitneyMap& mu) {
  return {{"ambient", to_json(mu.ambient())},
          {"sequence", mu.sequence()},
          {"truncation", mu.truncation()},
          {"truncated", mu.truncated()},
          {"tail_bound", mu.tail_bound()},
          {"whole", mu.whole()}};
}

}  // namespace continuum_lab
