#include "continuum_lab/nerve.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "continuum_lab/metric_core.hpp"

namespace continuum_lab {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Rank over GF(2) of the boundary map from triangles to edges, by column
// reduction of sparse columns.
std::size_t boundary_rank(const std::vector<std::vector<std::size_t>>& columns) {
  std::map<std::size_t, std::vector<std::size_t>> by_pivot;
  std::size_t rank = 0;
  for (auto col : columns) {
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      const auto it = by_pivot.find(col.back());
      if (it == by_pivot.end()) break;
      std::vector<std::size_t> sum;
      std::set_symmetric_difference(col.begin(), col.end(), it->second.begin(), it->second.end(),
                                    std::back_inserter(sum));
      col = std::move(sum);
    }
    if (!col.empty()) {
      by_pivot.emplace(col.back(), std::move(col));
      ++rank;
    }
  }
  return rank;
}

}  // namespace

NerveSummary proximity_nerve(const std::vector<std::vector<double>>& dist, double eps) {
  NerveSummary s;
  const std::size_t n = dist.size();
  s.vertices = n;
  s.eps = eps;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  std::vector<std::vector<std::size_t>> edge_id(n, std::vector<std::size_t>(n, 0));
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i][j] <= eps + kTolerance) {
        adj[i][j] = adj[j][i] = true;
        edge_id[i][j] = edge_id[j][i] = s.edges++;
        parent[find_root(parent, i)] = find_root(parent, j);
      }
    }
  }
  std::vector<std::size_t> label(n, n);
  s.component_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find_root(parent, i);
    if (label[r] == n) label[r] = s.components++;
    s.component_of[i] = label[r];
  }
  std::vector<std::vector<std::size_t>> columns;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!adj[i][j]) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (adj[i][k] && adj[j][k]) columns.push_back({edge_id[i][j], edge_id[i][k], edge_id[j][k]});
      }
    }
  }
  s.triangles = columns.size();
  const std::size_t cycles = s.edges + s.components - n;
  s.betti1 = cycles - boundary_rank(columns);
  return s;
}

double connectivity_threshold(const std::vector<std::vector<double>>& dist, std::span<const std::size_t> items) {
  const std::size_t n = items.size();
  if (n < 2) return 0.0;
  // Prim's algorithm; the answer is the largest edge used.
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> done(n, false);
  best[0] = 0.0;
  double worst = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && (u == n || best[v] < best[u])) u = v;
    }
    done[u] = true;
    worst = std::max(worst, best[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v]) best[v] = std::min(best[v], dist[items[u]][items[v]]);
    }
  }
  return worst;
}

void to_json(nlohmann::json& j, const NerveSummary& s) {
  j = {{"vertices", s.vertices}, {"edges", s.edges},   {"triangles", s.triangles}, {"components", s.components},
       {"betti1", s.betti1},     {"eps", s.eps},       {"cyclic", s.cyclic()}};
}

}  // namespace continuum_lab
