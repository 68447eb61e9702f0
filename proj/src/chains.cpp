#include "continuum_lab/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "continuum_lab/errors.hpp"

namespace continuum_lab {

Point2 GridFrame::center(GridCell c) const {
  const Point2 v = axis_v();
  const double s = cell_size * static_cast<double>(c.i);
  const double t = cell_size * static_cast<double>(c.j);
  return {origin.x + s * axis_u.x + t * v.x, origin.y + s * axis_u.y + t * v.y};
}

std::array<Point2, 4> GridFrame::corners(GridCell c) const {
  const Point2 m = center(c);
  const Point2 v = axis_v();
  const double h = 0.5 * cell_size;
  std::array<Point2, 4> out;
  const int su[4] = {-1, 1, 1, -1};
  const int sv[4] = {-1, -1, 1, 1};
  for (int k = 0; k < 4; ++k) {
    out[k] = {m.x + h * (su[k] * axis_u.x + sv[k] * v.x), m.y + h * (su[k] * axis_u.y + sv[k] * v.y)};
  }
  return out;
}

GridCell GridFrame::locate(Point2 p) const {
  const Point2 v = axis_v();
  const double qx = p.x - origin.x;
  const double qy = p.y - origin.y;
  const double s = (qx * axis_u.x + qy * axis_u.y) / cell_size;
  const double t = (qx * v.x + qy * v.y) / cell_size;
  return {static_cast<std::int64_t>(std::ceil(s - 0.5)), static_cast<std::int64_t>(std::ceil(t - 0.5))};
}

namespace {

struct GridPoint {
  double x, y;
};

double cross(const GridPoint& o, const GridPoint& a, const GridPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

double link_diameter(const GridFrame& frame, std::span<const GridCell> cells) {
  if (cells.empty()) return 0.0;
  std::vector<GridPoint> pts;
  pts.reserve(cells.size() * 4);
  for (const auto& c : cells) {
    const double x = static_cast<double>(c.i);
    const double y = static_cast<double>(c.j);
    pts.push_back({x - 0.5, y - 0.5});
    pts.push_back({x + 0.5, y - 0.5});
    pts.push_back({x + 0.5, y + 0.5});
    pts.push_back({x - 0.5, y + 0.5});
  }
  std::sort(pts.begin(), pts.end(),
            [](const GridPoint& a, const GridPoint& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const GridPoint& a, const GridPoint& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  // Monotone chain hull; the diameter is attained between hull vertices.
  std::vector<GridPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double best = 0.0;
  for (std::size_t a = 0; a < hull.size(); ++a) {
    for (std::size_t b = a + 1; b < hull.size(); ++b) {
      best = std::max(best, std::hypot(hull[a].x - hull[b].x, hull[a].y - hull[b].y));
    }
  }
  return best * frame.cell_size;
}

Chain make_chain(const GridFrame& frame, std::vector<std::vector<GridCell>> link_cells) {
  if (link_cells.empty()) throw DomainError("a chain needs at least one link");
  Chain chain;
  chain.frame = frame;
  for (std::size_t k = 0; k < link_cells.size(); ++k) {
    Link link{k, std::move(link_cells[k])};
    chain.mesh = std::max(chain.mesh, link_diameter(frame, link.cells));
    chain.links.push_back(std::move(link));
  }
  return chain;
}

bool link_contains_point(const Chain& chain, std::size_t link, Point2 p) {
  const GridCell c = chain.frame.locate(p);
  const auto& cells = chain.links.at(link).cells;
  return std::find(cells.begin(), cells.end(), c) != cells.end();
}

ChainReport verify_chain(const Chain& chain, double eps) {
  ChainReport report;
  const std::size_t n = chain.links.size();
  std::unordered_map<GridCell, std::vector<std::size_t>, GridCellHash> owners;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<GridCell> cells = chain.links[k].cells;
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (const auto& c : cells) owners[c].push_back(k);
  }
  std::vector<std::vector<bool>> meets(n, std::vector<bool>(n, false));
  for (const auto& [cell, ks] : owners) {
    for (std::size_t a = 0; a < ks.size(); ++a) {
      for (std::size_t b = a + 1; b < ks.size(); ++b) meets[ks[a]][ks[b]] = meets[ks[b]][ks[a]] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const bool adjacent = l - k <= 1;
      if (meets[k][l] != adjacent) report.adjacency_violations.emplace_back(k, l);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double d = link_diameter(chain.frame, chain.links[k].cells);
    report.mesh = std::max(report.mesh, d);
    if (!(d < eps)) report.mesh_violations.push_back(k);
  }
  report.pass = report.adjacency_violations.empty() && report.mesh_violations.empty();
  return report;
}

RefinementPattern abstract_pattern(std::vector<std::size_t> assignment, std::size_t n_coarse) {
  RefinementPattern p;
  p.n_coarse = n_coarse;
  p.containment.assign(assignment.size(), true);
  p.assignment = std::move(assignment);
  return p;
}

RefinementPattern expand_stays(const RefinementPattern& pattern, std::size_t sigma) {
  if (sigma == 0) throw DomainError("stay factor must be positive");
  RefinementPattern out;
  out.n_coarse = pattern.n_coarse;
  for (std::size_t i = 0; i < pattern.assignment.size(); ++i) {
    for (std::size_t s = 0; s < sigma; ++s) {
      out.assignment.push_back(pattern.assignment[i]);
      out.containment.push_back(i < pattern.containment.size() ? pattern.containment[i] : false);
    }
  }
  return out;
}

CrookedResult is_crooked(const RefinementPattern& pattern, std::size_t n_coarse) {
  const auto& p = pattern.assignment;
  const std::size_t len = p.size();
  if (pattern.containment.size() != len ||
      !std::all_of(pattern.containment.begin(), pattern.containment.end(), [](bool b) { return b; })) {
    throw PreconditionError("condition (1) does not hold: some fine link is not contained in its coarse link");
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (p[i] >= n_coarse) {
      throw PreconditionError("fine link " + std::to_string(i) + " assigned to coarse link " +
                              std::to_string(p[i]) + " of " + std::to_string(n_coarse));
    }
    if (i + 1 < len && (p[i + 1] > p[i] + 1 || p[i] > p[i + 1] + 1)) {
      throw PreconditionError("pattern jumps between non-adjacent coarse links at " + std::to_string(i));
    }
  }
  // next[v][i] = smallest index >= i with p = v, or len.
  std::vector<std::vector<std::size_t>> next(n_coarse, std::vector<std::size_t>(len + 1, len));
  for (std::size_t i = len; i-- > 0;) {
    for (std::size_t v = 0; v < n_coarse; ++v) next[v][i] = next[v][i + 1];
    next[p[i]][i] = i;
  }
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t k = p[i];
    for (std::size_t j = i + 1; j < len; ++j) {
      const std::size_t m = p[j];
      if (m < k + 3) continue;
      const std::size_t lo = next[m - 1][i + 1];
      const bool ok = lo < j && next[k + 1][lo + 1] < j;
      if (!ok) return {false, CrookedCounterexample{k, m, i, j}};
    }
  }
  return {true, std::nullopt};
}

namespace {

constexpr std::size_t kMaxGeneratedLength = std::size_t{1} << 24;

void crook(std::size_t a, std::size_t b, std::vector<std::size_t>& out) {
  if (b - a <= 2) {
    for (std::size_t v = a; v <= b; ++v) out.push_back(v);
    return;
  }
  crook(a, b - 1, out);
  for (std::size_t v = b - 2; v >= a + 2; --v) out.push_back(v);
  crook(a + 1, b, out);
}

}  // namespace

std::size_t generated_pattern_length(std::size_t n_coarse) {
  if (n_coarse <= 3) return n_coarse;
  std::size_t len = 3;
  for (std::size_t n = 4; n <= n_coarse; ++n) {
    if (len > (std::numeric_limits<std::size_t>::max() - n) / 2) return std::numeric_limits<std::size_t>::max();
    len = 2 * len + (n - 4);
  }
  return len;
}

RefinementPattern generate_crooked_pattern(std::size_t n_coarse) {
  if (n_coarse == 0) throw DomainError("n_coarse must be at least 1");
  const std::size_t len = generated_pattern_length(n_coarse);
  if (len > kMaxGeneratedLength) {
    std::size_t ok = 1;
    while (generated_pattern_length(ok + 1) <= kMaxGeneratedLength) ++ok;
    throw ResourceError("crooked pattern over " + std::to_string(n_coarse) + " links is too long to build",
                        ok);
  }
  std::vector<std::size_t> out;
  out.reserve(len);
  crook(0, n_coarse - 1, out);
  return abstract_pattern(std::move(out), n_coarse);
}

std::optional<std::vector<std::size_t>> shortest_crooked_pattern(std::size_t n_coarse,
                                                                 std::size_t max_length) {
  if (n_coarse == 0) throw DomainError("n_coarse must be at least 1");
  const std::size_t target = n_coarse - 1;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::size_t> walk{0};
    std::optional<std::vector<std::size_t>> found;
    auto search = [&](auto&& self) -> void {
      if (found) return;
      if (walk.size() == len) {
        if (walk.back() == target && is_crooked(abstract_pattern(walk, n_coarse), n_coarse).crooked) {
          found = walk;
        }
        return;
      }
      const std::size_t left = len - walk.size();
      const std::size_t cur = walk.back();
      for (int step : {-1, 0, 1}) {
        if (step < 0 && cur == 0) continue;
        const std::size_t nxt = cur + static_cast<std::size_t>(static_cast<std::ptrdiff_t>(step));
        if (nxt > target || target - nxt > left - 1) continue;
        walk.push_back(nxt);
        self(self);
        walk.pop_back();
      }
    };
    search(search);
    if (found) return found;
  }
  return std::nullopt;
}

std::size_t monotone_runs(std::span<const std::size_t> assignment) {
  std::vector<std::size_t> c;
  for (std::size_t v : assignment) {
    if (c.empty() || c.back() != v) c.push_back(v);
  }
  if (c.size() <= 1) return 1;
  std::size_t runs = 1;
  for (std::size_t i = 2; i < c.size(); ++i) {
    if ((c[i] > c[i - 1]) != (c[i - 1] > c[i - 2])) ++runs;
  }
  return runs;
}

void to_json(nlohmann::json& j, const GridCell& c) { j = nlohmann::json::array({c.i, c.j}); }

void from_json(const nlohmann::json& j, GridCell& c) {
  c.i = j.at(0).get<std::int64_t>();
  c.j = j.at(1).get<std::int64_t>();
}

void to_json(nlohmann::json& j, const GridFrame& f) {
  j = {{"origin", f.origin}, {"axis_u", f.axis_u}, {"cell_size", f.cell_size}};
}

void from_json(const nlohmann::json& j, GridFrame& f) {
  f.origin = j.at("origin").get<Point2>();
  f.axis_u = j.at("axis_u").get<Point2>();
  f.cell_size = j.at("cell_size").get<double>();
}

void to_json(nlohmann::json& j, const Chain& c) {
  auto links = nlohmann::json::array();
  for (const auto& l : c.links) links.push_back({{"id", l.id}, {"cells", l.cells}});
  j = {{"frame", c.frame}, {"links", std::move(links)}, {"mesh", c.mesh}};
}

void from_json(const nlohmann::json& j, Chain& c) {
  const GridFrame frame = j.contains("frame") ? j.at("frame").get<GridFrame>() : GridFrame{};
  std::vector<std::vector<GridCell>> cells;
  for (const auto& l : j.at("links")) cells.push_back(l.at("cells").get<std::vector<GridCell>>());
  c = make_chain(frame, std::move(cells));
}

void to_json(nlohmann::json& j, const ChainReport& r) {
  auto adj = nlohmann::json::array();
  for (const auto& [a, b] : r.adjacency_violations) adj.push_back({a, b});
  j = {{"pass", r.pass},
       {"mesh", r.mesh},
       {"adjacency_violations", std::move(adj)},
       {"mesh_violations", r.mesh_violations}};
}

void to_json(nlohmann::json& j, const RefinementPattern& p) {
  j = {{"n_coarse", p.n_coarse}, {"pattern", p.assignment}, {"length", p.assignment.size()},
       {"containment", p.containment}};
}

void from_json(const nlohmann::json& j, RefinementPattern& p) {
  p.assignment = j.at("pattern").get<std::vector<std::size_t>>();
  p.n_coarse = j.contains("n_coarse")
                   ? j.at("n_coarse").get<std::size_t>()
                   : (p.assignment.empty() ? 0 : *std::max_element(p.assignment.begin(), p.assignment.end()) + 1);
  if (j.contains("containment")) {
    p.containment = j.at("containment").get<std::vector<bool>>();
  } else {
    p.containment.assign(p.assignment.size(), true);
  }
}

void to_json(nlohmann::json& j, const CrookedResult& r) {
  j = {{"crooked", r.crooked}};
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"k", c.k}, {"m", c.m}, {"i", c.i}, {"j", c.j}};
  }
}

}  // namespace continuum_lab
