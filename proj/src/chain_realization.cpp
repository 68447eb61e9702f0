#include "continuum_lab/chain_realization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "continuum_lab/errors.hpp"

namespace continuum_lab {

Chain to_chain(const SnakeChain& s) {
  std::vector<std::vector<GridCell>> cells;
  cells.reserve(s.links.size());
  for (const auto& [first, last] : s.links) {
    cells.emplace_back(s.snake.begin() + static_cast<std::ptrdiff_t>(first),
                       s.snake.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  }
  return make_chain(s.frame, std::move(cells));
}

std::vector<std::vector<Point2>> link_point_sets(const Chain& chain) {
  std::vector<std::vector<Point2>> out;
  for (const auto& link : chain.links) {
    std::vector<Point2> pts;
    pts.reserve(link.cells.size());
    for (const auto& c : link.cells) pts.push_back(chain.frame.center(c));
    out.push_back(std::move(pts));
  }
  return out;
}

SnakeChain straight_snake(std::size_t n_links, std::size_t end_cells, std::size_t overlap,
                          std::size_t private_cells, const GridFrame& frame) {
  if (n_links == 0) throw DomainError("a chain needs at least one link");
  if (end_cells == 0 || overlap == 0 || private_cells == 0) {
    throw DomainError("layout cell counts must be positive");
  }
  SnakeChain s;
  s.frame = frame;
  std::size_t total = 0;
  if (n_links == 1) {
    total = end_cells;
    s.links.emplace_back(0, total - 1);
  } else {
    total = 2 * end_cells + (n_links - 1) * overlap + (n_links - 2) * private_cells;
    s.links.emplace_back(0, end_cells + overlap - 1);
    for (std::size_t k = 1; k < n_links; ++k) {
      const std::size_t first = end_cells + (k - 1) * (overlap + private_cells);
      const std::size_t len = (k + 1 == n_links) ? overlap + end_cells : 2 * overlap + private_cells;
      s.links.emplace_back(first, first + len - 1);
    }
  }
  for (std::size_t i = 0; i < total; ++i) s.snake.push_back({static_cast<std::int64_t>(i), 0});
  return s;
}

SnakeChain realize_planar(std::size_t n_links, std::size_t resolution) {
  if (resolution < 3) {
    throw ResourceError("resolution " + std::to_string(resolution) +
                            " cannot separate overlaps from private cells (need at least 3)",
                        0);
  }
  const std::size_t overlap = std::max<std::size_t>(1, resolution / 4);
  const std::size_t priv = resolution - 2 * overlap;
  const std::size_t end = resolution - overlap;
  const double h = 1.0 / static_cast<double>(resolution);
  GridFrame frame{{0.5 * h, 0.5 * h}, {1.0, 0.0}, h};
  if (n_links == 1) return straight_snake(1, resolution, 1, 1, frame);
  return straight_snake(n_links, end, overlap, priv, frame);
}

std::size_t required_refinement_factor(std::span<const std::size_t> assignment) {
  return 2 * monotone_runs(assignment) + 1;
}

namespace {

struct Dir {
  std::int64_t i = 0;
  std::int64_t j = 0;

  bool operator==(const Dir&) const = default;
  Dir left() const { return {-j, i}; }
  Dir operator-() const { return {-i, -j}; }
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct CellFrames {
  std::vector<Dir> din, dout;
};

CellFrames cell_frames(const std::vector<GridCell>& snake) {
  const std::size_t m = snake.size();
  CellFrames f;
  f.din.resize(m);
  f.dout.resize(m);
  auto step = [&](std::size_t a) {
    const Dir d{snake[a + 1].i - snake[a].i, snake[a + 1].j - snake[a].j};
    if (std::abs(d.i) + std::abs(d.j) != 1) {
      throw DomainError("snake cells " + std::to_string(a) + " and " + std::to_string(a + 1) +
                        " are not 4-adjacent");
    }
    return d;
  };
  if (m == 1) {
    f.din[0] = f.dout[0] = {1, 0};
    return f;
  }
  for (std::size_t a = 0; a + 1 < m; ++a) f.dout[a] = step(a);
  f.din[0] = f.dout[0];
  for (std::size_t a = 1; a < m; ++a) f.din[a] = f.dout[a - 1];
  f.dout[m - 1] = f.din[m - 1];
  return f;
}

// Fine cell at local coordinates (a along the entry direction, b from the left
// edge) inside coarse cell `cell`.
GridCell local_cell(GridCell cell, Dir din, std::int64_t f, std::int64_t a, std::int64_t b) {
  const std::int64_t c = (f - 1) / 2;
  const Dir l = din.left();
  return {f * cell.i + (a - c) * din.i + (c - b) * l.i, f * cell.j + (a - c) * din.j + (c - b) * l.j};
}

struct Lane {
  std::vector<GridCell> cells;
  std::vector<std::size_t> start;  // start[s] = first position inside coarse cell s
};

Lane build_lane(const SnakeChain& coarse, const CellFrames& fr, std::int64_t f, std::int64_t lane) {
  Lane out;
  const std::size_t m = coarse.snake.size();
  out.start.resize(m + 1);
  for (std::size_t s = 0; s < m; ++s) {
    out.start[s] = out.cells.size();
    const GridCell cell = coarse.snake[s];
    const Dir din = fr.din[s];
    const Dir dout = fr.dout[s];
    if (dout == din) {
      for (std::int64_t a = 0; a < f; ++a) out.cells.push_back(local_cell(cell, din, f, a, lane));
    } else if (dout == din.left()) {
      for (std::int64_t a = 0; a <= lane; ++a) out.cells.push_back(local_cell(cell, din, f, a, lane));
      for (std::int64_t b = lane - 1; b >= 0; --b) out.cells.push_back(local_cell(cell, din, f, lane, b));
    } else if (dout == -din.left()) {
      const std::int64_t turn = f - 1 - lane;
      for (std::int64_t a = 0; a <= turn; ++a) out.cells.push_back(local_cell(cell, din, f, a, lane));
      for (std::int64_t b = lane + 1; b < f; ++b) out.cells.push_back(local_cell(cell, din, f, turn, b));
    } else {
      throw DomainError("snake reverses direction at cell " + std::to_string(s));
    }
  }
  out.start[m] = out.cells.size();
  return out;
}

void check_pattern_shape(std::span<const std::size_t> p, std::size_t n) {
  if (p.empty()) throw DomainError("refinement pattern is empty");
  if (p.front() != 0 || p.back() != n - 1) {
    throw DomainError("pattern must start in the first and end in the last coarse link");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= n) throw DomainError("pattern refers to a coarse link outside the chain");
    if (i + 1 < p.size() && (p[i + 1] > p[i] + 1 || p[i] > p[i + 1] + 1)) {
      throw DomainError("pattern jumps between non-adjacent coarse links at " + std::to_string(i));
    }
  }
  std::size_t i = 0;
  while (i < p.size() && p[i] == 0) ++i;
  for (std::size_t k = i; k < p.size(); ++k) {
    if (p[k] == 0) throw DomainError("pattern returns to the first coarse link");
  }
  std::size_t e = p.size();
  while (e > 0 && p[e - 1] == n - 1) --e;
  for (std::size_t k = 0; k < e; ++k) {
    if (p[k] == n - 1 && n > 1) throw DomainError("pattern visits the last coarse link early");
  }
}

}  // namespace

GridCell parent_cell(GridCell fine, std::size_t factor) {
  const auto f = static_cast<std::int64_t>(factor);
  const std::int64_t c = (f - 1) / 2;
  return {floor_div(fine.i + c, f), floor_div(fine.j + c, f)};
}

Refinement refine_snake(const SnakeChain& coarse, std::span<const std::size_t> assignment,
                        std::size_t factor) {
  const std::size_t n = coarse.links.size();
  const std::size_t m = coarse.snake.size();
  check_pattern_shape(assignment, n);
  const std::size_t runs = monotone_runs(assignment);
  const std::size_t needed = 2 * runs + 1;
  if (factor < needed || factor % 2 == 0) {
    throw ResourceError("refinement factor " + std::to_string(factor) + " is too small for " +
                            std::to_string(runs) + " folds; need an odd factor of at least " +
                            std::to_string(needed),
                        0);
  }
  const auto f = static_cast<std::int64_t>(factor);
  const std::int64_t c = (f - 1) / 2;
  const CellFrames fr = cell_frames(coarse.snake);
  if (!(fr.din[0] == fr.dout[0]) || !(fr.din[m - 1] == fr.dout[m - 1])) {
    throw DomainError("snake must start and end with straight cells");
  }

  std::vector<Lane> lanes;
  for (std::size_t r = 0; r < runs; ++r) {
    lanes.push_back(build_lane(coarse, fr, f, static_cast<std::int64_t>(2 * r + 1)));
  }

  std::vector<GridCell> walk;
  auto push = [&](GridCell g) { walk.push_back(g); };

  std::size_t run = 0;
  int dir = +1;
  // Entry: from the centre of the first cell sideways onto lane 1.
  for (std::int64_t b = c; b >= 1; --b) push(local_cell(coarse.snake[0], fr.din[0], f, c, b));
  std::size_t pos = lanes[0].start[0] + static_cast<std::size_t>(c);

  auto advance = [&](std::size_t target) {
    const Lane& lane = lanes[run];
    if (dir > 0) {
      if (target < pos) throw std::logic_error("lane walk moves against its run direction");
      while (pos < target) push(lane.cells[++pos]);
    } else {
      if (target > pos) throw std::logic_error("lane walk moves against its run direction");
      while (pos > target) push(lane.cells[--pos]);
    }
  };

  const std::size_t nfine = assignment.size();
  std::vector<std::optional<std::size_t>> boundary(nfine > 0 ? nfine - 1 : 0);
  std::size_t prev_zone_lo = 0, prev_zone_hi = 0;
  for (std::size_t b = 0; b + 1 < nfine; ++b) {
    const std::size_t p0 = assignment[b];
    const std::size_t p1 = assignment[b + 1];
    if (p0 == p1) continue;
    const int d = p1 > p0 ? +1 : -1;
    if (d != dir) {
      // Fold inside link p0 beyond the zone just crossed.
      const auto [first, last] = coarse.links[p0];
      std::optional<std::size_t> fold;
      if (dir > 0) {
        for (std::size_t s = prev_zone_hi + 1; s <= last && !fold; ++s) {
          if (fr.din[s] == fr.dout[s]) fold = s;
        }
      } else {
        for (std::size_t s = prev_zone_lo; s-- > first && !fold;) {
          if (fr.din[s] == fr.dout[s]) fold = s;
        }
      }
      if (!fold) {
        throw ResourceError("no straight cell to fold in inside coarse link " + std::to_string(p0), 0);
      }
      if (run + 1 >= runs) throw std::logic_error("fold count exceeds monotone runs");
      advance(lanes[run].start[*fold] + static_cast<std::size_t>(c));
      const auto lane = static_cast<std::int64_t>(2 * run + 1);
      push(local_cell(coarse.snake[*fold], fr.din[*fold], f, c, lane + 1));
      ++run;
      dir = -dir;
      pos = lanes[run].start[*fold] + static_cast<std::size_t>(c);
      push(lanes[run].cells[pos]);
    }
    const std::size_t z0 = std::max(coarse.links[p0].first, coarse.links[p1].first);
    const std::size_t z1 = std::min(coarse.links[p0].second, coarse.links[p1].second);
    if (z0 > z1) throw DomainError("coarse links " + std::to_string(p0) + " and " + std::to_string(p1) +
                                   " do not overlap");
    const std::size_t lo = lanes[run].start[z0] + 1;
    const std::size_t hi = lanes[run].start[z1 + 1] - 2;
    if (lo > hi) throw ResourceError("overlap zone too thin to anchor a link boundary", 0);
    advance(lo + (hi - lo) / 2);
    boundary[b] = walk.size() - 1;
    prev_zone_lo = z0;
    prev_zone_hi = z1;
  }
  if (dir < 0 || run + 1 != runs) throw std::logic_error("pattern does not end on its last run");
  advance(lanes[run].start[m - 1] + static_cast<std::size_t>(c));
  const auto last_lane = static_cast<std::int64_t>(2 * run + 1);
  if (last_lane > c) {
    for (std::int64_t b = last_lane - 1; b >= c; --b) push(local_cell(coarse.snake[m - 1], fr.din[m - 1], f, c, b));
  } else {
    for (std::int64_t b = last_lane + 1; b <= c; ++b) push(local_cell(coarse.snake[m - 1], fr.din[m - 1], f, c, b));
  }

  // Spread boundaries between repeated entries evenly between their anchors.
  std::vector<std::size_t> w(nfine + 1);
  w[0] = 0;
  w[nfine] = walk.size() - 1;
  for (std::size_t b = 0; b + 1 < nfine; ++b) {
    if (boundary[b]) w[b + 1] = *boundary[b];
  }
  std::size_t known = 0;
  for (std::size_t b = 1; b <= nfine; ++b) {
    if (b < nfine && !boundary[b - 1]) continue;
    const std::size_t q = b - known - 1;
    const std::size_t span = w[b] - w[known];
    if (span < q + 1) throw ResourceError("not enough cells to separate repeated links", 0);
    for (std::size_t t = 1; t <= q; ++t) {
      w[known + t] = w[known] + static_cast<std::size_t>(std::llround(static_cast<double>(t * span) /
                                                                       static_cast<double>(q + 1)));
    }
    known = b;
  }

  Refinement out;
  out.factor = factor;
  out.fine.frame = coarse.frame;
  out.fine.frame.cell_size = coarse.frame.cell_size / static_cast<double>(factor);
  out.fine.snake = std::move(walk);
  for (std::size_t i = 0; i < nfine; ++i) out.fine.links.emplace_back(w[i], w[i + 1]);

  std::unordered_set<GridCell, GridCellHash> seen;
  for (std::size_t a = 0; a < out.fine.snake.size(); ++a) {
    if (!seen.insert(out.fine.snake[a]).second) throw std::logic_error("refined walk is not simple");
    if (a > 0) {
      const auto& p = out.fine.snake[a - 1];
      const auto& q = out.fine.snake[a];
      if (std::abs(p.i - q.i) + std::abs(p.j - q.j) != 1) throw std::logic_error("refined walk is not 4-connected");
    }
  }

  out.pattern.n_coarse = n;
  out.pattern.assignment.assign(assignment.begin(), assignment.end());
  std::vector<std::unordered_set<GridCell, GridCellHash>> coarse_cells(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = coarse.links[k].first; s <= coarse.links[k].second; ++s) {
      coarse_cells[k].insert(coarse.snake[s]);
    }
  }
  for (std::size_t i = 0; i < nfine; ++i) {
    bool inside = true;
    const auto& cells = coarse_cells[assignment[i]];
    for (std::size_t a = out.fine.links[i].first; a <= out.fine.links[i].second && inside; ++a) {
      const GridCell g = out.fine.snake[a];
      for (std::int64_t di = -1; di <= 1 && inside; ++di) {
        for (std::int64_t dj = -1; dj <= 1 && inside; ++dj) {
          inside = cells.count(parent_cell({g.i + di, g.j + dj}, factor)) > 0;
        }
      }
    }
    out.pattern.containment.push_back(inside);
  }
  return out;
}

namespace {

std::vector<GridCell> coarse_union_subcells(const SnakeChain& coarse, std::size_t factor) {
  std::vector<GridCell> cells = coarse.snake;
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  const auto f = static_cast<std::int64_t>(factor);
  const std::int64_t c = (f - 1) / 2;
  std::vector<GridCell> out;
  out.reserve(cells.size() * factor * factor);
  for (const auto& g : cells) {
    for (std::int64_t a = -c; a <= c; ++a) {
      for (std::int64_t b = -c; b <= c; ++b) out.push_back({f * g.i + a, f * g.j + b});
    }
  }
  return out;
}

// 1-D squared distance transform (Felzenszwalb and Huttenlocher).
void edt_1d(std::vector<double>& fvals) {
  const std::size_t n = fvals.size();
  std::vector<double> d(n), z(n + 1);
  std::vector<std::size_t> v(n);
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  std::size_t first = n;
  for (std::size_t q = 0; q < n; ++q) {
    if (fvals[q] < inf) {
      first = q;
      break;
    }
  }
  if (first == n) return;
  v[0] = first;
  z[0] = -inf;
  z[1] = inf;
  for (std::size_t q = first + 1; q < n; ++q) {
    if (fvals[q] == inf) continue;
    const double qd = static_cast<double>(q);
    double s = 0;
    while (true) {
      const double vk = static_cast<double>(v[k]);
      s = ((fvals[q] + qd * qd) - (fvals[v[k]] + vk * vk)) / (2 * qd - 2 * vk);
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    if (s <= z[k]) {
      v[k] = q;
      z[k + 1] = inf;
    } else {
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = inf;
    }
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const double qd = static_cast<double>(q);
    while (z[k + 1] < qd) ++k;
    const double dv = qd - static_cast<double>(v[k]);
    d[q] = dv * dv + fvals[v[k]];
  }
  fvals = std::move(d);
}

}  // namespace

double grid_hausdorff(const SnakeChain& coarse, const SnakeChain& fine, std::size_t factor) {
  const auto a = coarse_union_subcells(coarse, factor);
  std::int64_t i0 = std::numeric_limits<std::int64_t>::max(), j0 = i0;
  std::int64_t i1 = std::numeric_limits<std::int64_t>::min(), j1 = i1;
  for (const auto& g : a) {
    i0 = std::min(i0, g.i);
    i1 = std::max(i1, g.i);
    j0 = std::min(j0, g.j);
    j1 = std::max(j1, g.j);
  }
  const auto w = static_cast<std::size_t>(i1 - i0 + 1);
  const auto h = static_cast<std::size_t>(j1 - j0 + 1);
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> grid(w * h, inf);
  for (const auto& g : fine.snake) {
    if (g.i < i0 || g.i > i1 || g.j < j0 || g.j > j1) {
      throw DomainError("fine chain leaves the coarse union; closures are not nested");
    }
    grid[static_cast<std::size_t>(g.i - i0) * h + static_cast<std::size_t>(g.j - j0)] = 0.0;
  }
  std::vector<double> line;
  for (std::size_t x = 0; x < w; ++x) {
    line.assign(grid.begin() + static_cast<std::ptrdiff_t>(x * h), grid.begin() + static_cast<std::ptrdiff_t>((x + 1) * h));
    edt_1d(line);
    std::copy(line.begin(), line.end(), grid.begin() + static_cast<std::ptrdiff_t>(x * h));
  }
  line.resize(w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) line[x] = grid[x * h + y];
    edt_1d(line);
    for (std::size_t x = 0; x < w; ++x) grid[x * h + y] = line[x];
  }
  double worst = 0.0;
  for (const auto& g : a) {
    worst = std::max(worst, grid[static_cast<std::size_t>(g.i - i0) * h + static_cast<std::size_t>(g.j - j0)]);
  }
  return std::sqrt(worst) * fine.frame.cell_size;
}

double grid_hausdorff_brute(const SnakeChain& coarse, const SnakeChain& fine, std::size_t factor) {
  std::vector<Point2> a, b;
  for (const auto& g : coarse_union_subcells(coarse, factor)) a.push_back(fine.frame.center(g));
  for (const auto& g : fine.snake) b.push_back(fine.frame.center(g));
  return hausdorff_distance(a, b).value;
}

namespace {

constexpr std::size_t kEndCells = 6;
constexpr std::size_t kOverlapCells = 3;
constexpr std::size_t kPrivateCells = 2;
constexpr std::size_t kMaxStayFactor = 4;

bool endpoints_ok(const Chain& chain, Point2 x, Point2 y) {
  return link_contains_point(chain, 0, x) && link_contains_point(chain, chain.links.size() - 1, y);
}

}  // namespace

ChainTower build_tower(std::size_t n_coarse_initial, std::size_t levels, Point2 x, Point2 y,
                       const TowerOptions& options) {
  if (levels == 0) throw DomainError("a tower needs at least one level");
  if (n_coarse_initial == 0) throw DomainError("the first chain needs at least one link");
  const double dist = euclidean(x, y);
  if (!(dist > 0.0)) throw DomainError("tower endpoints must differ");
  if (levels > options.max_levels) {
    throw ResourceError("at most " + std::to_string(options.max_levels) + " tower levels are allowed",
                        options.max_levels);
  }

  ChainTower tower;
  tower.x = x;
  tower.y = y;
  GridFrame frame;
  frame.origin = x;
  frame.axis_u = {(y.x - x.x) / dist, (y.y - x.y) / dist};
  SnakeChain first = straight_snake(n_coarse_initial, kEndCells, kOverlapCells, kPrivateCells, frame);
  first.frame.cell_size = dist / static_cast<double>(first.snake.size() - 1);
  Chain c1 = to_chain(first);
  if (c1.mesh > 0.5) {
    throw DomainError("first chain has mesh " + std::to_string(c1.mesh) +
                      " > 1/2; use more links or closer endpoints");
  }
  TowerLevelDiagnostics d1;
  d1.links = c1.links.size();
  d1.mesh = c1.mesh;
  d1.mesh_bound = 0.5;
  d1.endpoints_in_end_links = endpoints_ok(c1, x, y);
  tower.realizations.push_back(std::move(first));
  tower.levels.push_back(std::move(c1));
  tower.diagnostics.push_back(d1);

  for (std::size_t level = 2; level <= levels; ++level) {
    const SnakeChain& coarse = tower.realizations.back();
    const std::size_t n = coarse.links.size();
    const std::size_t achieved = level - 1;
    const std::size_t base_len = generated_pattern_length(n);
    if (base_len > options.max_links) {
      throw ResourceError("level " + std::to_string(level) + " needs a crooked pattern over " +
                              std::to_string(n) + " links, beyond the " +
                              std::to_string(options.max_links) + "-link cap; achievable levels: " +
                              std::to_string(achieved),
                          achieved);
    }
    const RefinementPattern base = generate_crooked_pattern(n);
    const std::size_t factor = required_refinement_factor(base.assignment);
    const std::size_t estimate = monotone_runs(base.assignment) * coarse.snake.size() * factor;
    if (estimate > options.max_cells) {
      throw ResourceError("level " + std::to_string(level) + " needs about " + std::to_string(estimate) +
                              " grid cells; achievable levels: " + std::to_string(achieved),
                          achieved);
    }
    const double bound = std::ldexp(1.0, -static_cast<int>(level));
    std::optional<Refinement> chosen;
    std::size_t sigma = 1;
    for (; sigma <= kMaxStayFactor; ++sigma) {
      if (base_len * sigma > options.max_links) break;
      const RefinementPattern p = expand_stays(base, sigma);
      Refinement r = refine_snake(coarse, p.assignment, factor);
      if (to_chain(r.fine).mesh <= bound) {
        chosen = std::move(r);
        break;
      }
    }
    if (!chosen) {
      throw ResourceError("level " + std::to_string(level) + " cannot reach mesh " + std::to_string(bound) +
                              "; achievable levels: " + std::to_string(achieved),
                          achieved);
    }
    tower.diagnostics.back().hausdorff_to_next = grid_hausdorff(coarse, chosen->fine, factor);
    Chain chain = to_chain(chosen->fine);
    TowerLevelDiagnostics d;
    d.links = chain.links.size();
    d.mesh = chain.mesh;
    d.mesh_bound = bound;
    d.endpoints_in_end_links = endpoints_ok(chain, x, y);
    d.stay_factor = sigma;
    d.refinement_factor = factor;
    d.nested_in_previous = std::all_of(chosen->pattern.containment.begin(), chosen->pattern.containment.end(),
                                       [](bool b) { return b; });
    d.crooked_in_previous = d.nested_in_previous && is_crooked(chosen->pattern, n).crooked;
    tower.patterns.push_back(chosen->pattern);
    tower.realizations.push_back(std::move(chosen->fine));
    tower.levels.push_back(std::move(chain));
    tower.diagnostics.push_back(d);
  }
  return tower;
}

void to_json(nlohmann::json& j, const TowerLevelDiagnostics& d) {
  j = {{"links", d.links},
       {"mesh", d.mesh},
       {"mesh_bound", d.mesh_bound},
       {"endpoints_in_end_links", d.endpoints_in_end_links},
       {"stay_factor", d.stay_factor},
       {"refinement_factor", d.refinement_factor},
       {"nested_in_previous", d.nested_in_previous},
       {"crooked_in_previous", d.crooked_in_previous}};
  j["hausdorff_to_next"] = d.hausdorff_to_next ? nlohmann::json(*d.hausdorff_to_next) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const ChainTower& t) {
  j = {{"endpoints", {t.x, t.y}}, {"levels", t.levels}, {"patterns", t.patterns}, {"diagnostics", t.diagnostics}};
}

}  // namespace continuum_lab
