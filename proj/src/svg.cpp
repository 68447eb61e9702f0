#include "continuum_lab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_set>

#include "continuum_lab/errors.hpp"

namespace continuum_lab {

namespace {

struct Box {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;

  void add(Point2 p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
};

class Canvas {
 public:
  Canvas(Box box, double width) : box_(box), width_(width) {
    const double w = std::max(box.x1 - box.x0, 1e-9);
    const double h = std::max(box.y1 - box.y0, 1e-9);
    scale_ = (width - 2 * kMargin) / std::max(w, h);
    height_ = h * scale_ + 2 * kMargin;
    width_ = w * scale_ + 2 * kMargin;
    out_ << std::setprecision(6);
  }

  double x(Point2 p) const { return kMargin + (p.x - box_.x0) * scale_; }
  double y(Point2 p) const { return height_ - kMargin - (p.y - box_.y0) * scale_; }

  std::ostringstream& body() { return out_; }

  void line(Point2 a, Point2 b, const std::string& style) {
    out_ << "<line x1=\"" << x(a) << "\" y1=\"" << y(a) << "\" x2=\"" << x(b) << "\" y2=\"" << y(b) << "\" "
         << style << "/>\n";
  }

  void dot(Point2 p, double r, const std::string& style) {
    out_ << "<circle cx=\"" << x(p) << "\" cy=\"" << y(p) << "\" r=\"" << r << "\" " << style << "/>\n";
  }

  std::string finish() const {
    std::ostringstream s;
    s << std::setprecision(6) << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
      << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << out_.str() << "</svg>\n";
    return s.str();
  }

 private:
  static constexpr double kMargin = 20.0;
  Box box_;
  double width_;
  double height_ = 0.0;
  double scale_ = 1.0;
  std::ostringstream out_;
};

// Boundary edges of a union of cells, as one SVG path.
std::string link_path(const Canvas& cv, const GridFrame& f, const std::vector<GridCell>& cells) {
  std::unordered_set<GridCell, GridCellHash> in(cells.begin(), cells.end());
  std::ostringstream d;
  d << std::setprecision(6);
  const std::int64_t di[4] = {1, 0, -1, 0};
  const std::int64_t dj[4] = {0, 1, 0, -1};
  // Corner pairs of the cell square facing each neighbour direction.
  const int ca[4] = {1, 2, 3, 0};
  const int cb[4] = {2, 3, 0, 1};
  for (const auto& c : in) {
    const auto corners = f.corners(c);
    for (int k = 0; k < 4; ++k) {
      if (in.count({c.i + di[k], c.j + dj[k]})) continue;
      const Point2 a = corners[ca[k]];
      const Point2 b = corners[cb[k]];
      d << "M" << cv.x(a) << " " << cv.y(a) << "L" << cv.x(b) << " " << cv.y(b);
    }
  }
  return d.str();
}

}  // namespace

std::string chains_svg(const std::vector<Chain>& levels) {
  if (levels.empty()) throw DomainError("nothing to draw");
  Box box;
  for (const auto& chain : levels) {
    for (const auto& link : chain.links) {
      for (const auto& c : link.cells) {
        for (const auto& p : chain.frame.corners(c)) box.add(p);
      }
    }
  }
  Canvas cv(box, 900.0);
  const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const double opacity = 0.25 + 0.75 * static_cast<double>(n + 1) / static_cast<double>(levels.size());
    const double width = 2.0 / static_cast<double>(n + 1);
    for (const auto& link : levels[n].links) {
      cv.body() << "<path d=\"" << link_path(cv, levels[n].frame, link.cells) << "\" fill=\"none\" stroke=\""
                << colours[n % 5] << "\" stroke-opacity=\"" << opacity << "\" stroke-width=\"" << width
                << "\"><title>level " << n + 1 << " link " << link.id << "</title></path>\n";
    }
  }
  return cv.finish();
}

std::string tower_svg(const ChainTower& tower) {
  std::string svg = chains_svg(tower.levels);
  return svg;
}

std::string continuum_svg(const GraphContinuum& g) {
  Box box;
  for (const auto& p : g.vertices()) box.add(p);
  Canvas cv(box, 600.0);
  for (const auto& [a, b] : g.edges()) cv.line(g.vertices()[a], g.vertices()[b], "stroke=\"#333\" stroke-width=\"1.5\"");
  for (const auto& p : g.vertices()) cv.dot(p, 3.0, "fill=\"#1f77b4\"");
  return cv.finish();
}

std::string hyperspace_svg(ContinuumKind kind, std::size_t samples) {
  if (samples < 2) throw DomainError("need at least two samples per side");
  const double s = static_cast<double>(samples - 1);
  if (kind == ContinuumKind::interval) {
    Box box;
    box.add({0.0, 0.0});
    box.add({1.0, 1.0});
    Canvas cv(box, 600.0);
    cv.line({0, 0}, {1, 0}, "stroke=\"#999\"");
    cv.line({0, 0}, {0.5, 1}, "stroke=\"#999\"");
    cv.line({1, 0}, {0.5, 1}, "stroke=\"#999\"");
    for (std::size_t i = 0; i < samples; ++i) {
      for (std::size_t j = i; j < samples; ++j) {
        const Point2 p = triangle_map(static_cast<double>(i) / s, static_cast<double>(j) / s);
        cv.dot(p, 2.0, i == j ? "fill=\"#d62728\"" : "fill=\"#1f77b4\"");
      }
    }
    return cv.finish();
  }
  if (kind == ContinuumKind::cycle) {
    Box box;
    box.add({-1.0, -1.0});
    box.add({1.0, 1.0});
    Canvas cv(box, 600.0);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < samples; ++i) {
      const double alpha = two_pi * static_cast<double>(i) / s;
      for (std::size_t j = 0; j < samples; ++j) {
        const double len = two_pi * static_cast<double>(j) / s;
        cv.dot(disk_map(alpha, alpha + len), 1.5, j == 0 ? "fill=\"#d62728\"" : "fill=\"#1f77b4\"");
      }
    }
    return cv.finish();
  }
  throw DomainError("hyperspace figures exist for the interval and the circle");
}

std::string psi_svg(const PsiHyperspace& h) {
  const std::size_t m = h.model.m;
  const double l = *std::min_element(h.fiber_raw.begin(), h.fiber_raw.end());
  const double top = h.top();
  std::vector<Point2> pos(h.elements.size());
  const auto disk = ample_disk_points(h);
  std::size_t ample = 0;
  const std::size_t k = h.model.links_per_fiber();
  for (std::size_t e = 0; e < h.elements.size(); ++e) {
    const auto& el = h.elements[e];
    if (!el.is_piece()) {
      pos[e] = disk[ample++];
      continue;
    }
    // Fans hang outside the Planck ring; smaller pieces sit further out.
    const double fv = h.values[h.full_fiber(el.fiber)];
    const double depth = 1.0 + 0.8 * (1.0 - h.values[e] / fv);
    const double th = 2.0 * std::numbers::pi * static_cast<double>(el.fiber) / static_cast<double>(m) +
                      0.5 * (static_cast<double>(el.first + el.last) / (2.0 * static_cast<double>(k - 1)) - 0.5);
    pos[e] = {depth * std::cos(th), depth * std::sin(th)};
  }
  Box box;
  for (const auto& p : pos) box.add(p);
  Canvas cv(box, 800.0);
  for (std::size_t e = 0; e < h.elements.size(); ++e) {
    for (std::size_t up : h.covers_up[e]) {
      const bool fil = h.elements[e].is_piece() && h.elements[up].is_piece();
      cv.line(pos[e], pos[up], fil ? "stroke=\"#2ca02c\" stroke-width=\"0.6\"" : "stroke=\"#888\" stroke-width=\"0.8\"");
    }
  }
  for (std::size_t e = 0; e < h.elements.size(); ++e) {
    const auto& el = h.elements[e];
    std::string style = "fill=\"#1f77b4\"";
    double r = 2.5;
    if (el.is_piece()) {
      style = "fill=\"#2ca02c\"";
      r = 1.8;
    } else if (el.is_full_fiber()) {
      style = "fill=\"#d62728\"";
      r = 5.0;
    }
    cv.body() << "<g><title>element " << e << " value " << h.values[e] << "</title>";
    cv.dot(pos[e], r, style);
    cv.body() << "</g>\n";
  }
  cv.body() << "<!-- l=" << l << " top=" << top << " -->\n";
  return cv.finish();
}

}  // namespace continuum_lab
