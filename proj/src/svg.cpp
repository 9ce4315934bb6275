#include "mtmclp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "mtmclp/errors.hpp"

namespace mtmclp {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Affine map from data coordinates to pixels (y axis flipped).
struct Viewport {
  double x0 = 0.0, y0 = 0.0, scale = 1.0, size = 800.0, margin = 20.0;

  double px(double x) const { return margin + (x - x0) * scale; }
  double py(double y) const { return size - margin - (y - y0) * scale; }
  double len(double r) const { return r * scale; }
};

// Unit sphere of an Lp norm sampled at 128 angles.
std::vector<std::pair<double, double>> lp_outline(double tau) {
  std::vector<std::pair<double, double>> out;
  for (int s = 0; s < 128; ++s) {
    const double a = 2.0 * std::numbers::pi * s / 128.0;
    const double c = std::cos(a), d = std::sin(a);
    const double r = std::pow(std::pow(std::fabs(c), tau) + std::pow(std::fabs(d), tau), -1.0 / tau);
    out.emplace_back(r * c, r * d);
  }
  return out;
}

std::string region(const Viewport& v, const Point& c, double r, const NormSpec& norm,
                   const char* style) {
  const double cx = v.px(c[0]), cy = v.py(c[1]), pr = v.len(r);
  switch (norm.kind) {
    case NormKind::L2:
      return "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(pr) + "\" " + style + "/>\n";
    case NormKind::LInf:
      return "<rect x=\"" + num(cx - pr) + "\" y=\"" + num(cy - pr) + "\" width=\"" + num(2 * pr) +
             "\" height=\"" + num(2 * pr) + "\" " + style + "/>\n";
    case NormKind::L1:
      return "<polygon points=\"" + num(cx + pr) + "," + num(cy) + " " + num(cx) + "," + num(cy - pr) + " " +
             num(cx - pr) + "," + num(cy) + " " + num(cx) + "," + num(cy + pr) + "\" " + style + "/>\n";
    case NormKind::Lp: {
      std::string pts;
      for (auto [x, y] : lp_outline(norm.tau)) {
        if (!pts.empty()) pts += ' ';
        pts += num(cx + pr * x) + "," + num(cy - pr * y);
      }
      return "<polygon points=\"" + pts + "\" " + style + "/>\n";
    }
  }
  return {};
}

}  // namespace

std::string emit_svg(const Instance& instance, const Solution& solution, const SvgOptions& options) {
  if (instance.dimension != 2) {
    throw InputError("SVG output needs planar instances (dimension is " +
                     std::to_string(instance.dimension) + ")");
  }
  const EvaluationReport ev = evaluate(instance, solution);

  double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
  auto extend = [&](const Point& p) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  };
  for (const DemandPoint& d : instance.demand) extend(d.point);
  for (const auto& cs : solution.centers) {
    for (const Point& c : cs) extend(c);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  Viewport v;
  v.size = options.size;
  v.margin = options.margin;
  v.x0 = lo_x;
  v.y0 = lo_y;
  v.scale = (options.size - 2.0 * options.margin) / span;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(v.size) +
         "\" height=\"" + num(v.size) + "\" viewBox=\"0 0 " + num(v.size) + " " + num(v.size) + "\">\n";
  out += "<title>" + escape(instance.name.empty() ? "mtmclp solution" : instance.name) + "</title>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(v.size) + "\" height=\"" + num(v.size) + "\" fill=\"white\"/>\n";

  if (options.draw_regions) {
    out += "<g id=\"regions\">\n";
    for (std::size_t t = 0; t < instance.discrete_types.size() && t < solution.assignment.open_sites.size(); ++t) {
      const DiscreteTypeSpec& spec = instance.discrete_types[t];
      for (int j : solution.assignment.open_sites[t]) {
        out += region(v, spec.sites[j], spec.radii[j], spec.norm,
                      "fill=\"green\" fill-opacity=\"0.08\" stroke=\"green\" stroke-width=\"1\"");
      }
    }
    for (std::size_t t = 0; t < instance.continuous_types.size() && t < solution.centers.size(); ++t) {
      const ContinuousTypeSpec& spec = instance.continuous_types[t];
      for (const Point& c : solution.centers[t]) {
        out += region(v, c, spec.radius, spec.norm,
                      "fill=\"blue\" fill-opacity=\"0.08\" stroke=\"blue\" stroke-width=\"1\"");
      }
    }
    out += "</g>\n";
  }

  out += "<g id=\"demand\">\n";
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Point& p = instance.demand[i].point;
    out += "<circle class=\"" + std::string(ev.covered[i] ? "covered" : "uncovered") + "\" cx=\"" +
           num(v.px(p[0])) + "\" cy=\"" + num(v.py(p[1])) + "\" r=\"3\" fill=\"" +
           (ev.covered[i] ? "red" : "gray") + "\"/>\n";
  }
  out += "</g>\n";

  out += "<g id=\"facilities\">\n";
  for (std::size_t t = 0; t < instance.discrete_types.size() && t < solution.assignment.open_sites.size(); ++t) {
    for (int j : solution.assignment.open_sites[t]) {
      const Point& s = instance.discrete_types[t].sites[j];
      out += "<rect class=\"discrete\" x=\"" + num(v.px(s[0]) - 5) + "\" y=\"" + num(v.py(s[1]) - 5) +
             "\" width=\"10\" height=\"10\" fill=\"green\"/>\n";
    }
  }
  for (const auto& cs : solution.centers) {
    for (const Point& c : cs) {
      const double x = v.px(c[0]), y = v.py(c[1]);
      out += "<polygon class=\"continuous\" points=\"" + num(x) + "," + num(y - 6) + " " + num(x - 5.5) +
             "," + num(y + 4) + " " + num(x + 5.5) + "," + num(y + 4) + "\" fill=\"blue\"/>\n";
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace mtmclp
