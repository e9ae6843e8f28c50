#include "lorentz/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lorentz/causet_io.hpp"

namespace lorentz {

namespace {

struct Frame {
  double t_c;
  double x_c;
  double s;

  double px(double x) const { return 500.0 + (x - x_c) * 500.0 / s; }
  double py(double t) const { return 500.0 - (t - t_c) * 500.0 / s; }
  double t_lo() const { return t_c - s; }
  double t_hi() const { return t_c + s; }
  double x_lo() const { return x_c - s; }
  double x_hi() const { return x_c + s; }
};

Frame frame_of(const LensStrip& lens) {
  const double dt = std::abs(lens.q.t - lens.p.t);
  const double dx = std::abs(lens.q.x[0] - lens.p.x[0]);
  return {0.5 * (lens.p.t + lens.q.t), 0.5 * (lens.p.x[0] + lens.q.x[0]), 0.6 * std::max(dt, dx)};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string point(const Frame& f, const Event& e) { return num(f.px(e.x[0])) + " " + num(f.py(e.t)); }

}  // namespace

std::string lens_figure_svg(const LensStrip& lens) {
  if (!lens.bundle.canonical) {
    throw Error(ErrorCode::kUnsupportedBackend, "the figure draws strip lines of constant t");
  }
  const Frame f = frame_of(lens);
  const Event m = lens.lower_arc.size() == 1
                      ? lens.lower_arc.front()
                      : *solve_tau_midpoint(lens.p, lens.q, lens.space.tolerance());
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" "
        "height=\"1000\">\n";
  os << "  <defs><marker id=\"arrow\" markerWidth=\"10\" markerHeight=\"10\" refX=\"5\" refY=\"5\" "
        "orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"black\"/></marker></defs>\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";

  const double axis_x = f.px(lens.p.x[0]);
  os << "  <line id=\"t-axis\" x1=\"" << num(axis_x) << "\" y1=\"" << num(980.0) << "\" x2=\""
     << num(axis_x) << "\" y2=\"" << num(20.0)
     << "\" stroke=\"black\" stroke-dasharray=\"8 6\" marker-end=\"url(#arrow)\"/>\n";
  os << "  <text x=\"" << num(axis_x + 12.0) << "\" y=\"" << num(36.0)
     << "\" font-size=\"28\" font-style=\"italic\">T</text>\n";

  for (const auto& [id, level] : {std::pair{"strip-lower", lens.strip_lower},
                                  std::pair{"strip-upper", lens.strip_upper}}) {
    os << "  <line id=\"" << id << "\" x1=\"" << num(0.0) << "\" y1=\"" << num(f.py(level))
       << "\" x2=\"" << num(1000.0) << "\" y2=\"" << num(f.py(level))
       << "\" stroke=\"steelblue\" stroke-width=\"2\"/>\n";
  }

  os << "  <path id=\"lens\" d=\"M " << point(f, lens.lower_arc.front());
  for (std::size_t i = 1; i < lens.lower_arc.size(); ++i) os << " L " << point(f, lens.lower_arc[i]);
  for (auto it = lens.upper_arc.rbegin(); it != lens.upper_arc.rend(); ++it) {
    os << " L " << point(f, *it);
  }
  os << " Z\" fill=\"lightgray\" fill-opacity=\"0.7\" stroke=\"black\" stroke-width=\"2\"/>\n";

  for (const auto& [label, e] : {std::pair{"p", lens.p}, std::pair{"q", lens.q}, std::pair{"m", m}}) {
    os << "  <circle id=\"point-" << label << "\" cx=\"" << num(f.px(e.x[0])) << "\" cy=\""
       << num(f.py(e.t)) << "\" r=\"6\" fill=\"black\"/>\n";
    os << "  <text x=\"" << num(f.px(e.x[0]) + 12.0) << "\" y=\"" << num(f.py(e.t) - 10.0)
       << "\" font-size=\"28\" font-style=\"italic\">" << label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string lens_boundary_csv(const LensStrip& lens) {
  const Frame f = frame_of(lens);
  std::ostringstream os;
  os << "curve_id,t,x\n";
  auto row = [&](const char* id, double t, double x) {
    os << id << "," << format_double(t) << "," << format_double(x) << "\n";
  };
  for (const auto& e : lens.lower_arc) row("lens_lower", e.t, e.x[0]);
  for (const auto& e : lens.upper_arc) row("lens_upper", e.t, e.x[0]);
  row("strip_lower", lens.strip_lower, f.x_lo());
  row("strip_lower", lens.strip_lower, f.x_hi());
  row("strip_upper", lens.strip_upper, f.x_lo());
  row("strip_upper", lens.strip_upper, f.x_hi());
  return os.str();
}

}  // namespace lorentz
