#include "critport/diagram.h"

#include <cmath>
#include <cstdio>

namespace critport {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") {
    s = "0.000";
  }
  return s;
}

}  // namespace

std::string render_svg(const std::vector<AngleSet> &sets, const DiagramOptions &opts) {
  const double size = opts.size;
  const double c = size / 2;
  const double r = size * (opts.labels ? 0.40 : 0.45);
  // SVG y grows downward, so flip to keep angles counterclockwise.
  auto x_of = [&](double u) { return c + r * u; };
  auto y_of = [&](double v) { return c - r * v; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(opts.size) +
         "\" height=\"" + std::to_string(opts.size) + "\" viewBox=\"0 0 " + std::to_string(opts.size) + " " +
         std::to_string(opts.size) + "\">\n";
  out += " <circle cx=\"" + num(c) + "\" cy=\"" + num(c) + "\" r=\"" + num(r) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(opts.stroke_width) + "\"/>\n";

  for (const auto &set : sets) {
    std::vector<std::pair<double, double>> pts;
    for (const auto &t : set) {
      double a = 2 * kPi * t.to_double();
      pts.emplace_back(std::cos(a), std::sin(a));
    }
    if (pts.size() == 1) {
      out += " <circle cx=\"" + num(x_of(pts[0].first)) + "\" cy=\"" + num(y_of(pts[0].second)) + "\" r=\"" +
             num(opts.dot_radius) + "\" fill=\"black\"/>\n";
    } else if (pts.size() > 1) {
      double gx = 0;
      double gy = 0;
      for (const auto &[u, v] : pts) {
        gx += u;
        gy += v;
      }
      gx /= static_cast<double>(pts.size());
      gy /= static_cast<double>(pts.size());
      out += " <g stroke=\"black\" stroke-width=\"" + num(opts.stroke_width) + "\">\n";
      for (const auto &[u, v] : pts) {
        out += "  <line x1=\"" + num(x_of(u)) + "\" y1=\"" + num(y_of(v)) + "\" x2=\"" + num(x_of(gx)) + "\" y2=\"" +
               num(y_of(gy)) + "\"/>\n";
      }
      out += " </g>\n";
    }
    if (opts.labels) {
      for (std::size_t i = 0; i < set.size(); ++i) {
        const auto &[u, v] = pts[i];
        out += " <text x=\"" + num(c + 1.08 * r * u) + "\" y=\"" + num(c - 1.08 * r * v) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" dominant-baseline=\"central\">" +
               set[i].str() + "</text>\n";
      }
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace critport
