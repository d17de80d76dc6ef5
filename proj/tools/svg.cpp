#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace extcvx::svg {

namespace {

constexpr double kW = 640.0, kH = 400.0, kPad = 40.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) + "\" height=\"" + num(kH) + "\" viewBox=\"0 0 " +
         num(kW) + " " + num(kH) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string legend(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    out += "<text x=\"" + num(kPad + 4) + "\" y=\"" + num(kPad - 24 + 14.0 * i) + "\" font-size=\"12\" fill=\"" +
           kColors[i % 5] + "\">" + labels[i] + "</text>\n";
  return out;
}

}  // namespace

std::pair<double, double> plot_window(const std::vector<UpFunction>& fs) {
  double lo = kInf, hi = -kInf;
  for (const auto& f : fs) {
    if (f.is_pl())
      for (const auto& b : f.as_pl().breaks) lo = std::min(lo, b.x), hi = std::max(hi, b.x);
    const Interval d = dom(f);
    if (!d.is_empty()) {
      if (std::isfinite(d.lo)) lo = std::min(lo, d.lo), hi = std::max(hi, d.lo);
      if (std::isfinite(d.hi)) lo = std::min(lo, d.hi), hi = std::max(hi, d.hi);
    }
  }
  if (lo > hi) return {-5.0, 5.0};
  const double m = std::max(1.0, 0.25 * (hi - lo));
  return {lo - m, hi + m};
}

std::string plot_functions(const std::vector<Curve>& curves, double lo, double hi) {
  constexpr int kSamples = 400;
  double ymin = kInf, ymax = -kInf;
  std::vector<std::vector<UpReal>> vals(curves.size());
  for (std::size_t c = 0; c < curves.size(); ++c)
    for (int i = 0; i <= kSamples; ++i) {
      const UpReal v = curves[c].f(lo + (hi - lo) * i / kSamples);
      vals[c].push_back(v);
      if (v.is_finite()) ymin = std::min(ymin, v.value()), ymax = std::max(ymax, v.value());
    }
  if (ymin > ymax) ymin = -1.0, ymax = 1.0;
  if (ymax - ymin < 1e-9) ymin -= 1.0, ymax += 1.0;
  auto sx = [&](double x) { return kPad + (x - lo) / (hi - lo) * (kW - 2 * kPad); };
  auto sy = [&](double y) { return kH - kPad - (y - ymin) / (ymax - ymin) * (kH - 2 * kPad); };

  std::string out = header();
  out += "<line x1=\"" + num(kPad) + "\" y1=\"" + num(kH - kPad) + "\" x2=\"" + num(kW - kPad) + "\" y2=\"" + num(kH - kPad) +
         "\" stroke=\"#999\"/>\n";
  out += "<text x=\"" + num(kPad) + "\" y=\"" + num(kH - 12) + "\" font-size=\"11\">" + num(lo) + "</text>\n";
  out += "<text x=\"" + num(kW - kPad - 30) + "\" y=\"" + num(kH - 12) + "\" font-size=\"11\">" + num(hi) + "</text>\n";
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const std::string color = kColors[c % 5];
    labels.push_back(curves[c].label);
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) out += "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" + color + "\" points=\"" + pts + "\"/>\n";
      pts.clear();
    };
    for (int i = 0; i <= kSamples; ++i) {
      const double x = lo + (hi - lo) * i / kSamples;
      const UpReal v = vals[c][i];
      if (v.is_finite()) {
        pts += num(sx(x)) + "," + num(sy(v.value())) + " ";
      } else {
        flush();
        if (v.is_bottom())
          out += "<line x1=\"" + num(sx(x)) + "\" y1=\"" + num(kH - kPad + 6 + 4.0 * c) + "\" x2=\"" +
                 num(sx(x + (hi - lo) / kSamples)) + "\" y2=\"" + num(kH - kPad + 6 + 4.0 * c) + "\" stroke=\"" + color +
                 "\" stroke-width=\"3\"/>\n";
      }
    }
    flush();
  }
  out += legend(labels);
  out += "</svg>\n";
  return out;
}

std::string plot_regions(const std::vector<Region>& regions) {
  double b = 1.0;
  for (const auto& r : regions)
    for (const auto& p : r.poly.points()) b = std::max({b, std::abs(p.x()), std::abs(p.y())});
  b += 3.0;
  const ConvexPoly2 box = ConvexPoly2::from_h({{Vec2(1, 0), b}, {Vec2(-1, 0), b}, {Vec2(0, 1), b}, {Vec2(0, -1), b}});
  const double scale = (std::min(kW, kH) - 2 * kPad) / (2 * b);
  auto sx = [&](double x) { return kW / 2 + x * scale; };
  auto sy = [&](double y) { return kH / 2 - y * scale; };

  std::string out = header();
  out += "<line x1=\"" + num(sx(-b)) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(sx(b)) + "\" y2=\"" + num(sy(0)) +
         "\" stroke=\"#bbb\"/>\n<line x1=\"" + num(sx(0)) + "\" y1=\"" + num(sy(-b)) + "\" x2=\"" + num(sx(0)) + "\" y2=\"" +
         num(sy(b)) + "\" stroke=\"#bbb\"/>\n";
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    labels.push_back(regions[i].label + (regions[i].poly.is_empty() ? " (empty)" : ""));
    const ConvexPoly2 clipped = intersect(regions[i].poly, box);
    if (clipped.is_empty()) continue;
    std::string pts;
    for (const auto& p : clipped.points()) pts += num(sx(p.x())) + "," + num(sy(p.y())) + " ";
    const std::string color = kColors[i % 5];
    out += "<polygon points=\"" + pts + "\" fill=\"" + color + "\" fill-opacity=\"0.25\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
  }
  out += legend(labels);
  out += "</svg>\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << content;
}

}  // namespace extcvx::svg
