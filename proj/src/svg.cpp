#include "agree/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace agree {

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kMarginLeft = 56.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 44.0;

struct Frame {
  double x0, x1, y0, y1;  // data ranges
  double sx(double x) const {
    return kMarginLeft + (x - x0) / (x1 - x0) * (kWidth - kMarginLeft - kMarginRight);
  }
  double sy(double y) const {
    return kHeight - kMarginBottom -
           (y - y0) / (y1 - y0) * (kHeight - kMarginTop - kMarginBottom);
  }
};

void open_svg(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
     << kHeight << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& xlabel,
          const std::string& ylabel) {
  os << "<line x1=\"" << px(f.sx(f.x0)) << "\" y1=\"" << px(f.sy(f.y0))
     << "\" x2=\"" << px(f.sx(f.x1)) << "\" y2=\"" << px(f.sy(f.y0))
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << px(f.sx(f.x0)) << "\" y1=\"" << px(f.sy(f.y0))
     << "\" x2=\"" << px(f.sx(f.x0)) << "\" y2=\"" << px(f.sy(f.y1))
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    char xbuf[32], ybuf[32];
    std::snprintf(xbuf, sizeof xbuf, "%.2f", x);
    std::snprintf(ybuf, sizeof ybuf, "%.3g", y);
    os << "<text x=\"" << px(f.sx(x)) << "\" y=\"" << px(f.sy(f.y0) + 16.0)
       << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"black\">" << xbuf
       << "</text>\n";
    os << "<text x=\"" << px(f.sx(f.x0) - 6.0) << "\" y=\"" << px(f.sy(y) + 4.0)
       << "\" font-size=\"11\" text-anchor=\"end\" fill=\"black\">" << ybuf
       << "</text>\n";
  }
  os << "<text x=\"" << px((f.sx(f.x0) + f.sx(f.x1)) / 2.0) << "\" y=\""
     << px(kHeight - 8.0)
     << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"black\">" << xlabel
     << "</text>\n";
  os << "<text x=\"14\" y=\"" << px((f.sy(f.y0) + f.sy(f.y1)) / 2.0)
     << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"black\" "
        "transform=\"rotate(-90 14 "
     << px((f.sy(f.y0) + f.sy(f.y1)) / 2.0) << ")\">" << ylabel << "</text>\n";
}

void polyline(std::ostringstream& os, const Frame& f,
              const std::vector<std::pair<double, double>>& pts,
              const char* stroke, bool dashed) {
  if (pts.empty()) return;
  os << "<polyline fill=\"none\" stroke=\"" << stroke
     << "\" stroke-width=\"1.5\"";
  if (dashed) os << " stroke-dasharray=\"5,4\"";
  os << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << px(f.sx(pts[i].first)) << ',' << px(f.sy(pts[i].second));
  }
  os << "\"/>\n";
}

}  // namespace

std::string density_svg(const DensityPlotData& data) {
  std::ostringstream os;
  double max_mass = 0.0;
  for (double v : data.correct_mass) max_mass = std::max(max_mass, v);
  for (double v : data.mistake_mass) max_mass = std::max(max_mass, v);
  if (max_mass <= 0.0) max_mass = 1.0;

  const Frame f{0.0, 1.0, 0.0, max_mass * 1.08};
  open_svg(os);

  // H0 retention band of the benchmark
  if (!data.band.empty) {
    os << "<rect x=\"" << px(f.sx(data.band.lo)) << "\" y=\""
       << px(f.sy(f.y1)) << "\" width=\""
       << px(f.sx(data.band.hi) - f.sx(data.band.lo)) << "\" height=\""
       << px(f.sy(f.y0) - f.sy(f.y1)) << "\" fill=\"rgb(225,225,225)\"/>\n";
  }
  axes(os, f, "po = (a+d)/n", "table mass");

  std::vector<std::pair<double, double>> correct, mistake;
  const int nbins = data.nbins;
  for (int bin = 0; bin <= nbins; ++bin) {
    const double x = static_cast<double>(bin) / nbins;
    correct.push_back({x, data.correct_mass[static_cast<std::size_t>(bin)]});
    mistake.push_back({x, data.mistake_mass[static_cast<std::size_t>(bin)]});
  }
  polyline(os, f, correct, "rgb(70,70,70)", true);   // correct: dashed
  polyline(os, f, mistake, "rgb(0,0,0)", false);     // mistakes: solid

  char note[160];
  std::snprintf(note, sizeof note,
                "%s vs %s; fails %.2f%% of %lld tables", data.estimator.c_str(),
                data.benchmark.c_str(), 100.0 * data.fail_fraction,
                static_cast<long long>(data.total));
  os << "<text x=\"" << px(kMarginLeft) << "\" y=\"20\" font-size=\"13\" "
        "fill=\"black\">"
     << note << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string hexbin_svg(const HexbinPlotData& data) {
  std::ostringstream os;
  double ylo = -1.0, yhi = 1.0;
  std::int64_t max_count = 1;
  for (const HexbinPlotCell& cell : data.cells) {
    ylo = std::min(ylo, cell.y);
    yhi = std::max(yhi, cell.y);
    max_count = std::max(max_count, cell.count);
  }
  const double pad = data.hex_radius * 2.0;
  const Frame f{-1.0 - pad, 1.0 + pad, ylo - pad, yhi + pad};
  open_svg(os);
  axes(os, f, "g (benchmark)", data.estimator.c_str());

  // bisector reference line
  {
    const double lo = std::max(f.x0, f.y0);
    const double hi = std::min(f.x1, f.y1);
    if (lo < hi) {
      os << "<line x1=\"" << px(f.sx(lo)) << "\" y1=\"" << px(f.sy(lo))
         << "\" x2=\"" << px(f.sx(hi)) << "\" y2=\"" << px(f.sy(hi))
         << "\" stroke=\"rgb(150,150,150)\" stroke-dasharray=\"4,4\" "
            "stroke-width=\"1\"/>\n";
    }
  }

  const double r = data.hex_radius;
  for (const HexbinPlotCell& cell : data.cells) {
    // darker = more tables, sqrt scale
    const double frac = std::sqrt(static_cast<double>(cell.count) /
                                  static_cast<double>(max_count));
    const int shade = 235 - static_cast<int>(std::lround(215.0 * frac));
    os << "<polygon fill=\"rgb(" << shade << ',' << shade << ',' << shade
       << ")\" points=\"";
    for (int k = 0; k < 6; ++k) {
      const double ang = (60.0 * k + 30.0) * 3.14159265358979323846 / 180.0;
      const double vx = cell.x + r * std::sin(ang);
      const double vy = cell.y + r * std::cos(ang);
      if (k) os << ' ';
      os << px(f.sx(vx)) << ',' << px(f.sy(vy));
    }
    os << "\"/>\n";
  }

  char note[200];
  const double pct =
      data.total > 0
          ? 100.0 * (1.0 - static_cast<double>(data.computable) /
                               static_cast<double>(data.total))
          : 0.0;
  std::snprintf(note, sizeof note,
                "%s%s%s; %lld of %lld tables computable (%.2f%% not)",
                data.estimator.c_str(), data.filter.empty() ? "" : " | filter ",
                data.filter.c_str(), static_cast<long long>(data.computable),
                static_cast<long long>(data.total), pct);
  os << "<text x=\"" << px(kMarginLeft) << "\" y=\"20\" font-size=\"13\" "
        "fill=\"black\">"
     << note << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace agree
