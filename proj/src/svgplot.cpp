#include "oscdecay/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oscdecay {

namespace {

struct Mapper {
  double x0, x1, y0, y1;      // data ranges (log10)
  double px0, px1, py0, py1;  // pixel box

  double X(double lx) const { return px0 + (lx - x0) / (x1 - x0) * (px1 - px0); }
  double Y(double ly) const { return py1 - (ly - y0) / (y1 - y0) * (py1 - py0); }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string svg_loglog_plot(const DecayFitResult& fit, double predicted_exponent,
                            const std::string& title) {
  const int W = 640, H = 480;
  Mapper m{0, 1, 0, 1, 70, W - 20, 40, H - 50};

  double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
  for (const auto& s : fit.samples) {
    double lx = std::log10(s.lambda), ly = std::log10(s.norm);
    lx0 = std::min(lx0, lx);
    lx1 = std::max(lx1, lx);
    ly0 = std::min(ly0, ly);
    ly1 = std::max(ly1, ly);
  }
  double padx = std::max(0.05, 0.06 * (lx1 - lx0));
  double pady = std::max(0.05, 0.12 * (ly1 - ly0));
  m.x0 = lx0 - padx;
  m.x1 = lx1 + padx;
  m.y0 = ly0 - pady;
  m.y1 = ly1 + pady;

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  svg << "<rect width='" << W << "' height='" << H << "' fill='white'/>\n";
  svg << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='15' "
         "font-family='sans-serif'>"
      << title << "</text>\n";

  // Axes box and decade ticks.
  svg << "<rect x='" << m.px0 << "' y='" << m.py0 << "' width='" << (m.px1 - m.px0)
      << "' height='" << (m.py1 - m.py0) << "' fill='none' stroke='black'/>\n";
  for (int e = static_cast<int>(std::ceil(m.x0)); e <= static_cast<int>(std::floor(m.x1)); ++e) {
    double X = m.X(e);
    svg << "<line x1='" << X << "' y1='" << m.py1 << "' x2='" << X << "' y2='" << m.py1 + 5
        << "' stroke='black'/>\n";
    svg << "<text x='" << X << "' y='" << m.py1 + 20
        << "' text-anchor='middle' font-size='11' font-family='sans-serif'>1e" << e
        << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(m.y0)); e <= static_cast<int>(std::floor(m.y1)); ++e) {
    double Y = m.Y(e);
    svg << "<line x1='" << m.px0 - 5 << "' y1='" << Y << "' x2='" << m.px0 << "' y2='" << Y
        << "' stroke='black'/>\n";
    svg << "<text x='" << m.px0 - 8 << "' y='" << Y + 4
        << "' text-anchor='end' font-size='11' font-family='sans-serif'>1e" << e << "</text>\n";
  }
  svg << "<text x='" << (m.px0 + m.px1) / 2 << "' y='" << H - 10
      << "' text-anchor='middle' font-size='12' font-family='sans-serif'>lambda</text>\n";
  svg << "<text x='16' y='" << (m.py0 + m.py1) / 2
      << "' text-anchor='middle' font-size='12' font-family='sans-serif' transform='rotate(-90 "
         "16 "
      << (m.py0 + m.py1) / 2 << ")'>norm</text>\n";

  const double ln10 = std::log(10.0);
  auto fitted_y = [&](double lx) {  // log10 of fitted model at log10(lambda)=lx
    double lnl = lx * ln10;
    double ly = fit.intercept + fit.slope * lnl;
    return ly / ln10;
  };
  svg << "<line x1='" << m.X(lx0) << "' y1='" << m.Y(fitted_y(lx0)) << "' x2='" << m.X(lx1)
      << "' y2='" << m.Y(fitted_y(lx1)) << "' stroke='#1f77b4' stroke-width='1.5'/>\n";

  // Reference line with the predicted slope through the fit midpoint.
  double mid_lx = (lx0 + lx1) / 2, mid_ly = fitted_y(mid_lx);
  auto ref_y = [&](double lx) { return mid_ly - predicted_exponent * (lx - mid_lx); };
  svg << "<line x1='" << m.X(lx0) << "' y1='" << m.Y(ref_y(lx0)) << "' x2='" << m.X(lx1)
      << "' y2='" << m.Y(ref_y(lx1))
      << "' stroke='#d62728' stroke-width='1.5' stroke-dasharray='6,4'/>\n";

  for (const auto& s : fit.samples) {
    svg << "<circle cx='" << m.X(std::log10(s.lambda)) << "' cy='" << m.Y(std::log10(s.norm))
        << "' r='3.5' fill='black'/>\n";
  }

  svg << "<text x='" << m.px1 - 8 << "' y='" << m.py0 + 18
      << "' text-anchor='end' font-size='12' font-family='sans-serif' fill='#1f77b4'>fit slope "
      << fmt(fit.slope) << "</text>\n";
  svg << "<text x='" << m.px1 - 8 << "' y='" << m.py0 + 34
      << "' text-anchor='end' font-size='12' font-family='sans-serif' fill='#d62728'>predicted "
      << fmt(-predicted_exponent) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace oscdecay
