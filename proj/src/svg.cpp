#include "lcdepth/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcdepth {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 24.0;
constexpr double kMarginBottom = 48.0;

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const {
    return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double y) const {
    return kHeight - kMarginBottom -
           (y - y_lo) / (y_hi - y_lo) * (kHeight - kMarginTop - kMarginBottom);
  }
};

std::string num(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

void open_svg(std::ostringstream& s) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& s, const Frame& f, const std::string& x_label,
          const std::string& y_label) {
  s << "<line x1=\"" << f.px(f.x_lo) << "\" y1=\"" << f.py(f.y_lo) << "\" x2=\"" << f.px(f.x_hi)
    << "\" y2=\"" << f.py(f.y_lo) << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << f.px(f.x_lo) << "\" y1=\"" << f.py(f.y_lo) << "\" x2=\"" << f.px(f.x_lo)
    << "\" y2=\"" << f.py(f.y_hi) << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << (kWidth / 2) << "\" y=\"" << (kHeight - 8)
    << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
  s << "<text x=\"16\" y=\"" << (kHeight / 2)
    << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 " << (kHeight / 2)
    << ")\">" << y_label << "</text>\n";
  // y ticks
  for (int i = 0; i <= 4; ++i) {
    const double y = f.y_lo + (f.y_hi - f.y_lo) * i / 4.0;
    s << "<line x1=\"" << (f.px(f.x_lo) - 4) << "\" y1=\"" << f.py(y) << "\" x2=\"" << f.px(f.x_lo)
      << "\" y2=\"" << f.py(y) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << (f.px(f.x_lo) - 8) << "\" y=\"" << (f.py(y) + 4)
      << "\" text-anchor=\"end\" font-size=\"11\">" << num(y) << "</text>\n";
  }
}

}  // namespace

std::string render_cv_curve_svg(std::span<const BetaCvPoint> curve, double best_beta) {
  std::ostringstream s;
  open_svg(s);
  double y_hi = 0.0;
  for (const auto& p : curve) y_hi = std::max(y_hi, p.mean_mr + p.sd_mr);
  y_hi = std::max(y_hi * 1.1, 1e-3);
  const Frame f{-0.5, static_cast<double>(curve.size()) - 0.5, 0.0, y_hi};
  axes(s, f, "beta", "cross-validated misclassification rate");

  for (std::size_t i = 0; i < curve.size(); ++i) {
    s << "<text x=\"" << f.px(static_cast<double>(i)) << "\" y=\"" << (kHeight - kMarginBottom + 18)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << num(curve[i].beta) << "</text>\n";
    if (curve[i].beta == best_beta) {
      s << "<line x1=\"" << f.px(static_cast<double>(i)) << "\" y1=\"" << f.py(f.y_lo) << "\" x2=\""
        << f.px(static_cast<double>(i)) << "\" y2=\"" << f.py(f.y_hi)
        << "\" stroke=\"red\" stroke-dasharray=\"3,4\"/>\n";
    }
  }
  s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    s << f.px(static_cast<double>(i)) << ',' << f.py(curve[i].mean_mr) << ' ';
  }
  s << "\"/>\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double x = f.px(static_cast<double>(i));
    s << "<circle cx=\"" << x << "\" cy=\"" << f.py(curve[i].mean_mr)
      << "\" r=\"3.5\" fill=\"steelblue\"/>\n";
    // +- one sd whisker
    s << "<line x1=\"" << x << "\" y1=\"" << f.py(std::max(0.0, curve[i].mean_mr - curve[i].sd_mr))
      << "\" x2=\"" << x << "\" y2=\"" << f.py(curve[i].mean_mr + curve[i].sd_mr)
      << "\" stroke=\"steelblue\" stroke-width=\"1\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_dd_plot_svg(std::span<const DDPoint> points,
                               const PolynomialSeparator* separator) {
  std::ostringstream s;
  open_svg(s);
  double hi = 0.0;
  for (const auto& p : points) hi = std::max({hi, p.d1, p.d2});
  hi = std::min(2.0, std::max(hi * 1.05, 1e-3));
  const Frame f{0.0, hi, 0.0, hi};
  axes(s, f, "depth vs class 1", "depth vs class 2");

  s << "<line x1=\"" << f.px(0) << "\" y1=\"" << f.py(0) << "\" x2=\"" << f.px(hi) << "\" y2=\""
    << f.py(hi) << "\" stroke=\"gray\" stroke-dasharray=\"5,5\"/>\n";

  if (separator) {
    s << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i <= 200; ++i) {
      const double u = hi * i / 200.0;
      const double v = (*separator)(u);
      if (v < 0.0 || v > hi) continue;
      s << f.px(u) << ',' << f.py(v) << ' ';
    }
    s << "\"/>\n";
  }

  for (const auto& p : points) {
    const char* color = p.label == 1 ? "#1f77b4" : (p.label == 2 ? "#ff7f0e" : "#808080");
    s << "<circle cx=\"" << f.px(p.d1) << "\" cy=\"" << f.py(p.d2) << "\" r=\"2.5\" fill=\""
      << color << "\" fill-opacity=\"0.7\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_box_plot_svg(std::span<const std::string> methods,
                                std::span<const MethodSummary> summaries) {
  std::ostringstream s;
  open_svg(s);
  double y_hi = 0.0;
  for (const auto& m : summaries) y_hi = std::max({y_hi, m.q75, m.mean});
  y_hi = std::max(y_hi * 1.2, 1e-3);
  const Frame f{-0.5, static_cast<double>(methods.size()) - 0.5, 0.0, y_hi};
  axes(s, f, "method", "misclassification rate");

  const double slot = (kWidth - kMarginLeft - kMarginRight) / std::max<std::size_t>(1, methods.size());
  const double half = std::min(28.0, slot * 0.3);
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const double x = f.px(static_cast<double>(i));
    const auto& m = summaries[i];
    s << "<rect x=\"" << (x - half) << "\" y=\"" << f.py(m.q75) << "\" width=\"" << (2 * half)
      << "\" height=\"" << std::max(1.0, f.py(m.q25) - f.py(m.q75))
      << "\" fill=\"lightsteelblue\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << (x - half) << "\" y1=\"" << f.py(m.median) << "\" x2=\"" << (x + half)
      << "\" y2=\"" << f.py(m.median) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    s << "<circle cx=\"" << x << "\" cy=\"" << f.py(m.mean) << "\" r=\"3\" fill=\"firebrick\"/>\n";
    s << "<text x=\"" << x << "\" y=\"" << (kHeight - kMarginBottom + 18)
      << "\" text-anchor=\"middle\" font-size=\"11\">" << methods[i] << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace lcdepth
