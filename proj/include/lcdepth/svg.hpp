#pragma once

#include <span>
#include <string>
#include <vector>

#include "lcdepth/classifier.hpp"
#include "lcdepth/experiments.hpp"

namespace lcdepth {

// Self-contained SVG renderers; every figure has a CSV twin written by the
// CLI, so these only need to be legible.

// CV curve over the beta grid with the minimizing beta marked by a dotted
// red vertical line. X positions are categorical (one slot per grid beta).
std::string render_cv_curve_svg(std::span<const BetaCvPoint> curve, double best_beta);

// DD scatter (class 1 blue, class 2 orange, unlabeled gray) with the
// 45-degree reference and, when given, the separator curve.
std::string render_dd_plot_svg(std::span<const DDPoint> points,
                               const PolynomialSeparator* separator);

// One box per method: quartile box, median line, mean dot.
std::string render_box_plot_svg(std::span<const std::string> methods,
                                std::span<const MethodSummary> summaries);

}  // namespace lcdepth
