#include "lcdepth/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lcdepth/parallel.hpp"
#include "lcdepth/rng.hpp"

namespace lcdepth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nonnegative exactly when the point lies on or above the curve d2 = s(d1),
// i.e. when it is assigned to the orientation's "above" class.
double above_residual(const PolynomialSeparator& s, const DDPoint& p) {
  return p.d2 - s(p.d1);
}

int above_class(Orientation orientation) {
  return orientation == Orientation::Class2Above ? 2 : 1;
}

struct ClassCounts {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

ClassCounts count_classes(std::span<const DDPoint> points) {
  ClassCounts c;
  for (const auto& p : points) {
    if (p.label == 1) ++c.n1;
    else if (p.label == 2) ++c.n2;
    else throw std::invalid_argument("classifier: DD point without a class label");
  }
  return c;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Logistic relaxation of the 0-1 risk at temperature T.
double smoothed_risk(std::span<const DDPoint> points, const PolynomialSeparator& s,
                     const Priors& priors, const ClassCounts& counts, double temperature) {
  const int above = above_class(s.orientation);
  double loss1 = 0.0, loss2 = 0.0;
  for (const auto& p : points) {
    const double r = above_residual(s, p);
    if (!std::isfinite(r)) return kInf;
    // Probability mass on the wrong side.
    const double wrong = (p.label == above) ? sigmoid(-r / temperature) : sigmoid(r / temperature);
    (p.label == 1 ? loss1 : loss2) += wrong;
  }
  return priors.pi1 * loss1 / static_cast<double>(counts.n1) +
         priors.pi2 * loss2 / static_cast<double>(counts.n2);
}

// Solve the k x k interpolation system sum_m a_m x_j^m = y_j by Gaussian
// elimination with partial pivoting; false when (near-)singular.
bool solve_interpolation(std::span<const double> xs, std::span<const double> ys,
                         std::vector<double>& out) {
  const std::size_t k = xs.size();
  std::vector<double> m(k * (k + 1));
  for (std::size_t r = 0; r < k; ++r) {
    double p = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      p *= xs[r];
      m[r * (k + 1) + c] = p;
    }
    m[r * (k + 1) + k] = ys[r];
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(m[r * (k + 1) + col]) > std::abs(m[pivot * (k + 1) + col])) pivot = r;
    }
    if (std::abs(m[pivot * (k + 1) + col]) < 1e-12) return false;
    if (pivot != col) {
      for (std::size_t c = col; c <= k; ++c) std::swap(m[pivot * (k + 1) + c], m[col * (k + 1) + c]);
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = m[r * (k + 1) + col] / m[col * (k + 1) + col];
      for (std::size_t c = col; c <= k; ++c) m[r * (k + 1) + c] -= f * m[col * (k + 1) + c];
    }
  }
  out.assign(k, 0.0);
  for (std::size_t r = k; r-- > 0;) {
    double s = m[r * (k + 1) + k];
    for (std::size_t c = r + 1; c < k; ++c) s -= m[r * (k + 1) + c] * out[c];
    out[r] = s / m[r * (k + 1) + r];
    if (!std::isfinite(out[r])) return false;
  }
  return true;
}

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  double v = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    v *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (v > static_cast<double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(v);
}

// Enumerate index subsets of size k: exhaustively when the count fits the
// budget, otherwise by seeded uniform draws.
std::vector<std::vector<std::size_t>> candidate_subsets(std::size_t n, std::size_t k,
                                                        std::size_t budget, Rng rng) {
  std::vector<std::vector<std::size_t>> subsets;
  if (binomial_capped(n, k, budget) <= budget) {
    std::vector<std::size_t> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    for (;;) {
      subsets.push_back(cur);
      std::ptrdiff_t i = static_cast<std::ptrdiff_t>(k) - 1;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + static_cast<std::size_t>(i)) --i;
      if (i < 0) return subsets;
      ++cur[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  subsets.reserve(budget);
  std::vector<std::size_t> pick(k);
  for (std::size_t c = 0; c < budget; ++c) {
    for (std::size_t i = 0; i < k;) {
      const std::size_t cand = static_cast<std::size_t>(rng.next_below(n));
      bool dup = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (pick[j] == cand) {
          dup = true;
          break;
        }
      }
      if (!dup) pick[i++] = cand;
    }
    subsets.push_back(pick);
  }
  return subsets;
}

// Nelder-Mead on the smoothed risk; start from `start`, dimension = degree.
std::vector<double> nelder_mead(std::span<const DDPoint> points, Orientation orientation,
                                const Priors& priors, const ClassCounts& counts,
                                std::vector<double> start, double temperature,
                                std::size_t max_iters) {
  const std::size_t d = start.size();
  auto value = [&](const std::vector<double>& a) {
    PolynomialSeparator s{a, orientation};
    return smoothed_risk(points, s, priors, counts, temperature);
  };

  std::vector<std::vector<double>> simplex(d + 1, start);
  for (std::size_t i = 0; i < d; ++i) {
    simplex[i + 1][i] += 0.25 * std::max(0.05, std::abs(start[i]));
  }
  std::vector<double> vals(d + 1);
  for (std::size_t i = 0; i <= d; ++i) vals[i] = value(simplex[i]);

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::vector<std::size_t> order(d + 1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order[0], worst = order[d], second = order[d - 1];
    if (vals[worst] - vals[best] < 1e-12) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(d);

    auto blend = [&](double t) {
      std::vector<double> p(d);
      for (std::size_t j = 0; j < d; ++j) p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
      return p;
    };

    auto reflected = blend(-1.0);
    const double fr = value(reflected);
    if (fr < vals[order[0]]) {
      auto expanded = blend(-2.0);
      const double fe = value(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        vals[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      simplex[worst] = std::move(reflected);
      vals[worst] = fr;
    } else {
      auto contracted = blend(0.5);
      const double fc = value(contracted);
      if (fc < vals[worst]) {
        simplex[worst] = std::move(contracted);
        vals[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= d; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < d; ++j) {
            simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          }
          vals[i] = value(simplex[i]);
        }
      }
    }
  }
  const std::size_t best =
      static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return simplex[best];
}

void canonical_sort(std::vector<DDPoint>& points) {
  std::sort(points.begin(), points.end(), [](const DDPoint& a, const DDPoint& b) {
    if (a.label != b.label) return a.label < b.label;
    if (a.d1 != b.d1) return a.d1 < b.d1;
    return a.d2 < b.d2;
  });
}

// Stratified fold ids (round-robin within each shuffled class).
std::vector<std::size_t> stratified_folds(std::span<const DDPoint> points, std::size_t folds,
                                          Rng rng) {
  std::vector<std::size_t> fold_of(points.size(), 0);
  for (const int label : {1, 2}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].label == label) idx.push_back(i);
    }
    shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t j = 0; j < idx.size(); ++j) fold_of[idx[j]] = j % folds;
  }
  return fold_of;
}

}  // namespace

double PolynomialSeparator::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = (acc + coeffs[i]) * x;
  return acc;
}

PolynomialSeparator identity_separator(std::size_t degree, Orientation orientation) {
  if (degree < 1) throw std::invalid_argument("identity_separator: degree must be at least 1");
  std::vector<double> a(degree, 0.0);
  a[0] = 1.0;
  return PolynomialSeparator{std::move(a), orientation};
}

int classify_dd(const PolynomialSeparator& s, const DDPoint& p) {
  const int above = above_class(s.orientation);
  return above_residual(s, p) >= 0.0 ? above : 3 - above;
}

void Priors::validate() const {
  if (!(pi1 > 0.0) || !(pi2 > 0.0) || std::abs(pi1 + pi2 - 1.0) > 1e-9) {
    throw std::invalid_argument("Priors: need pi1, pi2 > 0 with pi1 + pi2 = 1");
  }
}

double empirical_risk(std::span<const DDPoint> points, const PolynomialSeparator& s,
                      const Priors& priors) {
  priors.validate();
  const ClassCounts counts = count_classes(points);
  if (counts.n1 == 0 || counts.n2 == 0) {
    throw std::invalid_argument("empirical_risk: both classes must be present");
  }
  std::size_t wrong1 = 0, wrong2 = 0;
  for (const auto& p : points) {
    const int assigned = classify_dd(s, p);
    if (p.label == 1 && assigned == 2) ++wrong1;
    if (p.label == 2 && assigned == 1) ++wrong2;
  }
  return priors.pi1 * static_cast<double>(wrong1) / static_cast<double>(counts.n1) +
         priors.pi2 * static_cast<double>(wrong2) / static_cast<double>(counts.n2);
}

FitResult fit_separator(std::span<const DDPoint> points, std::size_t degree, const Priors& priors,
                        const FitOptions& options) {
  if (degree < 1) throw std::invalid_argument("fit_separator: degree must be at least 1");
  priors.validate();
  const ClassCounts counts = count_classes(points);
  if (counts.n1 < degree || counts.n2 < degree) {
    throw std::invalid_argument("fit_separator: need at least `degree` points per class");
  }

  bool all_same = true;
  for (const auto& p : points) {
    if (p.d1 != points[0].d1 || p.d2 != points[0].d2) {
      all_same = false;
      break;
    }
  }
  if (all_same) {
    PolynomialSeparator id = identity_separator(degree);
    return {id, empirical_risk(points, id, priors), true};
  }

  double best_risk = kInf;
  PolynomialSeparator best;

  auto consider = [&](const PolynomialSeparator& s) {
    const double r = empirical_risk(points, s, priors);
    if (r < best_risk) {
      best_risk = r;
      best = s;
    }
  };

  // Every candidate curve is tried with both side assignments. Safeguards:
  // the maximum-depth baseline (identity) and the two constant decisions.
  auto consider_both = [&](const std::vector<double>& coeffs) {
    consider(PolynomialSeparator{coeffs, Orientation::Class2Above});
    consider(PolynomialSeparator{coeffs, Orientation::Class1Above});
  };
  consider_both(identity_separator(degree).coeffs);
  consider_both(std::vector<double>(degree, 0.0));
  {
    std::vector<double> steep(degree, 0.0);
    steep[0] = 1e6;
    consider_both(steep);
  }

  const Rng seed_rng(options.seed);
  std::vector<double> xs(degree), ys(degree), coeffs;
  const auto subsets = candidate_subsets(points.size(), degree, options.max_candidates,
                                         seed_rng.derive({0xCA4D}));
  for (const auto& subset : subsets) {
    for (std::size_t i = 0; i < degree; ++i) {
      xs[i] = points[subset[i]].d1;
      ys[i] = points[subset[i]].d2;
    }
    if (!solve_interpolation(xs, ys, coeffs)) continue;
    consider_both(coeffs);
  }

  if (options.refine) {
    // Three annealing stages on the logistic relaxation; keep the result
    // only when the exact 0-1 risk does not get worse.
    std::vector<double> a = best.coeffs;
    for (const double temperature : {0.05, 0.01, 0.002}) {
      a = nelder_mead(points, best.orientation, priors, counts, std::move(a), temperature,
                      200 * degree);
    }
    PolynomialSeparator refined{std::move(a), best.orientation};
    const double refined_risk = empirical_risk(points, refined, priors);
    if (refined_risk <= best_risk) {
      best = std::move(refined);
      best_risk = refined_risk;
    }
  }
  return {best, best_risk, false};
}

DegreeCvResult fit_with_degree_cv(std::vector<DDPoint> points, std::span<const std::size_t> degrees,
                                  const Priors& priors, const CvSpec& cv) {
  if (degrees.empty()) throw std::invalid_argument("fit_with_degree_cv: no degrees given");
  if (cv.folds < 2) throw std::invalid_argument("fit_with_degree_cv: need at least 2 folds");
  const ClassCounts counts = count_classes(points);
  if (counts.n1 < cv.folds || counts.n2 < cv.folds) {
    throw std::invalid_argument("fit_with_degree_cv: class too small for the fold count");
  }

  // Canonical order makes the whole fit independent of the caller's
  // storage order (the depths themselves already are).
  canonical_sort(points);

  const Rng rng(cv.seed);
  const auto fold_of = stratified_folds(points, cv.folds, rng.derive({0xF01D5}));

  std::vector<double> mean_risk(degrees.size(), 0.0);
  for (std::size_t di = 0; di < degrees.size(); ++di) {
    double total = 0.0;
    bool usable = true;
    for (std::size_t f = 0; f < cv.folds && usable; ++f) {
      std::vector<DDPoint> fit_part, held;
      for (std::size_t i = 0; i < points.size(); ++i) {
        (fold_of[i] == f ? held : fit_part).push_back(points[i]);
      }
      try {
        FitOptions opts;
        opts.seed = rng.derive({0xF17, di, f}).seed();
        const FitResult fr = fit_separator(fit_part, degrees[di], priors, opts);
        total += held.empty() ? 0.0 : empirical_risk(held, fr.separator, priors);
      } catch (const std::invalid_argument&) {
        usable = false;  // degree infeasible at this fold size
      }
    }
    mean_risk[di] = usable ? total / static_cast<double>(cv.folds) : kInf;
  }

  std::size_t best_index = degrees.size();
  for (std::size_t di = 0; di < degrees.size(); ++di) {
    if (best_index == degrees.size() || mean_risk[di] < mean_risk[best_index] ||
        (mean_risk[di] == mean_risk[best_index] && degrees[di] < degrees[best_index])) {
      best_index = di;
    }
  }
  if (best_index == degrees.size() || mean_risk[best_index] == kInf) {
    throw std::invalid_argument("fit_with_degree_cv: no feasible degree for this data");
  }

  FitOptions final_opts;
  final_opts.seed = rng.derive({0xF1A1}).seed();
  const FitResult final_fit = fit_separator(points, degrees[best_index], priors, final_opts);
  return {final_fit.separator, degrees[best_index], std::move(mean_risk)};
}

namespace {

void check_training_pair(const SphericalSample& train1, const SphericalSample& train2) {
  if (train1.empty() || train2.empty()) {
    throw std::invalid_argument("classifier: empty training class");
  }
  if (train1.dim() != train2.dim()) {
    throw std::invalid_argument("classifier: training classes differ in dimension");
  }
  if (train1.size() < 2 || train2.size() < 2) {
    throw std::invalid_argument("classifier: member-mode depth needs at least 2 points per class");
  }
}

}  // namespace

std::vector<std::vector<DDPoint>> dd_plot_training_multi(const SphericalSample& train1,
                                                         const SphericalSample& train2,
                                                         std::span<const double> betas) {
  check_training_pair(train1, train2);
  const std::size_t n1 = train1.size(), n2 = train2.size();
  std::vector<std::vector<DDPoint>> out(betas.size());
  for (auto& v : out) v.resize(n1 + n2);
  for (std::size_t i = 0; i < n1; ++i) {
    const auto d1 = lcdd_multi_beta(train1.point(i), train1, i, betas);
    const auto d2 = lcdd_multi_beta(train1.point(i), train2, std::nullopt, betas);
    for (std::size_t b = 0; b < betas.size(); ++b) out[b][i] = {d1[b], d2[b], 1};
  }
  for (std::size_t i = 0; i < n2; ++i) {
    const auto d1 = lcdd_multi_beta(train2.point(i), train1, std::nullopt, betas);
    const auto d2 = lcdd_multi_beta(train2.point(i), train2, i, betas);
    for (std::size_t b = 0; b < betas.size(); ++b) out[b][n1 + i] = {d1[b], d2[b], 2};
  }
  return out;
}

std::vector<std::vector<DDPoint>> dd_plot_multi(const SphericalSample& queries,
                                                const SphericalSample& train1,
                                                const SphericalSample& train2,
                                                std::span<const double> betas) {
  if (train1.empty() || train2.empty()) {
    throw std::invalid_argument("dd_plot: empty training class");
  }
  if (train1.dim() != train2.dim() || (queries.size() > 0 && queries.dim() != train1.dim())) {
    throw std::invalid_argument("dd_plot: dimension mismatch");
  }
  std::vector<std::vector<DDPoint>> out(betas.size());
  for (auto& v : out) v.resize(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto d1 = lcdd_multi_beta(queries.point(i), train1, std::nullopt, betas);
    const auto d2 = lcdd_multi_beta(queries.point(i), train2, std::nullopt, betas);
    const int label = queries.has_labels() ? queries.label(i) : 0;
    for (std::size_t b = 0; b < betas.size(); ++b) out[b][i] = {d1[b], d2[b], label};
  }
  return out;
}

std::vector<DDPoint> dd_plot_training(const SphericalSample& train1, const SphericalSample& train2,
                                      double beta) {
  const double grid[1] = {beta};
  return dd_plot_training_multi(train1, train2, grid).front();
}

std::vector<DDPoint> dd_plot(const SphericalSample& queries, const SphericalSample& train1,
                             const SphericalSample& train2, double beta) {
  const double grid[1] = {beta};
  return dd_plot_multi(queries, train1, train2, grid).front();
}

DDModel train(const SphericalSample& train1, const SphericalSample& train2, double beta,
              std::span<const std::size_t> degrees, std::optional<Priors> priors,
              const CvSpec& cv) {
  check_training_pair(train1, train2);
  DepthConfig{beta}.validate();
  if (degrees.empty()) throw std::invalid_argument("train: no degrees given");
  for (const std::size_t d : degrees) {
    if (d < 1 || d > 3) throw std::invalid_argument("train: degrees must lie in {1, 2, 3}");
  }

  const double n1 = static_cast<double>(train1.size());
  const double n2 = static_cast<double>(train2.size());
  const Priors pri = priors.value_or(Priors{n1 / (n1 + n2), n2 / (n1 + n2)});
  pri.validate();

  auto dd = dd_plot_training(train1, train2, beta);
  auto fitted = fit_with_degree_cv(std::move(dd), degrees, pri, cv);

  DDModel model;
  model.train1 = train1;
  model.train2 = train2;
  model.beta = beta;
  model.separator = std::move(fitted.separator);
  model.priors = pri;
  return model;
}

std::vector<int> predict(const DDModel& model, const SphericalSample& queries) {
  const auto dd = dd_plot(queries, model.train1, model.train2, model.beta);
  std::vector<int> labels(dd.size());
  for (std::size_t i = 0; i < dd.size(); ++i) labels[i] = classify_dd(model.separator, dd[i]);
  return labels;
}

BetaSelection select_beta(const SphericalSample& data, std::span<const double> beta_grid,
                          std::size_t repeats, std::size_t folds,
                          std::span<const std::size_t> degrees, std::uint64_t seed) {
  if (!data.has_labels()) throw std::invalid_argument("select_beta: data must be labeled");
  if (beta_grid.empty()) throw std::invalid_argument("select_beta: empty beta grid");
  for (const double b : beta_grid) DepthConfig{b}.validate();
  if (folds < 2) throw std::invalid_argument("select_beta: need at least 2 folds");
  if (repeats < 1) throw std::invalid_argument("select_beta: need at least 1 repeat");

  std::vector<std::size_t> idx1, idx2;
  for (std::size_t i = 0; i < data.size(); ++i) {
    (data.label(i) == 1 ? idx1 : idx2).push_back(i);
  }
  if (idx1.size() < folds || idx2.size() < folds) {
    throw std::invalid_argument("select_beta: class smaller than the fold count");
  }

  const Rng rng(seed);
  const std::size_t cells = repeats * folds;
  std::vector<std::vector<double>> cell_mr(cells);  // per cell: MR per beta

  parallel_for(cells, [&](std::size_t cell) {
    const std::size_t rep = cell / folds;
    const std::size_t fold = cell % folds;

    // Stratified fold ids for this repeat (same permutation for all folds
    // of the repeat: reshuffled per repeat, as in repeated k-fold CV).
    std::vector<std::size_t> fold_of(data.size());
    for (const auto* cls : {&idx1, &idx2}) {
      auto shuffled = *cls;
      Rng r = rng.derive({0x5E1B, rep, cls == &idx1 ? 1ULL : 2ULL});
      shuffle(shuffled.begin(), shuffled.end(), r);
      for (std::size_t j = 0; j < shuffled.size(); ++j) fold_of[shuffled[j]] = j % folds;
    }

    SphericalSample t1, t2, test;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold_of[i] == fold) {
        test.push_back(data.unit_vector(i), data.label(i));
      } else if (data.label(i) == 1) {
        t1.push_back(data.unit_vector(i));
      } else {
        t2.push_back(data.unit_vector(i));
      }
    }
    if (t1.size() < 2 || t2.size() < 2) {
      throw std::invalid_argument("select_beta: a training class collapsed below 2 points");
    }

    const auto train_dd = dd_plot_training_multi(t1, t2, beta_grid);
    const auto test_dd = dd_plot_multi(test, t1, t2, beta_grid);

    const double n1 = static_cast<double>(t1.size());
    const double n2 = static_cast<double>(t2.size());
    const Priors priors{n1 / (n1 + n2), n2 / (n1 + n2)};

    const std::size_t inner_folds =
        std::max<std::size_t>(2, std::min<std::size_t>({5, t1.size(), t2.size()}));

    std::vector<double> mr(beta_grid.size());
    for (std::size_t b = 0; b < beta_grid.size(); ++b) {
      CvSpec inner{inner_folds, rng.derive({0x1CF, rep, fold, b}).seed()};
      const auto fitted = fit_with_degree_cv(train_dd[b], degrees, priors, inner);
      mr[b] = empirical_risk(test_dd[b], fitted.separator, priors);
    }
    cell_mr[cell] = std::move(mr);
  });

  BetaSelection out;
  out.curve.resize(beta_grid.size());
  for (std::size_t b = 0; b < beta_grid.size(); ++b) {
    double sum = 0.0;
    for (const auto& mr : cell_mr) sum += mr[b];
    const double mean = sum / static_cast<double>(cells);
    double ss = 0.0;
    for (const auto& mr : cell_mr) ss += (mr[b] - mean) * (mr[b] - mean);
    const double sd = cells > 1 ? std::sqrt(ss / static_cast<double>(cells - 1)) : 0.0;
    out.curve[b] = {beta_grid[b], mean, sd};
  }
  std::size_t best = 0;
  for (std::size_t b = 1; b < beta_grid.size(); ++b) {
    const bool better = out.curve[b].mean_mr < out.curve[best].mean_mr ||
                        (out.curve[b].mean_mr == out.curve[best].mean_mr &&
                         out.curve[b].beta < out.curve[best].beta);
    if (better) best = b;
  }
  out.best_beta = out.curve[best].beta;
  return out;
}

}  // namespace lcdepth
