#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcdepth/depth.hpp"
#include "lcdepth/sphere.hpp"

namespace lcdepth {

// One point of the DD-plot: depths with respect to the two training
// classes. label is 1, 2, or 0 when unknown.
struct DDPoint {
  double d1 = 0.0;
  double d2 = 0.0;
  int label = 0;
};

// Which class claims the region on and above the curve d2 = s(d1).
// Class2Above is the classifier display's convention: assign class 2 iff
// d2 >= s(d1); Class1Above mirrors the sides.
enum class Orientation { Class1Above, Class2Above };

// Polynomial through the origin, s(x) = a_1 x + ... + a_k x^k.
struct PolynomialSeparator {
  std::vector<double> coeffs;
  Orientation orientation = Orientation::Class2Above;

  std::size_t degree() const { return coeffs.size(); }
  double operator()(double x) const;
};

PolynomialSeparator identity_separator(std::size_t degree = 1,
                                       Orientation orientation = Orientation::Class2Above);

int classify_dd(const PolynomialSeparator& s, const DDPoint& p);

struct Priors {
  double pi1 = 0.5;
  double pi2 = 0.5;

  void validate() const;
};

// Prior-weighted empirical misclassification rate of the separator on
// labeled DD points: pi1 * (class-1 error fraction) + pi2 * (class-2
// error fraction). Both classes must be present.
double empirical_risk(std::span<const DDPoint> points, const PolynomialSeparator& s,
                      const Priors& priors);

struct FitOptions {
  std::size_t max_candidates = 2000;  // per orientation; beyond this, seeded subsampling
  std::uint64_t seed = 0;
  bool refine = true;
};

struct FitResult {
  PolynomialSeparator separator;
  double risk = 0.0;
  bool degenerate = false;  // DD plot collapsed to a single point; identity returned
};

// Minimum-risk polynomial separator of the given degree: exact
// interpolation candidates over point subsets (both orientations, identity
// and constant-decision safeguards included), then Nelder-Mead refinement
// on a sigmoid-smoothed risk, kept only if the exact risk does not increase.
FitResult fit_separator(std::span<const DDPoint> points, std::size_t degree, const Priors& priors,
                        const FitOptions& options = {});

struct CvSpec {
  std::size_t folds = 5;
  std::uint64_t seed = 0;
};

struct DegreeCvResult {
  PolynomialSeparator separator;
  std::size_t degree = 1;
  std::vector<double> cv_risk;  // per candidate degree, same order as input
};

// Degree selection by stratified k-fold CV in the DD space (ties go to the
// lower degree), final refit on all points.
DegreeCvResult fit_with_degree_cv(std::vector<DDPoint> points, std::span<const std::size_t> degrees,
                                  const Priors& priors, const CvSpec& cv);

struct DDModel {
  SphericalSample train1;
  SphericalSample train2;
  double beta = 1.0;
  PolynomialSeparator separator;
  Priors priors;
};

// DD coordinates of the training points themselves: depth versus the own
// class is member mode (leave-one-out), versus the other class query mode.
std::vector<DDPoint> dd_plot_training(const SphericalSample& train1, const SphericalSample& train2,
                                      double beta);
// DD coordinates of external queries (query mode against both classes);
// labels are carried over when the queries are labeled.
std::vector<DDPoint> dd_plot(const SphericalSample& queries, const SphericalSample& train1,
                             const SphericalSample& train2, double beta);

// Same, for a whole beta grid from one sorted-distance pass per point;
// result[b] corresponds to betas[b].
std::vector<std::vector<DDPoint>> dd_plot_training_multi(const SphericalSample& train1,
                                                         const SphericalSample& train2,
                                                         std::span<const double> betas);
std::vector<std::vector<DDPoint>> dd_plot_multi(const SphericalSample& queries,
                                                const SphericalSample& train1,
                                                const SphericalSample& train2,
                                                std::span<const double> betas);

// Full training pipeline: training DD points, degree selection by CV,
// final separator fit. Priors default to the training class proportions.
DDModel train(const SphericalSample& train1, const SphericalSample& train2, double beta,
              std::span<const std::size_t> degrees, std::optional<Priors> priors,
              const CvSpec& cv);

std::vector<int> predict(const DDModel& model, const SphericalSample& queries);

struct BetaCvPoint {
  double beta = 0.0;
  double mean_mr = 0.0;
  double sd_mr = 0.0;
};

struct BetaSelection {
  double best_beta = 0.0;
  std::vector<BetaCvPoint> curve;  // same order as the input grid
};

// Repeated stratified k-fold CV of the full pipeline over a beta grid;
// returns the beta with the lowest mean misclassification (ties to the
// smaller beta) and the whole curve.
BetaSelection select_beta(const SphericalSample& data, std::span<const double> beta_grid,
                          std::size_t repeats, std::size_t folds,
                          std::span<const std::size_t> degrees, std::uint64_t seed);

// Model persistence: schema-versioned JSON document, bit-exact round-trip.
std::string serialize_model(const DDModel& model);
DDModel deserialize_model(const std::string& text);
void save_model(const DDModel& model, const std::string& path);
DDModel load_model(const std::string& path);

}  // namespace lcdepth
