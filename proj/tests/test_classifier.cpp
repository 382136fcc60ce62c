#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "lcdepth/classifier.hpp"
#include "lcdepth/rng.hpp"
#include "lcdepth/sampling.hpp"
#include "support/oracles.hpp"

using namespace lcdepth;

namespace {

std::vector<DDPoint> synthetic_dd(std::size_t n_per_class, double spread, Rng& rng) {
  // Class 1 tends below the diagonal (deep in class 1), class 2 above,
  // with overlap controlled by `spread`.
  std::vector<DDPoint> pts;
  for (std::size_t i = 0; i < n_per_class; ++i) {
    const double x = 0.2 + 1.5 * rng.next_double();
    pts.push_back({x, x * (0.8 + spread * (rng.next_double() - 0.5)), 1});
    const double x2 = 0.2 + 1.5 * rng.next_double();
    pts.push_back({x2, x2 * (1.2 + spread * (rng.next_double() - 0.5)), 2});
  }
  return pts;
}

SphericalSample vmf_class(const UnitVector& mu, double kappa, std::size_t n, Rng& rng) {
  return sample_vmf(VmfParams{mu, kappa}, n, rng);
}

}  // namespace

TEST_CASE("separator polynomial evaluation") {
  PolynomialSeparator s{{2.0, 0.0, 1.0}, Orientation::Class2Above};
  CHECK(s(0.0) == 0.0);  // no constant term
  CHECK(s(1.0) == doctest::Approx(3.0));
  CHECK(s(2.0) == doctest::Approx(12.0));

  // Boundary convention: d2 = s(d1) goes to class 2.
  CHECK(classify_dd(s, {1.0, 3.0, 0}) == 2);
  CHECK(classify_dd(s, {1.0, 2.999, 0}) == 1);

  // Identity separator reproduces the maximum-depth rule.
  PolynomialSeparator id = identity_separator();
  CHECK(classify_dd(id, {1.4, 1.2, 0}) == 1);
  CHECK(classify_dd(id, {1.2, 1.4, 0}) == 2);
}

TEST_CASE("empirical risk endpoints") {
  const Priors half{0.5, 0.5};
  std::vector<DDPoint> pts{{1.0, 1.5, 2}, {1.5, 1.0, 1}, {0.5, 1.0, 2}, {1.0, 0.5, 1}};
  PolynomialSeparator id = identity_separator();
  CHECK(empirical_risk(pts, id, half) == 0.0);

  // Flip every label: total misclassification.
  for (auto& p : pts) p.label = 3 - p.label;
  CHECK(empirical_risk(pts, id, half) == 1.0);

  std::vector<DDPoint> one_class{{1.0, 1.5, 2}};
  CHECK_THROWS_AS(empirical_risk(one_class, id, half), std::invalid_argument);

  // Identity separator's risk equals the maximum-depth rule's error count.
  std::vector<DDPoint> mixed{{1.0, 1.2, 1}, {1.0, 0.8, 1}, {1.3, 1.1, 2}, {0.7, 1.1, 2}};
  // class-1 wrong when d2 >= d1 (first point), class-2 wrong when d2 < d1 (third).
  CHECK(empirical_risk(mixed, id, half) == doctest::Approx(0.5 * 0.5 + 0.5 * 0.5));
}

TEST_CASE("separable DD clouds are fit to zero risk") {
  Rng rng(61);
  const Priors half{0.5, 0.5};

  // Separable by the diagonal with a1 = 1 admissible.
  std::vector<DDPoint> diag;
  for (int i = 0; i < 60; ++i) {
    const double x = 0.1 + rng.next_double();
    diag.push_back({x, x * 0.6 - 0.01, 1});
    diag.push_back({x, x * 1.4 + 0.05, 2});
  }
  const FitResult fit1 = fit_separator(diag, 1, half);
  CHECK(fit1.risk == 0.0);
  CHECK_FALSE(fit1.degenerate);

  // Class 1 strictly above y = 2x, class 2 strictly below: needs the
  // mirrored orientation at degree 1.
  std::vector<DDPoint> steep;
  for (int i = 0; i < 50; ++i) {
    const double x = 0.1 + rng.next_double();
    steep.push_back({x, 2.0 * x * 1.1, 1});
    steep.push_back({x, 2.0 * x * 0.85, 2});
  }
  const FitResult fit2 = fit_separator(steep, 1, half);
  CHECK(fit2.risk == 0.0);
  CHECK(fit2.separator.orientation == Orientation::Class1Above);
}

TEST_CASE("fitted risk never exceeds the identity baseline") {
  Rng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = synthetic_dd(30, 0.5 + 0.5 * rng.next_double(), rng);
    const Priors half{0.5, 0.5};
    for (const std::size_t degree : {1ul, 2ul, 3ul}) {
      const FitResult fit = fit_separator(pts, degree, half);
      CHECK(fit.risk <= empirical_risk(pts, identity_separator(), half) + 1e-12);
      CHECK(fit.risk == doctest::Approx(empirical_risk(pts, fit.separator, half)));
    }
  }
}

TEST_CASE("degenerate DD plot falls back to the identity") {
  std::vector<DDPoint> pts(10, DDPoint{1.0, 1.0, 1});
  for (std::size_t i = 5; i < 10; ++i) pts[i].label = 2;
  const FitResult fit = fit_separator(pts, 2, Priors{0.5, 0.5});
  CHECK(fit.degenerate);
  CHECK(fit.separator.coeffs == std::vector<double>{1.0, 0.0});
}

TEST_CASE("training DD plot and beta = 1 reduction") {
  Rng rng(71);
  UnitVector mu1 = UnitVector::axis(3, 0);
  UnitVector mu2 = UnitVector::axis(3, 1);
  SphericalSample t1 = vmf_class(mu1, 8.0, 40, rng);
  SphericalSample t2 = vmf_class(mu2, 8.0, 35, rng);

  const auto dd = dd_plot_training(t1, t2, 1.0);
  REQUIRE(dd.size() == 75);
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(dd[i].label == 1);
    // Member mode at beta = 1 is the leave-one-out global depth; query mode
    // the plain global depth.
    CHECK(dd[i].d1 == cdd(t1.unit_vector(i), t1.without(i)));
    CHECK(dd[i].d2 == cdd(t1.unit_vector(i), t2));
  }

  // Same reference on both axes puts external queries on the diagonal.
  SphericalSample queries = vmf_class(mu1, 5.0, 20, rng);
  const auto diag = dd_plot(queries, t1, t1, 0.3);
  for (const auto& p : diag) CHECK(p.d1 == p.d2);
}

TEST_CASE("query DD points concentrate on the diagonal as training grows") {
  Rng rng(73);
  UnitVector mu = UnitVector::axis(3, 0);
  std::vector<double> gap_small, gap_large;
  for (int rep = 0; rep < 20; ++rep) {
    SphericalSample queries = vmf_class(mu, 6.0, 50, rng);
    SphericalSample a_small = vmf_class(mu, 6.0, 100, rng);
    SphericalSample b_small = vmf_class(mu, 6.0, 100, rng);
    SphericalSample a_large = vmf_class(mu, 6.0, 500, rng);
    SphericalSample b_large = vmf_class(mu, 6.0, 500, rng);
    double gs = 0.0, gl = 0.0;
    for (const auto& p : dd_plot(queries, a_small, b_small, 0.25)) gs += std::abs(p.d1 - p.d2);
    for (const auto& p : dd_plot(queries, a_large, b_large, 0.25)) gl += std::abs(p.d1 - p.d2);
    gap_small.push_back(gs / 50.0);
    gap_large.push_back(gl / 50.0);
  }
  std::sort(gap_small.begin(), gap_small.end());
  std::sort(gap_large.begin(), gap_large.end());
  CHECK(gap_large[10] < gap_small[10]);  // median over replications
}

TEST_CASE("well separated classes train to low risk and sensible predictions") {
  Rng rng(79);
  UnitVector mu1 = UnitVector::axis(3, 0);
  std::vector<double> anti{-0.9, 0.1, 0.0};
  UnitVector mu2(anti);  // d_cos about 1.9... keep around 1.4 instead
  UnitVector mu2b(std::vector<double>{-0.4, std::sqrt(1.0 - 0.16), 0.0});
  SphericalSample t1 = vmf_class(mu1, 15.0, 100, rng);
  SphericalSample t2 = vmf_class(mu2b, 15.0, 100, rng);

  const std::size_t degrees_arr[3] = {1, 2, 3};
  DDModel model = train(t1, t2, 0.25, degrees_arr, std::nullopt, CvSpec{5, 11});

  const auto dd = dd_plot_training(model.train1, model.train2, model.beta);
  CHECK(empirical_risk(dd, model.separator, model.priors) <= 0.05);

  // A deep training point of class 1 classifies as class 1.
  std::size_t deepest = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < dd.size(); ++i) {
    if (dd[i].label == 1 && dd[i].d1 > best) {
      best = dd[i].d1;
      deepest = i;
    }
  }
  SphericalSample probe;
  probe.push_back(t1.unit_vector(deepest));
  CHECK(predict(model, probe) == std::vector<int>{1});

  // Prediction closure: training points mostly rediscover their labels.
  SphericalSample all_train;
  for (std::size_t i = 0; i < t1.size(); ++i) all_train.push_back(t1.unit_vector(i));
  for (std::size_t i = 0; i < t2.size(); ++i) all_train.push_back(t2.unit_vector(i));
  const auto labels = predict(model, all_train);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != (i < t1.size() ? 1 : 2)) ++wrong;
  }
  CHECK(static_cast<double>(wrong) / static_cast<double>(labels.size()) <= 0.08);
}

TEST_CASE("indistinguishable classes give near-chance CV risk") {
  Rng rng(83);
  UnitVector mu = UnitVector::axis(3, 0);
  SphericalSample data;
  for (int i = 0; i < 60; ++i) data.push_back(vmf_class(mu, 5.0, 1, rng).unit_vector(0), 1);
  for (int i = 0; i < 60; ++i) data.push_back(vmf_class(mu, 5.0, 1, rng).unit_vector(0), 2);

  const std::size_t degrees_arr[2] = {1, 2};
  const double grid[1] = {0.5};
  const auto sel = select_beta(data, grid, 3, 5, degrees_arr, 19);
  CHECK(sel.best_beta == 0.5);
  CHECK(std::abs(sel.curve[0].mean_mr - 0.5) <= 0.1);
}

TEST_CASE("degree tie resolves to the lower degree") {
  // Perfectly separable by the identity: every degree reaches zero CV risk,
  // so the tie rule must pick 1.
  std::vector<DDPoint> pts;
  Rng rng(89);
  for (int i = 0; i < 40; ++i) {
    const double x = 0.2 + rng.next_double();
    pts.push_back({x, x * 0.4, 1});
    pts.push_back({x, x * 1.6, 2});
  }
  const std::size_t degrees_arr[3] = {1, 2, 3};
  const auto result = fit_with_degree_cv(pts, degrees_arr, Priors{0.5, 0.5}, CvSpec{4, 3});
  CHECK(result.degree == 1);
}

TEST_CASE("select_beta: trivial single-beta grid and tie handling") {
  Rng rng(97);
  SphericalSample data;
  UnitVector mu1 = UnitVector::axis(3, 0);
  UnitVector mu2 = UnitVector::axis(3, 1);
  for (int i = 0; i < 40; ++i) data.push_back(vmf_class(mu1, 12.0, 1, rng).unit_vector(0), 1);
  for (int i = 0; i < 40; ++i) data.push_back(vmf_class(mu2, 12.0, 1, rng).unit_vector(0), 2);

  const std::size_t degrees_arr[1] = {1};
  const double grid[1] = {1.0};
  const auto sel = select_beta(data, grid, 2, 4, degrees_arr, 5);
  CHECK(sel.best_beta == 1.0);
  CHECK(sel.curve.size() == 1);

  CHECK_THROWS_AS(select_beta(data, grid, 2, 50, degrees_arr, 5), std::invalid_argument);
}

TEST_CASE("pipeline is invariant under rotation and storage order") {
  Rng rng(101);
  UnitVector mu1 = UnitVector::axis(4, 0);
  UnitVector mu2 = UnitVector::axis(4, 2);
  SphericalSample t1 = vmf_class(mu1, 15.0, 30, rng);
  SphericalSample t2 = vmf_class(mu2, 15.0, 30, rng);
  SphericalSample queries = vmf_class(mu1, 15.0, 20, rng);
  for (std::size_t i = 0; i < 20; ++i) queries.push_back(vmf_class(mu2, 15.0, 1, rng).unit_vector(0));

  const std::size_t degrees_arr[2] = {1, 2};
  DDModel model = train(t1, t2, 0.5, degrees_arr, std::nullopt, CvSpec{5, 23});
  const auto base_labels = predict(model, queries);

  // Rotation: identical label sequence.
  OrthogonalMatrix o = random_orthogonal(4, rng);
  DDModel rotated = train(o.apply(t1), o.apply(t2), 0.5, degrees_arr, std::nullopt, CvSpec{5, 23});
  CHECK(predict(rotated, o.apply(queries)) == base_labels);

  // Permuted storage order of the training points: identical predictions.
  std::vector<std::size_t> perm(t1.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  Rng shuffler(3);
  shuffle(perm.begin(), perm.end(), shuffler);
  SphericalSample t1p;
  for (const std::size_t i : perm) t1p.push_back(t1.unit_vector(i));
  DDModel permuted = train(t1p, t2, 0.5, degrees_arr, std::nullopt, CvSpec{5, 23});
  CHECK(predict(permuted, queries) == base_labels);

  // Same seed, same data: identical coefficients.
  DDModel again = train(t1, t2, 0.5, degrees_arr, std::nullopt, CvSpec{5, 23});
  CHECK(again.separator.coeffs == model.separator.coeffs);
}

TEST_CASE("model serialization round-trips bit-exactly") {
  Rng rng(103);
  SphericalSample t1 = vmf_class(UnitVector::axis(3, 0), 9.0, 15, rng);
  SphericalSample t2 = vmf_class(UnitVector::axis(3, 1), 9.0, 17, rng);
  const std::size_t degrees_arr[2] = {1, 2};
  DDModel model = train(t1, t2, 0.25, degrees_arr, std::nullopt, CvSpec{3, 7});

  const std::string text = serialize_model(model);
  const DDModel back = deserialize_model(text);
  CHECK(back.beta == model.beta);
  CHECK(back.separator.coeffs == model.separator.coeffs);
  CHECK(back.separator.orientation == model.separator.orientation);
  CHECK(back.priors.pi1 == model.priors.pi1);
  REQUIRE(back.train1.size() == model.train1.size());
  for (std::size_t i = 0; i < back.train1.size(); ++i) {
    for (std::size_t k = 0; k < back.train1.dim(); ++k) {
      CHECK(back.train1.point(i)[k] == model.train1.point(i)[k]);
    }
  }

  // Save / load / predict equals in-memory predict exactly.
  const auto path = std::filesystem::temp_directory_path() / "lcdd_model_test.json";
  save_model(model, path.string());
  const DDModel loaded = load_model(path.string());
  SphericalSample queries = vmf_class(UnitVector::axis(3, 0), 3.0, 25, rng);
  CHECK(predict(loaded, queries) == predict(model, queries));
  std::filesystem::remove(path);
}
