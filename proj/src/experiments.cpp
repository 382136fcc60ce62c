#include "lcdepth/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lcdepth/classifier.hpp"
#include "lcdepth/io.hpp"
#include "lcdepth/parallel.hpp"
#include "lcdepth/rng.hpp"

namespace lcdepth {

namespace {

// Stream roles under the master seed.
enum : std::uint64_t {
  kRoleCenters = 1,
  kRoleKappa = 2,
  kRoleFraction = 3,
  kRoleSampling = 4,
  kRoleSplit = 5,
  kRoleTraining = 6,
};

Rng replication_stream(const ScenarioSpec& spec, std::size_t replication, std::uint64_t role) {
  return Rng(spec.master_seed)
      .derive({static_cast<std::uint64_t>(spec.family), static_cast<std::uint64_t>(spec.setup),
               spec.dim, static_cast<std::uint64_t>(spec.noise), replication, role});
}

// Per-class 70/30 split preserving the drawn class shares to within one
// observation.
ReplicationData assemble_split(const ScenarioSpec& spec, SphericalSample class1,
                               SphericalSample class2, std::size_t replication) {
  Rng split_rng = replication_stream(spec, replication, kRoleSplit);
  ReplicationData out;
  const SphericalSample* classes[2] = {&class1, &class2};
  for (int c = 0; c < 2; ++c) {
    const auto& cls = *classes[c];
    std::vector<std::size_t> idx(cls.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    shuffle(idx.begin(), idx.end(), split_rng);
    const auto n_train = static_cast<std::size_t>(
        std::llround(spec.train_fraction * static_cast<double>(cls.size())));
    for (std::size_t j = 0; j < idx.size(); ++j) {
      auto& dest = (j < n_train) ? out.train : out.test;
      dest.push_back(cls.unit_vector(idx[j]), c + 1);
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> class_sizes(const ScenarioSpec& spec, double fraction) {
  const auto n1 =
      static_cast<std::size_t>(std::llround(fraction * static_cast<double>(spec.n)));
  return {n1, spec.n - n1};
}

MixtureSpec equal_vmf_pair(const UnitVector& a, const UnitVector& b, double kappa) {
  return MixtureSpec{{{0.5, VmfParams{a, kappa}}, {0.5, VmfParams{b, kappa}}}};
}

CenterConstraint between(std::size_t ref, double lo, double hi) {
  CenterConstraint c;
  c.ref = ref;
  c.lo = lo;
  c.hi = hi;
  return c;
}

// Interval centered on the realized distance of an earlier pair.
CenterConstraint mirror_of(std::size_t ref, std::size_t pair_a, std::size_t pair_b, double eps) {
  CenterConstraint c;
  c.ref = ref;
  c.anchor = std::make_pair(pair_a, pair_b);
  c.eps = eps;
  return c;
}

}  // namespace

std::string to_string(Family family) { return family == Family::Vmf ? "vmf" : "watson"; }

std::string to_string(Noise noise) {
  switch (noise) {
    case Noise::Low: return "low";
    case Noise::Medium: return "medium";
    default: return "high";
  }
}

Family parse_family(const std::string& text) {
  if (text == "vmf" || text == "1") return Family::Vmf;
  if (text == "watson" || text == "2") return Family::Watson;
  throw std::invalid_argument("unknown family: " + text);
}

Noise parse_noise(const std::string& text) {
  if (text == "low") return Noise::Low;
  if (text == "medium") return Noise::Medium;
  if (text == "high") return Noise::High;
  throw std::invalid_argument("unknown noise level: " + text);
}

std::pair<double, double> kappa_range(Noise noise) {
  switch (noise) {
    case Noise::Low: return {15.0, 17.0};
    case Noise::Medium: return {10.0, 12.0};
    default: return {5.0, 7.0};
  }
}

void ScenarioSpec::validate() const {
  if (setup < 1 || setup > 3) throw std::invalid_argument("ScenarioSpec: setup must be 1..3");
  if (dim < 2) throw std::invalid_argument("ScenarioSpec: dim must be at least 2");
  if (n < 20) throw std::invalid_argument("ScenarioSpec: n too small");
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
    throw std::invalid_argument("ScenarioSpec: train_fraction must lie in (0, 1)");
  }
  if (replications < 1) throw std::invalid_argument("ScenarioSpec: need at least 1 replication");
  if (beta_grid.empty()) throw std::invalid_argument("ScenarioSpec: empty beta grid");
  for (const double b : beta_grid) {
    if (!(b > 0.0) || !(b <= 1.0)) throw std::invalid_argument("ScenarioSpec: beta out of (0, 1]");
  }
  const auto [lo, hi] = class1_fraction_range;
  if (!(lo > 0.0) || !(hi < 1.0) || !(lo <= hi)) {
    throw std::invalid_argument("ScenarioSpec: bad class fraction range");
  }
}

ReplicationData generate_scenario1(const ScenarioSpec& spec, std::size_t replication) {
  spec.validate();
  if (spec.family != Family::Vmf) {
    throw std::invalid_argument("generate_scenario1: family must be vMF");
  }
  Rng kappa_rng = replication_stream(spec, replication, kRoleKappa);
  Rng frac_rng = replication_stream(spec, replication, kRoleFraction);
  Rng center_rng = replication_stream(spec, replication, kRoleCenters);
  Rng sample_rng = replication_stream(spec, replication, kRoleSampling);

  const auto [klo, khi] = kappa_range(spec.noise);
  const double kappa = kappa_rng.uniform(klo, khi);
  const double fraction =
      frac_rng.uniform(spec.class1_fraction_range.first, spec.class1_fraction_range.second);
  const auto [n1, n2] = class_sizes(spec, fraction);

  std::vector<CenterConstraintList> constraints;
  switch (spec.setup) {
    case 1:
      // Single center per class at moderate separation.
      constraints = {{between(0, 0.3, 0.5)}};
      break;
    case 2:
      // Two components per class; the class-2 component pair mirrors the
      // realized class-1 geometry within eps = 0.1.
      constraints = {
          {between(0, 0.6, 0.8)},
          {between(0, 0.25, 0.45), between(1, 0.25, 0.45)},
          {mirror_of(2, 0, 1, 0.1), mirror_of(1, 0, 2, 0.1)},
      };
      break;
    default:
      // Spread components; upper bound 2 is the cosine-distance maximum.
      constraints = {
          {between(0, 0.4, 0.6)},
          {between(0, 0.4, 0.6), between(1, 0.8, 1.0)},
          {between(0, 0.4, 2.0), between(1, 0.4, 2.0), between(2, 0.8, 2.0)},
      };
      break;
  }
  auto centers = constrained_centers(constraints, spec.dim, center_rng);

  SphericalSample class1, class2;
  Rng rng1 = sample_rng.derive({1});
  Rng rng2 = sample_rng.derive({2});
  if (spec.setup == 1) {
    class1 = sample_vmf(VmfParams{centers[0], kappa}, n1, rng1);
    class2 = sample_vmf(VmfParams{centers[1], kappa}, n2, rng2);
  } else {
    class1 = sample_mixture(equal_vmf_pair(centers[0], centers[1], kappa), n1, rng1);
    class2 = sample_mixture(equal_vmf_pair(centers[2], centers[3], kappa), n2, rng2);
  }

  auto out = assemble_split(spec, std::move(class1), std::move(class2), replication);
  out.class1_fraction = fraction;
  out.kappa = kappa;
  out.centers = std::move(centers);
  return out;
}

ReplicationData generate_scenario2(const ScenarioSpec& spec, std::size_t replication) {
  spec.validate();
  if (spec.family != Family::Watson) {
    throw std::invalid_argument("generate_scenario2: family must be Watson");
  }
  Rng kappa_rng = replication_stream(spec, replication, kRoleKappa);
  Rng frac_rng = replication_stream(spec, replication, kRoleFraction);
  Rng center_rng = replication_stream(spec, replication, kRoleCenters);
  Rng sample_rng = replication_stream(spec, replication, kRoleSampling);

  const auto [klo, khi] = kappa_range(spec.noise);
  const double kappa = kappa_rng.uniform(klo, khi);
  const double fraction =
      frac_rng.uniform(spec.class1_fraction_range.first, spec.class1_fraction_range.second);
  const auto [n1, n2] = class_sizes(spec, fraction);

  auto centers = constrained_centers({{between(0, 0.5, 0.7)}}, spec.dim, center_rng);

  double k1 = kappa, k2 = kappa;
  if (spec.setup == 2) {
    k1 = -kappa;
    k2 = -kappa;
  } else if (spec.setup == 3) {
    k2 = -kappa;
  }
  Rng rng1 = sample_rng.derive({1});
  Rng rng2 = sample_rng.derive({2});
  SphericalSample class1 = sample_watson(WatsonParams{centers[0], k1}, n1, rng1);
  SphericalSample class2 = sample_watson(WatsonParams{centers[1], k2}, n2, rng2);

  auto out = assemble_split(spec, std::move(class1), std::move(class2), replication);
  out.class1_fraction = fraction;
  out.kappa = kappa;
  out.centers = std::move(centers);
  return out;
}

ReplicationData generate_replication(const ScenarioSpec& spec, std::size_t replication) {
  return spec.family == Family::Vmf ? generate_scenario1(spec, replication)
                                    : generate_scenario2(spec, replication);
}

std::size_t CellResult::method_index(const std::string& name) const {
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i] == name) return i;
  }
  throw std::invalid_argument("CellResult: unknown method " + name);
}

std::size_t CellResult::best_lcdd_index() const {
  std::size_t best = methods.size();
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (method_betas[i] == 1.0) continue;  // the CDD arm
    if (best == methods.size() || summaries[i].mean < summaries[best].mean) best = i;
  }
  if (best == methods.size()) throw std::logic_error("CellResult: no LCDD arm present");
  return best;
}

MethodSummary summarize_rates(std::vector<double> rates) {
  MethodSummary s;
  const auto n = rates.size();
  if (n == 0) return s;
  double sum = 0.0;
  for (const double r : rates) sum += r;
  s.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const double r : rates) ss += (r - s.mean) * (r - s.mean);
  s.sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  std::sort(rates.begin(), rates.end());
  auto quantile = [&](double p) {
    const double h = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(n - 1, lo + 1);
    const double frac = h - static_cast<double>(lo);
    return rates[lo] + frac * (rates[hi] - rates[lo]);
  };
  s.q25 = quantile(0.25);
  s.median = quantile(0.50);
  s.q75 = quantile(0.75);
  return s;
}

CellResult run_cell(const ScenarioSpec& spec) {
  spec.validate();
  CellResult result;
  result.spec = spec;
  result.methods.push_back("cdd");
  result.method_betas.push_back(1.0);
  for (const double b : spec.beta_grid) {
    result.methods.push_back("lcdd@" + format_double(b));
    result.method_betas.push_back(b);
  }
  result.rates.assign(spec.replications, std::vector<double>(result.methods.size(), 0.0));

  const std::size_t degrees_arr[3] = {1, 2, 3};
  const std::span<const std::size_t> degrees(degrees_arr, 3);

  parallel_for(spec.replications, [&](std::size_t rep) {
    const ReplicationData data = generate_replication(spec, rep);
    SphericalSample t1 = data.train.where_label(1);
    SphericalSample t2 = data.train.where_label(2);

    const auto train_dd = dd_plot_training_multi(t1, t2, result.method_betas);
    const auto test_dd = dd_plot_multi(data.test, t1, t2, result.method_betas);

    const double n1 = static_cast<double>(t1.size());
    const double n2 = static_cast<double>(t2.size());
    const Priors priors{n1 / (n1 + n2), n2 / (n1 + n2)};

    Rng train_rng = replication_stream(spec, rep, kRoleTraining);
    for (std::size_t arm = 0; arm < result.methods.size(); ++arm) {
      CvSpec cv{5, train_rng.derive({arm}).seed()};
      const auto fitted = fit_with_degree_cv(train_dd[arm], degrees, priors, cv);
      result.rates[rep][arm] = empirical_risk(test_dd[arm], fitted.separator, priors);
    }
  });

  for (std::size_t arm = 0; arm < result.methods.size(); ++arm) {
    std::vector<double> column(spec.replications);
    for (std::size_t rep = 0; rep < spec.replications; ++rep) column[rep] = result.rates[rep][arm];
    result.summaries.push_back(summarize_rates(std::move(column)));
  }
  return result;
}

std::vector<LongRow> aggregate(std::span<const CellResult> cells) {
  std::vector<LongRow> rows;
  for (const auto& cell : cells) {
    for (std::size_t rep = 0; rep < cell.rates.size(); ++rep) {
      for (std::size_t arm = 0; arm < cell.methods.size(); ++arm) {
        rows.push_back({to_string(cell.spec.family), cell.spec.setup, cell.spec.dim,
                        to_string(cell.spec.noise), cell.methods[arm], cell.method_betas[arm], rep,
                        cell.rates[rep][arm]});
      }
    }
  }
  return rows;
}

}  // namespace lcdepth
