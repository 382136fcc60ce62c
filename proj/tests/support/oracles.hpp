#pragma once

// Test-only oracles, kept independent of the library's computation paths:
// brute-force depth orderings straight from the definitions, and 1D
// quadrature for the tangent-cosine marginals of the spherical families.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lcdepth/depth.hpp"
#include "lcdepth/rng.hpp"
#include "lcdepth/sampling.hpp"
#include "lcdepth/sphere.hpp"

namespace lcdepth::testing {

inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// E[g(t)] where t = <mu, X> and X follows the family with concentration
// kappa on S^{q-1}. Integration in theta space, where the marginal density
// is proportional to sin^{q-2}(theta) * exp(kappa * w(cos theta)) and the
// sine factor is regular for every q >= 2.
inline double tangent_moment(const std::function<double(double)>& g,
                             const std::function<double(double)>& log_tilt, std::size_t dim,
                             int intervals = 20000) {
  const double qm2 = static_cast<double>(dim) - 2.0;
  // Factor exp(max log-tilt) out for numerical sanity.
  double peak = -1e300;
  for (int i = 0; i <= 1000; ++i) {
    peak = std::max(peak, log_tilt(std::cos(M_PI * i / 1000.0)));
  }
  auto weight = [&](double theta) {
    const double s = std::sin(theta);
    const double base = qm2 > 0.0 ? std::pow(s, qm2) : 1.0;
    return base * std::exp(log_tilt(std::cos(theta)) - peak);
  };
  const double numer = simpson([&](double th) { return g(std::cos(th)) * weight(th); }, 0.0, M_PI,
                               intervals);
  const double denom = simpson(weight, 0.0, M_PI, intervals);
  return numer / denom;
}

inline double vmf_tangent_moment(const std::function<double(double)>& g, double kappa,
                                 std::size_t dim) {
  return tangent_moment(g, [kappa](double t) { return kappa * t; }, dim);
}

inline double watson_tangent_moment(const std::function<double(double)>& g, double kappa,
                                    std::size_t dim) {
  return tangent_moment(g, [kappa](double t) { return kappa * t * t; }, dim);
}

// Depth-ordered neighborhood straight from the definitions: compute the
// global depth of every sample point with respect to the reflected region,
// order by the case rule of the reflected-region analysis (descending when
// the point is its depth median, ascending when antipodal), and take the
// first k. Ties broken by ascending index, like the implementation.
inline std::vector<std::size_t> brute_force_neighborhood(const SphericalSample& sample,
                                                         std::size_t i, std::size_t k) {
  const SphericalSample region = reflected_region(sample, i);
  std::vector<double> depth(sample.size());
  for (std::size_t j = 0; j < sample.size(); ++j) {
    depth[j] = cdd(sample.unit_vector(j), region);
  }
  const ReflectionCase rc = reflection_case(sample, i);
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (j != i) order.push_back(j);
  }
  const bool descending = rc.branch != ReflectionBranch::Antipodal;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (depth[a] != depth[b]) return descending ? depth[a] > depth[b] : depth[a] < depth[b];
    return a < b;
  });
  std::vector<std::size_t> out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.begin(), out.end());
  return out;
}

// Random sample of n points drawn from a two-component vMF mixture; the
// workhorse for the property tests.
inline SphericalSample random_vmf_sample(std::size_t n, std::size_t dim, Rng& rng,
                                         double kappa = 4.0) {
  UnitVector mu1 = sample_uniform_direction(dim, rng);
  UnitVector mu2 = sample_uniform_direction(dim, rng);
  MixtureSpec mix{{{0.5, VmfParams{mu1, kappa}}, {0.5, VmfParams{mu2, kappa}}}};
  return sample_mixture(mix, n, rng);
}

}  // namespace lcdepth::testing
