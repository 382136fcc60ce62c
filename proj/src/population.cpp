#include "lcdepth/population.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lcdepth/errors.hpp"
#include "lcdepth/rng.hpp"
#include "lcdepth/special.hpp"

namespace lcdepth {

PopulationDepthOracle::PopulationDepthOracle(SphericalSample points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  for (const double w : weights_) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw std::invalid_argument("PopulationDepthOracle: weights must be finite and nonnegative");
    }
    total_mass_ += w;
  }
  if (std::abs(total_mass_ - 1.0) > 1e-3) {
    throw NumericError("PopulationDepthOracle: density integrates to " +
                       std::to_string(total_mass_) + ", not 1 within 1e-3");
  }
}

PopulationDepthOracle PopulationDepthOracle::monte_carlo(const Density& density, std::size_t dim,
                                                         std::size_t draws, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("PopulationDepthOracle: dim must be at least 2");
  if (draws < 100) throw std::invalid_argument("PopulationDepthOracle: too few draws");
  const double area = surface_area(dim);
  const double w_each = area / static_cast<double>(draws);

  // Stratify the first coordinate t: uniform-measure mass of a t-slab is
  // proportional to its (1 - t^2)^{(q-3)/2} integral; invert the slab CDF
  // numerically on a fine grid, then draw uniformly inside each stratum.
  const std::size_t strata = 100;
  const std::size_t per = draws / strata;
  const std::size_t grid_n = 20000;
  std::vector<double> cdf(grid_n + 1, 0.0);
  const double exponent = 0.5 * (static_cast<double>(dim) - 3.0);
  for (std::size_t g = 1; g <= grid_n; ++g) {
    const double t0 = -1.0 + 2.0 * static_cast<double>(g - 1) / grid_n;
    const double t1 = -1.0 + 2.0 * static_cast<double>(g) / grid_n;
    const double tm = 0.5 * (t0 + t1);
    cdf[g] = cdf[g - 1] + std::pow(std::max(0.0, 1.0 - tm * tm), exponent);
  }
  for (double& c : cdf) c /= cdf[grid_n];
  auto quantile = [&](double p) {
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), p);
    const std::size_t g = std::min<std::size_t>(grid_n, std::max<std::ptrdiff_t>(1, it - cdf.begin()));
    const double frac = (cdf[g] > cdf[g - 1]) ? (p - cdf[g - 1]) / (cdf[g] - cdf[g - 1]) : 0.5;
    return -1.0 + 2.0 * (static_cast<double>(g - 1) + frac) / grid_n;
  };

  Rng rng = Rng(seed).derive({0x706F70ULL});  // oracle stream
  SphericalSample pts;
  std::vector<double> weights;
  weights.reserve(draws);
  std::size_t produced = 0;
  for (std::size_t s = 0; s < strata; ++s) {
    const std::size_t count = (s + 1 == strata) ? (draws - produced) : per;
    for (std::size_t i = 0; i < count; ++i) {
      const double p = (static_cast<double>(s) + rng.next_double()) / strata;
      const double t = std::clamp(quantile(p), -1.0, 1.0);
      // Tangent direction uniform; assemble the point around e_1.
      std::vector<double> v(dim - 1);
      double norm2;
      do {
        norm2 = 0.0;
        for (double& x : v) {
          x = rng.normal();
          norm2 += x * x;
        }
      } while (norm2 < 1e-24);
      const double sv = std::sqrt(std::max(0.0, 1.0 - t * t)) / std::sqrt(norm2);
      std::vector<double> y(dim);
      y[0] = t;
      for (std::size_t k = 1; k < dim; ++k) y[k] = sv * v[k - 1];
      UnitVector point(std::move(y));
      weights.push_back(density(point) * w_each);
      pts.push_back(point);
      ++produced;
    }
  }
  return PopulationDepthOracle(std::move(pts), std::move(weights));
}

PopulationDepthOracle PopulationDepthOracle::grid_s2(const Density& density,
                                                     std::size_t polar_nodes,
                                                     std::size_t azimuth_nodes) {
  if (polar_nodes < 3 || azimuth_nodes < 3) {
    throw std::invalid_argument("PopulationDepthOracle: grid too coarse");
  }
  // On S^2 the surface element in (t, phi) is exactly dt dphi; midpoint
  // cells in both directions.
  SphericalSample pts;
  std::vector<double> weights;
  weights.reserve(polar_nodes * azimuth_nodes);
  const double dt = 2.0 / static_cast<double>(polar_nodes);
  const double dphi = 2.0 * M_PI / static_cast<double>(azimuth_nodes);
  for (std::size_t i = 0; i < polar_nodes; ++i) {
    const double t = -1.0 + (static_cast<double>(i) + 0.5) * dt;
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (std::size_t j = 0; j < azimuth_nodes; ++j) {
      const double phi = (static_cast<double>(j) + 0.5) * dphi;
      UnitVector point(std::vector<double>{t, s * std::cos(phi), s * std::sin(phi)});
      weights.push_back(density(point) * dt * dphi);
      pts.push_back(point);
    }
  }
  return PopulationDepthOracle(std::move(pts), std::move(weights));
}

double population_lcdd(const UnitVector& x, const PopulationDepthOracle& oracle, double beta) {
  if (!(beta > 0.0) || !(beta <= 1.0)) {
    throw std::invalid_argument("population_lcdd: beta must lie in (0, 1]");
  }
  if (x.dim() != oracle.dim()) throw std::invalid_argument("population_lcdd: dimension mismatch");

  const auto& pts = oracle.points();
  const auto& w = oracle.weights();
  const std::size_t n = pts.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = cosine_distance(x.coords(), pts.point(i));

  auto mass_below = [&](double rho) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] <= rho) m += w[i];
    }
    return m;
  };

  double rho;
  if (oracle.total_mass() < beta) {
    if (oracle.total_mass() < beta - 1e-2) {
      throw NumericError("population_lcdd: quadrature mass cannot bracket beta");
    }
    rho = 2.0;  // whole sphere; mass short of beta only by quadrature error
  } else {
    double lo = 0.0, hi = 2.0;
    while (hi - lo > oracle.radius_tolerance) {
      const double mid = 0.5 * (lo + hi);
      if (mass_below(mid) >= beta) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    rho = hi;
  }

  double trimmed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] <= rho) trimmed += w[i] * d[i];
  }
  return 2.0 - trimmed / beta;
}

}  // namespace lcdepth
