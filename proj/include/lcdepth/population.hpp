#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lcdepth/sphere.hpp"

namespace lcdepth {

// Quadrature view of a distribution on S^{q-1}: a weighted point cloud
// whose weights sum to the total probability mass. Two constructions:
//   - monte_carlo: uniform draws stratified on the first coordinate,
//     weighted by density * area / count (default, any dimension);
//   - grid_s2: product grid on S^2, where the surface measure is exactly
//     dt x dphi, so the only error is the density's smoothness.
// Construction enforces that the density integrates to 1 within 1e-3
// under the oracle's own quadrature.
class PopulationDepthOracle {
 public:
  using Density = std::function<double(const UnitVector&)>;

  static PopulationDepthOracle monte_carlo(const Density& density, std::size_t dim,
                                           std::size_t draws = 200000, std::uint64_t seed = 0);
  static PopulationDepthOracle grid_s2(const Density& density, std::size_t polar_nodes = 500,
                                       std::size_t azimuth_nodes = 400);

  std::size_t dim() const { return points_.dim(); }
  std::size_t size() const { return points_.size(); }
  double total_mass() const { return total_mass_; }

  const SphericalSample& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  double radius_tolerance = 1e-6;

 private:
  PopulationDepthOracle(SphericalSample points, std::vector<double> weights);

  SphericalSample points_;
  std::vector<double> weights_;
  double total_mass_ = 0.0;
};

// Population local cosine distance depth at locality level beta: solves
// F{d_cos(x, Y) <= rho} = beta by bisection on the quadrature CDF, then
// returns 2 - (1/beta) E[d_cos(x, Y) 1{d_cos <= rho}]. Throws NumericError
// when the quadrature mass cannot bracket beta.
double population_lcdd(const UnitVector& x, const PopulationDepthOracle& oracle, double beta);

}  // namespace lcdepth
