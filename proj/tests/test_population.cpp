#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcdepth/depth.hpp"
#include "lcdepth/errors.hpp"
#include "lcdepth/population.hpp"
#include "lcdepth/sampling.hpp"
#include "lcdepth/special.hpp"
#include "support/oracles.hpp"

using namespace lcdepth;

namespace {

PopulationDepthOracle uniform_s2_oracle() {
  const double f = 1.0 / (4.0 * M_PI);
  return PopulationDepthOracle::grid_s2([f](const UnitVector&) { return f; }, 400, 300);
}

PopulationDepthOracle vmf_s2_oracle(const UnitVector& mu, double kappa) {
  VmfParams params{mu, kappa};
  return PopulationDepthOracle::grid_s2(
      [params](const UnitVector& x) { return std::exp(log_density_vmf(x, params)); }, 400, 300);
}

}  // namespace

TEST_CASE("oracle mass check") {
  auto oracle = uniform_s2_oracle();
  CHECK(std::abs(oracle.total_mass() - 1.0) <= 1e-3);

  // A density that integrates to 2 is rejected at construction.
  const double f = 2.0 / (4.0 * M_PI);
  CHECK_THROWS_AS(PopulationDepthOracle::grid_s2([f](const UnitVector&) { return f; }, 200, 150),
                  NumericError);
}

TEST_CASE("uniform density: full-sphere depth is 1") {
  auto oracle = uniform_s2_oracle();
  Rng rng(31);
  for (int t = 0; t < 5; ++t) {
    UnitVector x = sample_uniform_direction(3, rng);
    CHECK(population_lcdd(x, oracle, 1.0) == doctest::Approx(1.0).epsilon(2e-3));
  }
}

TEST_CASE("small beta pushes the local depth toward 2") {
  // The O(beta) constant scales with 1/density, so probe points where the
  // distribution actually lives: draws from the vMF itself.
  const UnitVector mu = UnitVector::axis(3, 0);
  auto oracle = vmf_s2_oracle(mu, 10.0);
  Rng rng(32);
  const SphericalSample probes = sample_vmf(VmfParams{mu, 10.0}, 8, rng);
  for (std::size_t t = 0; t < probes.size(); ++t) {
    const double d = population_lcdd(probes.unit_vector(t), oracle, 0.01);
    CHECK(d >= 1.9);
    CHECK(d <= 2.0);
  }
}

TEST_CASE("monotone in beta at the population level") {
  auto oracle = vmf_s2_oracle(UnitVector::axis(3, 0), 10.0);
  UnitVector x(std::vector<double>{0.6, 0.8, 0.0});
  double previous = 2.1;
  for (const double beta : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    const double d = population_lcdd(x, oracle, beta);
    CHECK(d <= previous + 1e-6);
    previous = d;
  }
}

TEST_CASE("beta = 1 at the vMF mean equals the 1D-quadrature global depth") {
  const UnitVector mu = UnitVector::axis(3, 0);
  auto oracle = vmf_s2_oracle(mu, 10.0);
  // CDD(mu, F) = 2 - E[1 - <mu, Y>] = 1 + E[t] by the tangent reduction.
  const double expected =
      1.0 + lcdepth::testing::vmf_tangent_moment([](double t) { return t; }, 10.0, 3);
  CHECK(population_lcdd(mu, oracle, 1.0) == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("monte carlo oracle agrees with the grid oracle") {
  const UnitVector mu = UnitVector::axis(3, 0);
  VmfParams params{mu, 10.0};
  auto density = [params](const UnitVector& x) { return std::exp(log_density_vmf(x, params)); };
  auto grid = PopulationDepthOracle::grid_s2(density, 400, 300);
  auto mc = PopulationDepthOracle::monte_carlo(density, 3, 200000, 7);
  CHECK(std::abs(mc.total_mass() - 1.0) <= 1e-3);
  UnitVector x(std::vector<double>{0.8, 0.0, 0.6});
  for (const double beta : {0.25, 1.0}) {
    CHECK(population_lcdd(x, mc, beta) ==
          doctest::Approx(population_lcdd(x, grid, beta)).epsilon(0.02));
  }
}

TEST_CASE("bad inputs") {
  auto oracle = uniform_s2_oracle();
  UnitVector x = UnitVector::axis(3, 0);
  CHECK_THROWS_AS(population_lcdd(x, oracle, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(population_lcdd(x, oracle, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(population_lcdd(UnitVector::axis(4, 0), oracle, 0.5), std::invalid_argument);
}
