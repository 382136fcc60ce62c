#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcdepth/errors.hpp"
#include "lcdepth/special.hpp"
#include "support/oracles.hpp"

using namespace lcdepth;
using lcdepth::testing::simpson;

namespace {

// Independent integral representations, used as oracles for the series.
// I_nu(x) = (x/2)^nu / (sqrt(pi) Gamma(nu + 1/2)) * Int_{-1}^{1} e^{xt} (1-t^2)^{nu-1/2} dt;
// with t = cos(phi) the integrand e^{x cos phi} sin^{2 nu}(phi) is smooth,
// so the composite Simpson rule converges at full order.
double log_bessel_oracle(double nu, double x) {
  const double peak = x;  // factor out e^x
  const double integral = simpson(
      [&](double phi) {
        return std::exp(x * std::cos(phi) - peak + 2.0 * nu * std::log(std::sin(phi) + 1e-300));
      },
      0.0, M_PI, 40000);
  return nu * std::log(0.5 * x) - 0.5 * std::log(M_PI) - std::lgamma(nu + 0.5) + peak +
         std::log(integral);
}

// M(1/2, b, z) = Gamma(b) / (Gamma(1/2) Gamma(b-1/2)) Int_0^1 e^{zt} t^{-1/2} (1-t)^{b-3/2} dt;
// t = cos^2(theta) turns the integrand into 2 e^{z cos^2 theta} sin^{2b-2}(theta).
double log_kummer_oracle_half(double b, double z) {
  const double peak = std::max(0.0, z);
  const double integral = simpson(
      [&](double theta) {
        const double c = std::cos(theta);
        return 2.0 *
               std::exp(z * c * c - peak + (2.0 * b - 2.0) * std::log(std::sin(theta) + 1e-300));
      },
      0.0, M_PI / 2.0, 40000);
  return std::lgamma(b) - std::lgamma(0.5) - std::lgamma(b - 0.5) + peak + std::log(integral);
}

}  // namespace

TEST_CASE("bessel series against the integral representation") {
  for (const double nu : {0.5, 1.0, 4.0, 11.5}) {
    for (const double x : {0.5, 5.0, 17.0, 50.0, 200.0}) {
      CHECK(log_bessel_i(nu, x) == doctest::Approx(log_bessel_oracle(nu, x)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(log_bessel_i(0.5, 501.0), NumericError);
  CHECK_THROWS_AS(log_bessel_i(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("kummer series against the integral representation") {
  for (const double b : {1.5, 5.0, 12.5}) {
    for (const double z : {0.0, 3.0, 17.0, 50.0, -3.0, -17.0, -50.0}) {
      CHECK(log_kummer_m(0.5, b, z) ==
            doctest::Approx(log_kummer_oracle_half(b, z)).epsilon(1e-9));
    }
  }
  // M(a, b, 0) = 1.
  CHECK(log_kummer_m(0.5, 1.5, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(log_kummer_m(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("surface areas") {
  CHECK(surface_area(2) == doctest::Approx(2.0 * M_PI));
  CHECK(surface_area(3) == doctest::Approx(4.0 * M_PI));
  CHECK(surface_area(4) == doctest::Approx(2.0 * M_PI * M_PI));
}
