#include "lcdepth/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lcdepth/errors.hpp"

namespace lcdepth {

namespace {

constexpr double kTermRatioStop = 1e-16;
constexpr int kMaxTerms = 20000;
constexpr double kRescaleAt = 1e250;

}  // namespace

double log_bessel_i(double nu, double x) {
  if (nu < 0.0 || x < 0.0) throw std::invalid_argument("log_bessel_i: nu and x must be nonnegative");
  if (x > 500.0) {
    throw NumericError("log_bessel_i: x = " + std::to_string(x) + " beyond series reliability (max 500)");
  }
  if (x == 0.0) {
    if (nu == 0.0) return 0.0;
    return -std::numeric_limits<double>::infinity();
  }
  const double quarter_x2 = 0.25 * x * x;
  double term = std::exp(-std::lgamma(nu + 1.0));  // k = 0
  double sum = term;
  double log_scale = 0.0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term *= quarter_x2 / (static_cast<double>(k) * (nu + static_cast<double>(k)));
    sum += term;
    if (sum > kRescaleAt) {
      sum /= kRescaleAt;
      term /= kRescaleAt;
      log_scale += std::log(kRescaleAt);
    }
    // Terms grow until k ~ x/2; only trust the ratio test past the peak.
    if (term < kTermRatioStop * sum && static_cast<double>(k) > 0.5 * x) {
      return nu * std::log(0.5 * x) + log_scale + std::log(sum);
    }
  }
  throw NumericError("log_bessel_i: series did not converge");
}

double log_kummer_m(double a, double b, double z) {
  if (!(a > 0.0) || !(b >= a)) throw std::invalid_argument("log_kummer_m: need 0 < a <= b");
  if (z < 0.0) {
    if (b == a) {
      // M(a, a, z) = e^z exactly.
      return z;
    }
    return z + log_kummer_m(b - a, b, -z);
  }
  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    const double kk = static_cast<double>(k);
    term *= (a + kk - 1.0) / ((b + kk - 1.0) * kk) * z;
    sum += term;
    if (sum > kRescaleAt) {
      sum /= kRescaleAt;
      term /= kRescaleAt;
      log_scale += std::log(kRescaleAt);
    }
    if (term < kTermRatioStop * sum && kk > z) {
      return log_scale + std::log(sum);
    }
  }
  throw NumericError("log_kummer_m: series did not converge at z = " + std::to_string(z));
}

double log_surface_area(std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("log_surface_area: dim must be at least 2");
  const double q = static_cast<double>(dim);
  return std::log(2.0) + 0.5 * q * std::log(M_PI) - std::lgamma(0.5 * q);
}

double surface_area(std::size_t dim) { return std::exp(log_surface_area(dim)); }

}  // namespace lcdepth
