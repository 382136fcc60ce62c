#include "lcdepth/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lcdepth/errors.hpp"
#include "lcdepth/special.hpp"

namespace lcdepth {

namespace {

// Householder map taking e_1 to mu (identity when mu == e_1). Orthogonal,
// so composing a tangent-normal draw around e_1 with it yields the draw
// around mu.
class AxisRotation {
 public:
  explicit AxisRotation(const UnitVector& mu) {
    std::vector<double> u(mu.dim());
    u[0] = 1.0 - mu[0];
    for (std::size_t i = 1; i < u.size(); ++i) u[i] = -mu[i];
    double norm2 = 0.0;
    for (const double x : u) norm2 += x * x;
    if (norm2 > 1e-24) {
      const double norm = std::sqrt(norm2);
      for (double& x : u) x /= norm;
      u_ = std::move(u);
    }
  }

  UnitVector apply(std::vector<double> y) const {
    if (!u_.empty()) {
      double proj = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) proj += u_[i] * y[i];
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= 2.0 * proj * u_[i];
    }
    return UnitVector(std::move(y));
  }

 private:
  std::vector<double> u_;
};

// Point at cosine t from e_1, tangent direction uniform on the equator.
std::vector<double> tangent_normal_point(double t, std::size_t dim, Rng& rng) {
  t = std::clamp(t, -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  // Uniform direction in the (dim-1)-dimensional tangent space.
  std::vector<double> v(dim - 1);
  double norm2;
  do {
    norm2 = 0.0;
    for (double& x : v) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 < 1e-24);
  const double norm = std::sqrt(norm2);
  std::vector<double> y(dim);
  y[0] = t;
  for (std::size_t i = 1; i < dim; ++i) y[i] = s * v[i - 1] / norm;
  return y;
}

// Wood's rejection sampler for the vMF angle cosine: target density
// proportional to (1 - t^2)^{(q-3)/2} exp(kappa t) on [-1, 1].
double sample_vmf_cosine(double kappa, std::size_t dim, Rng& rng, RejectionStats* stats) {
  const double qm1 = static_cast<double>(dim - 1);
  const double b = qm1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + qm1 * qm1));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + qm1 * std::log(1.0 - x0 * x0);
  const double half = 0.5 * qm1;
  for (;;) {
    const double z = rng.beta(half, half);
    const double w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = rng.next_double();
    if (stats) ++stats->proposals;
    if (kappa * w + qm1 * std::log(1.0 - x0 * w) - c >= std::log(u)) {
      if (stats) ++stats->accepts;
      return w;
    }
  }
}

// Watson angle sampler in theta space: density proportional to
// sin^{q-2}(theta) exp(kappa cos^2 theta) on (0, pi), bounded for all q >= 2,
// rejection from the uniform with an analytic envelope height.
double sample_watson_cosine(double kappa, std::size_t dim, Rng& rng, RejectionStats* stats) {
  const double qm2 = static_cast<double>(dim - 2);
  auto log_target = [&](double theta) {
    const double ct = std::cos(theta);
    double h = kappa * ct * ct;
    if (qm2 > 0.0) h += qm2 * std::log(std::sin(theta));
    return h;
  };
  // Stationary points: theta = pi/2 always; for kappa > 0 an interior pair at
  // sin^2 theta = (q-2)/(2 kappa); for q = 2 and kappa > 0 the endpoints.
  double hmax = log_target(M_PI / 2.0);
  if (kappa > 0.0) {
    if (qm2 > 0.0 && qm2 < 2.0 * kappa) {
      const double s2 = qm2 / (2.0 * kappa);
      hmax = std::max(hmax, 0.5 * qm2 * std::log(s2) + kappa * (1.0 - s2));
    }
    if (qm2 == 0.0) hmax = std::max(hmax, kappa);
  }
  for (;;) {
    const double theta = rng.next_double() * M_PI;
    const double u = rng.next_double();
    if (stats) ++stats->proposals;
    if (theta > 0.0 && std::log(u) <= log_target(theta) - hmax) {
      if (stats) ++stats->accepts;
      return std::cos(theta);
    }
  }
}

}  // namespace

void VmfParams::validate() const {
  if (kappa < 0.0) throw std::invalid_argument("VmfParams: kappa must be nonnegative");
}

void MixtureSpec::validate() const {
  if (components.empty()) throw std::invalid_argument("MixtureSpec: no components");
  double total = 0.0;
  const std::size_t d = dim();
  for (const auto& comp : components) {
    if (comp.weight < 0.0) throw std::invalid_argument("MixtureSpec: negative weight");
    total += comp.weight;
    const std::size_t cd =
        std::visit([](const auto& p) { return p.mu.dim(); }, comp.params);
    if (cd != d) throw std::invalid_argument("MixtureSpec: components differ in dimension");
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("MixtureSpec: weights must sum to 1");
  }
}

std::size_t MixtureSpec::dim() const {
  if (components.empty()) throw std::invalid_argument("MixtureSpec: no components");
  return std::visit([](const auto& p) { return p.mu.dim(); }, components.front().params);
}

UnitVector sample_uniform_direction(std::size_t dim, Rng& rng) {
  if (dim < 2) throw std::invalid_argument("sample_uniform_direction: dim must be at least 2");
  std::vector<double> v(dim);
  double norm2;
  do {
    norm2 = 0.0;
    for (double& x : v) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 < 1e-24);
  return UnitVector(std::move(v));
}

SphericalSample sample_vmf(const VmfParams& params, std::size_t n, Rng& rng,
                           RejectionStats* stats) {
  params.validate();
  if (n == 0) throw std::invalid_argument("sample_vmf: n must be positive");
  const std::size_t dim = params.mu.dim();
  SphericalSample out;
  if (params.kappa == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_uniform_direction(dim, rng));
    return out;
  }
  const AxisRotation rot(params.mu);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = sample_vmf_cosine(params.kappa, dim, rng, stats);
    out.push_back(rot.apply(tangent_normal_point(t, dim, rng)));
  }
  return out;
}

SphericalSample sample_watson(const WatsonParams& params, std::size_t n, Rng& rng,
                              RejectionStats* stats) {
  if (n == 0) throw std::invalid_argument("sample_watson: n must be positive");
  const std::size_t dim = params.mu.dim();
  SphericalSample out;
  if (params.kappa == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_uniform_direction(dim, rng));
    return out;
  }
  const AxisRotation rot(params.mu);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = sample_watson_cosine(params.kappa, dim, rng, stats);
    out.push_back(rot.apply(tangent_normal_point(t, dim, rng)));
  }
  return out;
}

SphericalSample sample_mixture(const MixtureSpec& spec, std::size_t n, Rng& rng,
                               RejectionStats* stats) {
  spec.validate();
  if (n == 0) throw std::invalid_argument("sample_mixture: n must be positive");
  SphericalSample out;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.next_double();
    double cum = 0.0;
    std::size_t pick = spec.components.size() - 1;
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
      cum += spec.components[c].weight;
      if (u < cum) {
        pick = c;
        break;
      }
    }
    const auto& chosen = spec.components[pick].params;
    if (std::holds_alternative<VmfParams>(chosen)) {
      const auto one = sample_vmf(std::get<VmfParams>(chosen), 1, rng, stats);
      out.push_back(one.unit_vector(0));
    } else {
      const auto one = sample_watson(std::get<WatsonParams>(chosen), 1, rng, stats);
      out.push_back(one.unit_vector(0));
    }
  }
  return out;
}

double log_density_vmf(const UnitVector& x, const VmfParams& params) {
  params.validate();
  if (x.dim() != params.mu.dim()) throw std::invalid_argument("log_density_vmf: dimension mismatch");
  const double q = static_cast<double>(x.dim());
  if (params.kappa == 0.0) return -log_surface_area(x.dim());
  const double nu = 0.5 * q - 1.0;
  const double log_c = nu * std::log(params.kappa) - 0.5 * q * std::log(2.0 * M_PI) -
                       log_bessel_i(nu, params.kappa);
  return log_c + params.kappa * dot(params.mu.coords(), x.coords());
}

double log_density_watson(const UnitVector& x, const WatsonParams& params) {
  if (x.dim() != params.mu.dim()) {
    throw std::invalid_argument("log_density_watson: dimension mismatch");
  }
  const double q = static_cast<double>(x.dim());
  const double t = dot(params.mu.coords(), x.coords());
  return -log_kummer_m(0.5, 0.5 * q, params.kappa) + params.kappa * t * t -
         log_surface_area(x.dim());
}

std::vector<UnitVector> constrained_centers(const std::vector<CenterConstraintList>& constraints,
                                            std::size_t dim, Rng& rng, std::size_t max_tries) {
  if (dim < 2) throw std::invalid_argument("constrained_centers: dim must be at least 2");
  for (std::size_t t = 0; t < constraints.size(); ++t) {
    for (const auto& c : constraints[t]) {
      if (c.ref > t) throw std::invalid_argument("constrained_centers: constraint references a later center");
      if (c.anchor && (c.anchor->first > t || c.anchor->second > t)) {
        throw std::invalid_argument("constrained_centers: anchor references a later center");
      }
    }
  }

  constexpr std::size_t kMaxRestarts = 200;
  std::size_t failed_center = 0;
  std::size_t failed_constraint = 0;
  for (std::size_t restart = 0; restart < kMaxRestarts; ++restart) {
    std::vector<UnitVector> centers;
    centers.push_back(UnitVector::axis(dim, 0));
    bool ok = true;
    for (std::size_t t = 0; t < constraints.size() && ok; ++t) {
      bool placed = false;
      for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
        UnitVector cand = sample_uniform_direction(dim, rng);
        bool pass = true;
        for (std::size_t ci = 0; ci < constraints[t].size(); ++ci) {
          const auto& c = constraints[t][ci];
          double lo = c.lo;
          double hi = c.hi;
          if (c.anchor) {
            const double d = cosine_distance(centers[c.anchor->first], centers[c.anchor->second]);
            lo = std::max(lo, d - c.eps);
            hi = std::min(hi, d + c.eps);
          }
          const double d = cosine_distance(cand, centers[c.ref]);
          if (d < lo || d > hi) {
            pass = false;
            failed_center = t + 1;
            failed_constraint = ci;
            break;
          }
        }
        if (pass) {
          centers.push_back(std::move(cand));
          placed = true;
          break;
        }
      }
      if (!placed) ok = false;  // restart the whole set
    }
    if (ok) return centers;
  }
  throw NumericError("constrained_centers: could not satisfy constraint " +
                     std::to_string(failed_constraint) + " of center " +
                     std::to_string(failed_center) + " (rejection budget exhausted)");
}

}  // namespace lcdepth
