#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "lcdepth/rng.hpp"
#include "lcdepth/sphere.hpp"

namespace lcdepth {

// von Mises-Fisher: density C_q(kappa) exp(kappa <mu, x>), kappa >= 0.
struct VmfParams {
  UnitVector mu;
  double kappa = 0.0;

  void validate() const;
};

// Watson: density proportional to exp(kappa <mu, x>^2); bipolar for
// kappa > 0, girdle for kappa < 0, uniform at 0.
struct WatsonParams {
  UnitVector mu;
  double kappa = 0.0;
};

using ComponentParams = std::variant<VmfParams, WatsonParams>;

struct MixtureComponent {
  double weight;
  ComponentParams params;
};

struct MixtureSpec {
  std::vector<MixtureComponent> components;

  void validate() const;
  std::size_t dim() const;
};

// Rejection-sampler bookkeeping, for acceptance-rate checks.
struct RejectionStats {
  std::size_t proposals = 0;
  std::size_t accepts = 0;
};

UnitVector sample_uniform_direction(std::size_t dim, Rng& rng);

SphericalSample sample_vmf(const VmfParams& params, std::size_t n, Rng& rng,
                           RejectionStats* stats = nullptr);
SphericalSample sample_watson(const WatsonParams& params, std::size_t n, Rng& rng,
                              RejectionStats* stats = nullptr);
SphericalSample sample_mixture(const MixtureSpec& spec, std::size_t n, Rng& rng,
                               RejectionStats* stats = nullptr);

// Log densities with respect to the surface measure on S^{q-1}.
double log_density_vmf(const UnitVector& x, const VmfParams& params);
double log_density_watson(const UnitVector& x, const WatsonParams& params);

// One pairwise cosine-distance requirement on a new center. The interval is
// either literal [lo, hi], or (when `anchor` is set) the realized distance
// between two earlier centers plus/minus eps.
struct CenterConstraint {
  std::size_t ref;  // earlier center the distance is measured to
  double lo = 0.0;
  double hi = 2.0;
  std::optional<std::pair<std::size_t, std::size_t>> anchor;
  double eps = 0.0;
};

using CenterConstraintList = std::vector<CenterConstraint>;

// Generates centers on S^{q-1} by rejection. Center 0 is fixed at e_1;
// constraints[t] governs center t+1 and may reference centers 0..t only.
// Each center gets up to max_tries uniform proposals; on exhaustion the
// whole set is restarted (coupled constraints can make a partial set
// unsatisfiable). Throws NumericError naming the offending constraint once
// restarts are exhausted.
std::vector<UnitVector> constrained_centers(const std::vector<CenterConstraintList>& constraints,
                                            std::size_t dim, Rng& rng,
                                            std::size_t max_tries = 100000);

}  // namespace lcdepth
