#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lcdepth/rng.hpp"

namespace lcdepth {

inline constexpr double kUnitNormTol = 1e-12;   // membership tolerance for S^{q-1}
inline constexpr double kMinInputNorm = 1e-9;   // below this, input is rejected as a data error
inline constexpr double kPointEqualityTol = 1e-12;  // cosine-distance equality band

// A point on S^{q-1}. The constructor normalizes (input norm must be at
// least kMinInputNorm) and guarantees ||coords||_2 = 1 within kUnitNormTol.
// Already-unit input is stored verbatim so serialized samples round-trip
// bit-exactly.
class UnitVector {
 public:
  explicit UnitVector(std::vector<double> coords);

  static UnitVector axis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

double dot(std::span<const double> a, std::span<const double> b);

// d_cos(x, y) = 1 - <x, y>, clamped into [0, 2] against round-off.
double cosine_distance(std::span<const double> x, std::span<const double> y);
double cosine_distance(const UnitVector& x, const UnitVector& y);

// Same point within the equality band (cosine distance <= kPointEqualityTol).
bool approx_equal(const UnitVector& x, const UnitVector& y);

// An ordered collection of points on a common S^{q-1}, stored row-major,
// with optional class labels in {1, 2}.
class SphericalSample {
 public:
  SphericalSample() = default;

  void push_back(const UnitVector& x);
  void push_back(const UnitVector& x, int label);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  std::size_t dim() const { return dim_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  UnitVector unit_vector(std::size_t i) const;

  bool has_labels() const { return !labels_.empty(); }
  int label(std::size_t i) const;
  const std::vector<int>& labels() const { return labels_; }
  void set_labels(std::vector<int> labels);
  void clear_labels() { labels_.clear(); }

  // Copy without point i (labels dropped).
  SphericalSample without(std::size_t i) const;
  // Copy of the points whose label equals `label` (labels dropped).
  SphericalSample where_label(int label) const;

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<int> labels_;
};

// Mirror image of x through the axis spanned by `axis`:
// R(x, a) = 2 a <a, x> - x, re-normalized onto the sphere.
UnitVector reflect(const UnitVector& x, const UnitVector& axis);

// Augmented sample X u { R(x_j, x_i) : j != i }; size 2n - 1.
SphericalSample reflected_region(const SphericalSample& sample, std::size_t i);

// Map a composition (nonnegative, positive sum) to the sphere:
// normalize to sum 1, then componentwise square root.
UnitVector sqrt_compositional_embed(std::span<const double> v);

// Dense q x q orthogonal matrix, Haar-distributed (Gaussian + Gram-Schmidt).
// Test harness for the rotation-invariance properties.
class OrthogonalMatrix {
 public:
  OrthogonalMatrix(std::size_t dim, std::vector<double> row_major);

  std::size_t dim() const { return dim_; }
  double at(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  UnitVector apply(const UnitVector& x) const;
  SphericalSample apply(const SphericalSample& sample) const;
  OrthogonalMatrix transposed() const;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

OrthogonalMatrix random_orthogonal(std::size_t dim, Rng& rng);

}  // namespace lcdepth
