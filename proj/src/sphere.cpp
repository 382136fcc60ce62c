#include "lcdepth/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lcdepth {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (const double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw std::invalid_argument("UnitVector: dimension must be at least 2");
  }
  const double n = norm2(coords_);
  if (!(n >= kMinInputNorm) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitVector: input norm below 1e-9 (or non-finite)");
  }
  if (std::abs(n - 1.0) > kUnitNormTol) {
    for (double& x : coords_) x /= n;
  }
}

UnitVector UnitVector::axis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("UnitVector::axis: index out of range");
  std::vector<double> v(dim, 0.0);
  v[index] = 1.0;
  return UnitVector(std::move(v));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double cosine_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("cosine_distance: dimension mismatch");
  }
  const double d = 1.0 - dot(x, y);
  return std::clamp(d, 0.0, 2.0);
}

double cosine_distance(const UnitVector& x, const UnitVector& y) {
  return cosine_distance(x.coords(), y.coords());
}

bool approx_equal(const UnitVector& x, const UnitVector& y) {
  return cosine_distance(x, y) <= kPointEqualityTol;
}

void SphericalSample::push_back(const UnitVector& x) {
  if (!labels_.empty()) {
    throw std::invalid_argument("SphericalSample: mixing labeled and unlabeled points");
  }
  if (n_ == 0) {
    dim_ = x.dim();
  } else if (x.dim() != dim_) {
    throw std::invalid_argument("SphericalSample: dimension mismatch");
  }
  coords_.insert(coords_.end(), x.coords().begin(), x.coords().end());
  ++n_;
}

void SphericalSample::push_back(const UnitVector& x, int label) {
  if (n_ != labels_.size()) {
    throw std::invalid_argument("SphericalSample: mixing labeled and unlabeled points");
  }
  if (label != 1 && label != 2) {
    throw std::invalid_argument("SphericalSample: label must be 1 or 2");
  }
  if (n_ == 0) {
    dim_ = x.dim();
  } else if (x.dim() != dim_) {
    throw std::invalid_argument("SphericalSample: dimension mismatch");
  }
  coords_.insert(coords_.end(), x.coords().begin(), x.coords().end());
  labels_.push_back(label);
  ++n_;
}

UnitVector SphericalSample::unit_vector(std::size_t i) const {
  const auto p = point(i);
  return UnitVector(std::vector<double>(p.begin(), p.end()));
}

int SphericalSample::label(std::size_t i) const {
  if (labels_.empty()) throw std::logic_error("SphericalSample: no labels present");
  return labels_[i];
}

void SphericalSample::set_labels(std::vector<int> labels) {
  if (labels.size() != n_) {
    throw std::invalid_argument("SphericalSample: label count must match point count");
  }
  for (const int l : labels) {
    if (l != 1 && l != 2) throw std::invalid_argument("SphericalSample: label must be 1 or 2");
  }
  labels_ = std::move(labels);
}

SphericalSample SphericalSample::without(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("SphericalSample::without: index out of range");
  SphericalSample out;
  for (std::size_t j = 0; j < n_; ++j) {
    if (j == i) continue;
    out.push_back(unit_vector(j));
  }
  return out;
}

SphericalSample SphericalSample::where_label(int label) const {
  if (labels_.empty()) throw std::logic_error("SphericalSample: no labels present");
  SphericalSample out;
  for (std::size_t j = 0; j < n_; ++j) {
    if (labels_[j] == label) out.push_back(unit_vector(j));
  }
  return out;
}

UnitVector reflect(const UnitVector& x, const UnitVector& axis) {
  if (x.dim() != axis.dim()) {
    throw std::invalid_argument("reflect: dimension mismatch");
  }
  const double proj = dot(axis.coords(), x.coords());
  std::vector<double> out(x.dim());
  for (std::size_t k = 0; k < x.dim(); ++k) {
    out[k] = 2.0 * axis[k] * proj - x[k];
  }
  // The UnitVector constructor re-normalizes any drift.
  return UnitVector(std::move(out));
}

SphericalSample reflected_region(const SphericalSample& sample, std::size_t i) {
  if (i >= sample.size()) {
    throw std::out_of_range("reflected_region: index out of range");
  }
  if (sample.size() < 2) {
    throw std::invalid_argument("reflected_region: sample must have at least 2 points");
  }
  const UnitVector center = sample.unit_vector(i);
  SphericalSample out;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    out.push_back(sample.unit_vector(j));
  }
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (j == i) continue;
    out.push_back(reflect(sample.unit_vector(j), center));
  }
  return out;
}

UnitVector sqrt_compositional_embed(std::span<const double> v) {
  if (v.size() < 2) {
    throw std::invalid_argument("sqrt_compositional_embed: need at least 2 components");
  }
  double total = 0.0;
  for (const double x : v) {
    if (x < 0.0 || !std::isfinite(x)) {
      throw std::invalid_argument("sqrt_compositional_embed: negative or non-finite component");
    }
    total += x;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("sqrt_compositional_embed: component sum must be positive");
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::sqrt(v[i] / total);
  }
  return UnitVector(std::move(out));
}

OrthogonalMatrix::OrthogonalMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) {
    throw std::invalid_argument("OrthogonalMatrix: size mismatch");
  }
}

UnitVector OrthogonalMatrix::apply(const UnitVector& x) const {
  if (x.dim() != dim_) throw std::invalid_argument("OrthogonalMatrix::apply: dimension mismatch");
  std::vector<double> out(dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) s += data_[r * dim_ + c] * x[c];
    out[r] = s;
  }
  return UnitVector(std::move(out));
}

SphericalSample OrthogonalMatrix::apply(const SphericalSample& sample) const {
  SphericalSample out;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (sample.has_labels()) {
      out.push_back(apply(sample.unit_vector(i)), sample.label(i));
    } else {
      out.push_back(apply(sample.unit_vector(i)));
    }
  }
  return out;
}

OrthogonalMatrix OrthogonalMatrix::transposed() const {
  std::vector<double> t(dim_ * dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) t[c * dim_ + r] = data_[r * dim_ + c];
  }
  return OrthogonalMatrix(dim_, std::move(t));
}

OrthogonalMatrix random_orthogonal(std::size_t dim, Rng& rng) {
  if (dim < 2) throw std::invalid_argument("random_orthogonal: dim must be at least 2");
  // Columns: Gaussian vectors, modified Gram-Schmidt. Restart a column in the
  // (measure-zero) event it degenerates.
  std::vector<double> m(dim * dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (;;) {
      for (std::size_t r = 0; r < dim; ++r) m[r * dim + c] = rng.normal();
      for (std::size_t k = 0; k < c; ++k) {
        double proj = 0.0;
        for (std::size_t r = 0; r < dim; ++r) proj += m[r * dim + k] * m[r * dim + c];
        for (std::size_t r = 0; r < dim; ++r) m[r * dim + c] -= proj * m[r * dim + k];
      }
      double nrm = 0.0;
      for (std::size_t r = 0; r < dim; ++r) nrm += m[r * dim + c] * m[r * dim + c];
      nrm = std::sqrt(nrm);
      if (nrm > 1e-8) {
        for (std::size_t r = 0; r < dim; ++r) m[r * dim + c] /= nrm;
        break;
      }
    }
  }
  return OrthogonalMatrix(dim, std::move(m));
}

}  // namespace lcdepth
