#include "lcdepth/depth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lcdepth {

namespace {

constexpr double kFloorGuard = 1e-9;

// Distances from x to every point of the sample, optionally skipping one
// index (member mode).
std::vector<double> distances_to(std::span<const double> x, const SphericalSample& sample,
                                 std::optional<std::size_t> skip) {
  if (sample.empty()) throw std::invalid_argument("depth: empty sample");
  if (x.size() != sample.dim()) throw std::invalid_argument("depth: dimension mismatch");
  std::vector<double> d;
  d.reserve(sample.size());
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (skip && *skip == j) continue;
    d.push_back(cosine_distance(x, sample.point(j)));
  }
  return d;
}

// Sum of the first k entries of an ascending-sorted distance vector.
double prefix_sum(const std::vector<double>& sorted, std::size_t k) {
  double s = 0.0;
  for (std::size_t j = 0; j < k; ++j) s += sorted[j];
  return s;
}

}  // namespace

void DepthConfig::validate() const {
  if (!(beta > 0.0) || !(beta <= 1.0)) {
    throw std::invalid_argument("DepthConfig: beta must lie in (0, 1]");
  }
}

std::size_t neighborhood_size(double beta, std::size_t candidates) {
  if (candidates == 0) throw std::invalid_argument("neighborhood_size: no candidates");
  const auto k = static_cast<std::size_t>(std::floor(beta * static_cast<double>(candidates) + kFloorGuard));
  return std::clamp<std::size_t>(k, 1, candidates);
}

double cdd(std::span<const double> x, const SphericalSample& sample) {
  auto d = distances_to(x, sample, std::nullopt);
  std::sort(d.begin(), d.end());
  return 2.0 - prefix_sum(d, d.size()) / static_cast<double>(d.size());
}

double cdd(const UnitVector& x, const SphericalSample& sample) {
  return cdd(x.coords(), sample);
}

ReflectionCase reflection_case(const SphericalSample& sample, std::size_t i) {
  if (i >= sample.size()) throw std::out_of_range("reflection_case: index out of range");
  if (sample.size() < 2) throw std::invalid_argument("reflection_case: need at least 2 points");
  const auto xi = sample.point(i);
  double a = 0.0;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    if (k == i) continue;
    a += dot(xi, sample.point(k));
  }
  const double c = 1.0 + 2.0 * a;
  ReflectionBranch branch;
  if (std::abs(c) <= kDegenerateBand) {
    branch = ReflectionBranch::Degenerate;
  } else if (c > 0.0) {
    branch = ReflectionBranch::DepthMedian;
  } else {
    branch = ReflectionBranch::Antipodal;
  }
  return {branch, c};
}

std::vector<std::size_t> depth_neighborhood(const SphericalSample& sample, std::size_t i,
                                            const DepthConfig& cfg) {
  cfg.validate();
  if (i >= sample.size()) throw std::out_of_range("depth_neighborhood: index out of range");
  if (sample.size() < 2) throw std::invalid_argument("depth_neighborhood: need at least 2 points");

  const auto xi = sample.point(i);
  std::vector<std::size_t> order;
  order.reserve(sample.size() - 1);
  std::vector<double> dist(sample.size(), 0.0);
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (j == i) continue;
    dist[j] = cosine_distance(xi, sample.point(j));
    order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return a < b;  // TieBreak::ByAscendingIndex
  });

  const std::size_t k = neighborhood_size(cfg.beta, sample.size() - 1);
  std::vector<std::size_t> out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.begin(), out.end());
  return out;
}

double lcdd(const SphericalSample& sample, std::size_t i, const DepthConfig& cfg) {
  cfg.validate();
  if (i >= sample.size()) throw std::out_of_range("lcdd: index out of range");
  if (sample.size() < 2) throw std::invalid_argument("lcdd: member mode needs at least 2 points");
  auto d = distances_to(sample.point(i), sample, i);
  std::sort(d.begin(), d.end());
  const std::size_t k = neighborhood_size(cfg.beta, d.size());
  return 2.0 - prefix_sum(d, k) / static_cast<double>(k);
}

double lcdd(std::span<const double> x, const SphericalSample& sample, const DepthConfig& cfg) {
  cfg.validate();
  auto d = distances_to(x, sample, std::nullopt);
  std::sort(d.begin(), d.end());
  const std::size_t k = neighborhood_size(cfg.beta, d.size());
  return 2.0 - prefix_sum(d, k) / static_cast<double>(k);
}

double lcdd(const UnitVector& x, const SphericalSample& sample, const DepthConfig& cfg) {
  return lcdd(x.coords(), sample, cfg);
}

std::vector<double> lcdd_multi_beta(std::span<const double> query, const SphericalSample& ref,
                                    std::optional<std::size_t> skip,
                                    std::span<const double> betas) {
  auto d = distances_to(query, ref, skip);
  std::sort(d.begin(), d.end());

  // Running prefix sums: evaluate betas in ascending-k order, then restore
  // the caller's order.
  std::vector<std::size_t> ks(betas.size());
  for (std::size_t b = 0; b < betas.size(); ++b) {
    DepthConfig cfg{betas[b]};
    cfg.validate();
    ks[b] = neighborhood_size(betas[b], d.size());
  }
  std::vector<std::size_t> idx(betas.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ks[a] < ks[b]; });

  std::vector<double> out(betas.size());
  double sum = 0.0;
  std::size_t consumed = 0;
  for (const std::size_t b : idx) {
    while (consumed < ks[b]) sum += d[consumed++];
    out[b] = 2.0 - sum / static_cast<double>(ks[b]);
  }
  return out;
}

std::vector<std::vector<double>> lcdd_profile(const SphericalSample& sample,
                                              std::span<const double> betas) {
  if (sample.size() < 2) throw std::invalid_argument("lcdd_profile: need at least 2 points");
  std::vector<std::vector<double>> rows(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    rows[i] = lcdd_multi_beta(sample.point(i), sample, i, betas);
  }
  return rows;
}

}  // namespace lcdepth
