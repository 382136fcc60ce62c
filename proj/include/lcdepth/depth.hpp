#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lcdepth/sphere.hpp"

namespace lcdepth {

enum class TieBreak { ByAscendingIndex };

// Locality level for the depth neighborhood, beta in (0, 1].
struct DepthConfig {
  double beta = 1.0;
  TieBreak tie_break = TieBreak::ByAscendingIndex;

  void validate() const;
};

// Outcome of the reflected-region case analysis for a sample point:
// the point is a depth median of its reflected region (C > 0), antipodal
// to it (C < 0), or every point is equally deep (C = 0 within band).
enum class ReflectionBranch { DepthMedian, Antipodal, Degenerate };

struct ReflectionCase {
  ReflectionBranch branch;
  double c_value;  // C = 1 + 2 * sum_{k != i} <x_i, x_k>
};

inline constexpr double kDegenerateBand = 1e-12;

// Neighborhood size k = max(1, floor(beta * candidates)), with a tiny
// epsilon before the floor so grid betas like 0.1 * 10 land on the exact
// step boundary. `candidates` is n-1 in member mode and n in query mode.
std::size_t neighborhood_size(double beta, std::size_t candidates);

// Global cosine distance depth: 2 minus the mean cosine distance from x to
// every point of the sample (the point itself contributes 0 when present).
// Distances are summed in ascending value order, which makes the result
// independent of sample storage order down to the last bit.
double cdd(const UnitVector& x, const SphericalSample& sample);
double cdd(std::span<const double> x, const SphericalSample& sample);

ReflectionCase reflection_case(const SphericalSample& sample, std::size_t i);

// Indices (into `sample`) of the k nearest points to x_i among the others,
// by cosine distance, ties broken by ascending index. Returned ascending.
// Equals the depth-ordered beta-neighborhood of the reflected region.
std::vector<std::size_t> depth_neighborhood(const SphericalSample& sample, std::size_t i,
                                            const DepthConfig& cfg);

// Local cosine distance depth.
// Member mode: x_i's neighbors come from the rest of the sample,
// k = max(1, floor(beta * (n - 1))). At beta = 1 this reproduces the
// leave-one-out global depth bit for bit.
double lcdd(const SphericalSample& sample, std::size_t i, const DepthConfig& cfg);
// Query mode (point not in the sample): neighbors from the whole sample,
// k = max(1, floor(beta * n)).
double lcdd(const UnitVector& x, const SphericalSample& sample, const DepthConfig& cfg);
double lcdd(std::span<const double> x, const SphericalSample& sample, const DepthConfig& cfg);

// Member-mode LCDD of every sample point at every beta of the grid;
// result[i][b] = lcdd(sample, i, grid[b]). One sort per point serves the
// whole grid.
std::vector<std::vector<double>> lcdd_profile(const SphericalSample& sample,
                                              std::span<const double> betas);

// Batch kernel shared by the profile, the DD-plot and the CV pipeline:
// LCDD of one query against a reference sample at several betas from a
// single sorted-distance pass. `skip` marks the query's own index in the
// reference (member mode); leave it empty for query mode.
std::vector<double> lcdd_multi_beta(std::span<const double> query, const SphericalSample& ref,
                                    std::optional<std::size_t> skip,
                                    std::span<const double> betas);

}  // namespace lcdepth
