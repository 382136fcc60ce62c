#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>

namespace lcdepth {

// SplitMix64 stream. Pinned generator for the whole project: output is a
// pure function of the 64-bit seed, identical on every platform, and new
// independent streams can be derived from (seed, tag...) so parallel
// replications never share state.
//
// Steele, Lea & Flood style mixer; the distribution samplers below are
// implemented here as well because std::<random> distributions are not
// reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

  // Standard normal via the polar (Marsaglia) method, no cached spare.
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
  double gamma(double shape);

  // Beta(a, b) from two gammas; a, b > 0.
  double beta(double a, double b);

  // New independent stream keyed by this rng's seed and the tags.
  Rng derive(std::initializer_list<std::uint64_t> tags) const;

  std::uint64_t seed() const { return state_; }

 private:
  std::uint64_t state_;
};

// Fisher-Yates shuffle of [first, last) index vectors etc.
template <typename RandomIt>
void shuffle(RandomIt first, RandomIt last, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = rng.next_below(i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace lcdepth
