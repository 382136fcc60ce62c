#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lcdepth/rng.hpp"

using namespace lcdepth;

TEST_CASE("splitmix64 known values") {
  // Published test vectors of the standard SplitMix64 mixer, seed 0.
  Rng r0(0);
  CHECK(r0.next_u64() == 0xE220A8397B1DCDAFULL);
  CHECK(r0.next_u64() == 0x6E789E6AA1B965F4ULL);
  CHECK(r0.next_u64() == 0x06C45D188009454FULL);
}

TEST_CASE("streams are deterministic and derivation order-sensitive") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng base(7);
  Rng d1 = base.derive({1, 2});
  Rng d2 = base.derive({2, 1});
  Rng d1_again = base.derive({1, 2});
  CHECK(d1.next_u64() == d1_again.next_u64());
  CHECK(d1.seed() != d2.seed());
}

TEST_CASE("uniform doubles live in [0,1) with sane mean") {
  Rng r(99);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("normal and gamma moments") {
  Rng r(123);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sum2 += x * x;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sum2 / n - 1.0) < 0.03);

  for (const double shape : {0.5, 1.0, 2.5, 7.0}) {
    double gsum = 0.0;
    for (int i = 0; i < 50000; ++i) gsum += r.gamma(shape);
    CHECK(gsum / 50000 == doctest::Approx(shape).epsilon(0.05));
  }

  double bsum = 0.0;
  for (int i = 0; i < 50000; ++i) bsum += r.beta(2.0, 3.0);
  CHECK(bsum / 50000 == doctest::Approx(0.4).epsilon(0.05));
}

TEST_CASE("next_below is unbiased over a small range") {
  Rng r(5);
  std::vector<int> counts(5, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[r.next_below(5)];
  for (const int c : counts) CHECK(std::abs(c - n / 5) < 1000);
}

TEST_CASE("shuffle is a permutation and seed-stable") {
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  Rng r(77);
  shuffle(v.begin(), v.end(), r);
  std::vector<int> w{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  Rng r2(77);
  shuffle(w.begin(), w.end(), r2);
  CHECK(v == w);
  std::sort(v.begin(), v.end());
  CHECK(v == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
}
