#pragma once

#include <cstddef>

namespace lcdepth {

// log of the modified Bessel function of the first kind, I_nu(x), for
// nu >= 0 and x >= 0, by the ascending power series with term-ratio
// stopping at 1e-16. Reliable for x <= 500 (throws NumericError beyond).
double log_bessel_i(double nu, double x);

// log of Kummer's confluent hypergeometric function M(a, b, z) for
// a > 0, b >= a. Negative z is routed through the Kummer transform
// M(a,b,z) = e^z M(b-a, b, -z) so every summed series has positive terms.
double log_kummer_m(double a, double b, double z);

// Surface area of S^{q-1} (e.g. 4*pi for q = 3) and its log.
double log_surface_area(std::size_t dim);
double surface_area(std::size_t dim);

}  // namespace lcdepth
