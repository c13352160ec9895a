#pragma once

#include <cmath>

namespace cftray::bessel {

inline double j0(double x) { return ::j0(x); }
inline double j1(double x) { return ::j1(x); }

// k-th positive zero of J0 / J1 (k >= 1). Tabulated for small k, McMahon
// expansion beyond; accurate to far better than a lobe width, which is all
// panel splitting needs.
double j0_zero(int k);
double j1_zero(int k);

}  // namespace cftray::bessel
