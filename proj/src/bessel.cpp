#include "bessel.hpp"

#include <array>

namespace cftray::bessel {

namespace {

constexpr std::array<double, 8> kJ0Zeros = {
    2.404825557695773,  5.520078110286311,  8.653727912911012,
    11.791534439014281, 14.930917708487786, 18.071063967910923,
    21.211636629879258, 24.352471530749302};

constexpr std::array<double, 8> kJ1Zeros = {
    3.831705970207512,  7.015586669815619,  10.173468135062722,
    13.323691936314223, 16.470630050877634, 19.615858510468243,
    22.760084380592772, 25.903672087618383};

double mcmahon(double nu, int k) {
  const double b = (k + 0.5 * nu - 0.25) * M_PI;
  const double mu = 4.0 * nu * nu;
  const double e = 8.0 * b;
  const double e3 = e * e * e;
  const double e5 = e3 * e * e;
  return b - (mu - 1.0) / e -
         4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e3) -
         32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) /
             (15.0 * e5);
}

}  // namespace

double j0_zero(int k) {
  return k <= 8 ? kJ0Zeros[static_cast<std::size_t>(k - 1)] : mcmahon(0.0, k);
}

double j1_zero(int k) {
  return k <= 8 ? kJ1Zeros[static_cast<std::size_t>(k - 1)] : mcmahon(1.0, k);
}

}  // namespace cftray::bessel
