#pragma once

#include "charfn.hpp"

namespace cftray {

// Tolerances and truncation policy for the oscillatory radial integrals.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_lobes = 10000;
  double tail_cut = 1e-16;

  void validate() const;
};

struct Evaluated {
  double value = 0.0;
  double est_error = 0.0;
  int lobes_used = 0;
};

// Amplitude density r * Int_0^inf s exp(Psi(s)) J0(r s) ds. pdf(0) = 0
// exactly; alpha = 2 routes to the Rayleigh closed form. Internally the
// model is nondimensionalized by rms_scale(m) so tolerances are scale-free.
Evaluated pdf(double r, const ModelParams& m, const QuadratureSpec& q = {});

// Complementary CDF 1 - r * Int_0^inf exp(Psi(s)) J1(r s) ds (the single
// integral obtained by integrating the density kernel in closed form).
// ccdf(0) = 1; nonincreasing in r; clamped to [0, 1] with the pre-clamp
// deviation kept in est_error.
Evaluated ccdf(double r, const ModelParams& m, const QuadratureSpec& q = {});

// r with ccdf(r) = p, to |ccdf - p| <= 10 rel_tol p. Geometric bracket
// expansion from the Rayleigh-scale guess, then bisection.
double quantile(double p, const ModelParams& m, const QuadratureSpec& q = {});

// E[R^2] = 2 alpha gamma eta^(1 - alpha/2); rejects the heavy-tailed limit
// for alpha < 2 (infinite second moment).
double mean_square(const ModelParams& m);

// sqrt(E[R^2]) when finite, else the power-law scale gamma^(1/alpha).
double rms_scale(const ModelParams& m);

// Heavy-tailed special case, Psi(s) = -gamma s^alpha.
Evaluated ht_rayleigh_pdf(double r, double alpha, double gamma,
                          const QuadratureSpec& q = {});
Evaluated ht_rayleigh_ccdf(double r, double alpha, double gamma,
                           const QuadratureSpec& q = {});

namespace detail {

struct RadialIntegral {
  double value = 0.0;
  double est_error = 0.0;
  int lobes_used = 0;
};

// Int_0^inf w(s) exp(Psi(s)) J_nu(r s) ds with w(s) = s for nu = 0 and
// w = 1 for nu = 1. `value_scale` is the factor the caller multiplies the
// integral by; stopping thresholds are expressed on that output scale.
// `use_rel` enables the rel_tol term against the running |integral|.
RadialIntegral bessel_radial_integral(int nu, double r, const ModelParams& m,
                                      const QuadratureSpec& q,
                                      double value_scale, bool use_rel);

}  // namespace detail

}  // namespace cftray
