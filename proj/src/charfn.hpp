#pragma once

#include <complex>

namespace cftray {

// Zero-location stable law: exponent alpha in (0, 2], scale gamma > 0,
// skewness beta in [-1, 1]. beta = -1 with alpha < 1 marks the positive
// (totally right-skewed) subclass.
struct StableParams {
  double alpha;
  double gamma;
  double beta;

  StableParams(double alpha, double gamma, double beta);
};

// Exponentially tempered stable law. eta > 0 is the truncation parameter;
// the untempered limit is represented by an explicit flag, never by a
// floating-point infinity flowing through the formulas.
struct TemperedStableParams {
  double alpha;
  double gamma;
  double beta;
  double eta = 0.0;
  bool eta_infinite = false;

  TemperedStableParams(double alpha, double gamma, double beta, double eta);
  static TemperedStableParams untempered(double alpha, double gamma,
                                         double beta);

 private:
  TemperedStableParams() = default;
};

// Parameters (alpha, gamma, eta) of the compound amplitude model. The
// texture scale convention is fixed by its Laplace transform
// exp[(gamma/eta^(alpha/2)) (1 - (eta s + 1)^(alpha/2))]; an equivalent
// stable-CF parameterization of the texture differs by a cos(pi alpha/4)
// factor absorbed into gamma. alpha = 2 is exactly Rayleigh and eta becomes
// irrelevant (the dependence cancels algebraically).
struct ModelParams {
  double alpha;
  double gamma;
  double eta = 0.0;
  bool eta_infinite = false;

  static ModelParams tempered(double alpha, double gamma, double eta);
  static ModelParams heavy_tailed(double alpha, double gamma);  // eta = inf

  bool is_rayleigh() const { return alpha == 2.0; }

  // Parameters of c*R when R follows this model.
  ModelParams scaled_by(double c) const;

 private:
  ModelParams() = default;
};

// exp[-gamma |xi|^alpha (1 + j beta sign(xi) omega(xi, alpha))] with
// omega = tan(pi alpha / 2) away from alpha = 1 and (2/pi) ln|xi| at
// alpha = 1. Returns exactly 1 at xi = 0.
std::complex<double> alpha_stable_cf(double xi, const StableParams& p);

// Tempered stable characteristic function in the arctan form (no Gamma(-a)
// pole at integer alpha). Requires finite eta; at alpha = 1 only the
// symmetric case has a zero-location limit and is evaluated analytically.
std::complex<double> tempered_stable_cf(double xi,
                                        const TemperedStableParams& p);

// Radial exponent Psi(s) of the isotropic bivariate model:
// (gamma/eta^(alpha/2)) [1 - (eta s^2 + 1)^(alpha/2)], or -gamma s^alpha in
// the heavy-tailed limit. Psi(0) = 0, strictly decreasing.
double isotropic_exponent(double s, const ModelParams& m);

// exp(Psi(||xi||)); real, in (0, 1], rotation invariant.
double cg_ptas_cf(double xi1, double xi2, const ModelParams& m);

// Laplace transform of the texture law; texture_laplace(s^2, m) equals
// exp(isotropic_exponent(s, m)) through the identical formula path.
double texture_laplace(double sprime, const ModelParams& m);

namespace detail {
// Shared kernel: Psi as a function of u = s^2 (equivalently the Laplace
// argument s').
double psi_of_s2(double u, const ModelParams& m);
}  // namespace detail

}  // namespace cftray
