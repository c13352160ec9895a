#include "charfn.hpp"

#include <cmath>
#include <stdexcept>

namespace cftray {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

StableParams::StableParams(double alpha_, double gamma_, double beta_)
    : alpha(alpha_), gamma(gamma_), beta(beta_) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0,
          "StableParams: alpha must lie in (0, 2]");
  require(std::isfinite(gamma) && gamma > 0.0,
          "StableParams: gamma must be positive");
  require(std::isfinite(beta) && std::abs(beta) <= 1.0,
          "StableParams: |beta| must not exceed 1");
}

TemperedStableParams::TemperedStableParams(double alpha_, double gamma_,
                                           double beta_, double eta_)
    : alpha(alpha_), gamma(gamma_), beta(beta_), eta(eta_) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0,
          "TemperedStableParams: alpha must lie in (0, 2]");
  require(std::isfinite(gamma) && gamma > 0.0,
          "TemperedStableParams: gamma must be positive");
  require(std::isfinite(beta) && std::abs(beta) <= 1.0,
          "TemperedStableParams: |beta| must not exceed 1");
  require(std::isfinite(eta) && eta > 0.0,
          "TemperedStableParams: eta must be positive and finite (use "
          "untempered() for the limit)");
}

TemperedStableParams TemperedStableParams::untempered(double alpha,
                                                      double gamma,
                                                      double beta) {
  StableParams check(alpha, gamma, beta);  // same validation
  TemperedStableParams p;
  p.alpha = check.alpha;
  p.gamma = check.gamma;
  p.beta = check.beta;
  p.eta = 0.0;
  p.eta_infinite = true;
  return p;
}

ModelParams ModelParams::tempered(double alpha, double gamma, double eta) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0,
          "ModelParams: alpha must lie in (0, 2]");
  require(std::isfinite(gamma) && gamma > 0.0,
          "ModelParams: gamma must be positive");
  require(std::isfinite(eta) && eta > 0.0,
          "ModelParams: eta must be positive and finite (use heavy_tailed() "
          "for the limit)");
  ModelParams m;
  m.alpha = alpha;
  m.gamma = gamma;
  m.eta = eta;
  return m;
}

ModelParams ModelParams::heavy_tailed(double alpha, double gamma) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0,
          "ModelParams: alpha must lie in (0, 2]");
  require(std::isfinite(gamma) && gamma > 0.0,
          "ModelParams: gamma must be positive");
  ModelParams m;
  m.alpha = alpha;
  m.gamma = gamma;
  m.eta = 0.0;
  m.eta_infinite = true;
  return m;
}

ModelParams ModelParams::scaled_by(double c) const {
  require(std::isfinite(c) && c > 0.0, "ModelParams: scale must be positive");
  if (eta_infinite) return heavy_tailed(alpha, gamma * std::pow(c, alpha));
  return tempered(alpha, gamma * std::pow(c, alpha), eta * c * c);
}

std::complex<double> alpha_stable_cf(double xi, const StableParams& p) {
  if (xi == 0.0) return {1.0, 0.0};
  const double ax = std::abs(xi);
  const double sg = xi > 0.0 ? 1.0 : -1.0;
  double omega;
  if (p.alpha == 1.0)
    omega = (2.0 / M_PI) * std::log(ax);
  else if (p.alpha == 2.0)
    omega = 0.0;  // tan(pi) taken at its exact limit
  else
    omega = std::tan(0.5 * M_PI * p.alpha);
  const double mag = p.gamma * std::pow(ax, p.alpha);
  return std::exp(std::complex<double>(-mag, -mag * p.beta * sg * omega));
}

std::complex<double> tempered_stable_cf(double xi,
                                        const TemperedStableParams& p) {
  if (p.eta_infinite)
    throw std::invalid_argument(
        "tempered_stable_cf: eta is infinite; evaluate alpha_stable_cf for "
        "the untempered limit");
  if (xi == 0.0) return {1.0, 0.0};
  const double ax = std::abs(xi);
  const double sg = xi > 0.0 ? 1.0 : -1.0;
  const double x = p.eta * ax;
  if (p.alpha == 1.0) {
    // The arctan form is 0/0 at alpha = 1; the symmetric case has the limit
    // below, the skewed case has no zero-location limit at all.
    if (p.beta != 0.0)
      throw std::invalid_argument(
          "tempered_stable_cf: alpha = 1 is supported only for beta = 0");
    const double e = (2.0 * p.gamma / (M_PI * p.eta)) *
                     (0.5 * std::log1p(x * x) - x * std::atan(x));
    return {std::exp(e), 0.0};
  }
  const double theta = std::atan(x);
  const double ralpha = std::pow(1.0 + x * x, 0.5 * p.alpha);
  const double pref =
      p.gamma / (std::pow(p.eta, p.alpha) * std::cos(0.5 * M_PI * p.alpha));
  const double re = pref * (1.0 - ralpha * std::cos(p.alpha * theta));
  const double im = -pref * p.beta * sg * ralpha * std::sin(p.alpha * theta);
  return std::exp(std::complex<double>(re, im));
}

namespace detail {

double psi_of_s2(double u, const ModelParams& m) {
  if (m.alpha == 2.0) return -m.gamma * u;  // exact algebraic cancellation
  const double a = 0.5 * m.alpha;
  if (m.eta_infinite) return -m.gamma * std::pow(u, a);
  return m.gamma / std::pow(m.eta, a) * (1.0 - std::pow(m.eta * u + 1.0, a));
}

}  // namespace detail

double isotropic_exponent(double s, const ModelParams& m) {
  if (!(s >= 0.0))
    throw std::invalid_argument("isotropic_exponent: s must be >= 0");
  if (s == 0.0) return 0.0;
  return detail::psi_of_s2(s * s, m);
}

double cg_ptas_cf(double xi1, double xi2, const ModelParams& m) {
  return std::exp(detail::psi_of_s2(xi1 * xi1 + xi2 * xi2, m));
}

double texture_laplace(double sprime, const ModelParams& m) {
  if (!(sprime >= 0.0))
    throw std::invalid_argument("texture_laplace: s' must be >= 0");
  return std::exp(detail::psi_of_s2(sprime, m));
}

}  // namespace cftray
