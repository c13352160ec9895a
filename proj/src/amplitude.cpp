#include "amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bessel.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace cftray {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(tail_cut > 0.0) ||
      max_lobes < 1)
    throw std::invalid_argument(
        "QuadratureSpec: tolerances must be positive and max_lobes >= 1");
}

double mean_square(const ModelParams& m) {
  if (m.eta_infinite) {
    if (m.alpha == 2.0) return 4.0 * m.gamma;
    throw std::invalid_argument(
        "mean_square: infinite for the heavy-tailed model with alpha < 2");
  }
  return 2.0 * m.alpha * m.gamma * std::pow(m.eta, 1.0 - 0.5 * m.alpha);
}

double rms_scale(const ModelParams& m) {
  if (!m.eta_infinite || m.alpha == 2.0) return std::sqrt(mean_square(m));
  return std::pow(m.gamma, 1.0 / m.alpha);
}

namespace detail {

namespace {

// Radius beyond which exp(Psi(s)) stays below tail_cut.
double tail_cut_radius(const ModelParams& m, double tail_cut) {
  const double t = -std::log(tail_cut);
  if (m.alpha == 2.0) return std::sqrt(t / m.gamma);
  if (m.eta_infinite) return std::pow(t / m.gamma, 1.0 / m.alpha);
  const double a = 0.5 * m.alpha;
  const double w = std::pow(1.0 + t * std::pow(m.eta, a) / m.gamma, 1.0 / a);
  return std::sqrt((w - 1.0) / m.eta);
}

double psi_slope_mag(double s, const ModelParams& m) {
  if (m.alpha == 2.0) return 2.0 * m.gamma * s;
  if (m.eta_infinite)
    return m.alpha * m.gamma * std::pow(s, m.alpha - 1.0);
  const double a = 0.5 * m.alpha;
  return 2.0 * a * m.gamma * std::pow(m.eta, 1.0 - a) * s *
         std::pow(m.eta * s * s + 1.0, a - 1.0);
}

// Radius where Psi reaches -2: the decay scale of the envelope. Panels must
// resolve this even when the Bessel lobes are much wider.
double envelope_radius(const ModelParams& m) {
  if (m.alpha == 2.0) return std::sqrt(2.0 / m.gamma);
  if (m.eta_infinite) return std::pow(2.0 / m.gamma, 1.0 / m.alpha);
  const double a = 0.5 * m.alpha;
  const double w = std::pow(1.0 + 2.0 * std::pow(m.eta, a) / m.gamma, 1.0 / a);
  return std::sqrt((w - 1.0) / m.eta);
}

}  // namespace

RadialIntegral bessel_radial_integral(int nu, double r, const ModelParams& m,
                                      const QuadratureSpec& q,
                                      double value_scale, bool use_rel) {
  const bool weight_s = (nu == 0);
  const auto f = [&](double s) {
    const double env = (weight_s ? s : 1.0) * std::exp(psi_of_s2(s * s, m));
    return env * (nu == 0 ? bessel::j0(r * s) : bessel::j1(r * s));
  };

  const double s_max = tail_cut_radius(m, q.tail_cut);
  const double first_zero = nu == 0 ? bessel::j0_zero(1) : bessel::j1_zero(1);

  // Fractional-power cusp of Psi at s = 0 in the heavy-tailed case; panels
  // near the origin are refined geometrically instead of trusting one rule.
  const bool cusp = m.eta_infinite && m.alpha != 2.0;

  // wide panels (small r) must still resolve the envelope decay
  const double h_max = envelope_radius(m) / 6.0;
  const auto capped_panel = [&](double a2, double b2) {
    if (b2 - a2 <= h_max) return quad::gauss15(f, a2, b2);
    const int slices = static_cast<int>(std::ceil((b2 - a2) / h_max));
    double acc2 = 0.0;
    for (int j = 0; j < slices; ++j) {
      const double x0 = a2 + (b2 - a2) * j / slices;
      const double x1 = a2 + (b2 - a2) * (j + 1) / slices;
      acc2 += quad::gauss15(f, x0, x1);
    }
    return acc2;
  };

  const auto integrate_from_zero = [&](double hi) {
    double acc = 0.0;
    double b = hi;
    for (int j = 0; j < 54 && b > 1e-300; ++j) {
      const double a2 = 0.5 * b;
      acc += capped_panel(a2, b);
      b = a2;
    }
    acc += quad::gauss15(f, 0.0, b);
    return acc;
  };

  const auto tail_estimate = [&](double s0) {
    const double lam = std::max(psi_slope_mag(s0, m), 1e-300);
    const double envj =
        (r * s0 > 1.0) ? std::sqrt(2.0 / (M_PI * r * s0)) : 1.0;
    const double e0 = std::exp(psi_of_s2(s0 * s0, m));
    return weight_s ? e0 * envj * (s0 / lam + 1.0 / (lam * lam))
                    : e0 * envj / lam;
  };

  if (r * s_max < first_zero) {
    // Bessel factor keeps its sign: one pass is enough.
    quad::AdaptiveResult res;
    if (cusp) {
      // resolve the cusp region separately, then the smooth remainder
      const double split = 1e-3 * s_max;
      const double head = integrate_from_zero(split);
      res = quad::adaptive_simpson(f, split, s_max, 0.25 * q.abs_tol);
      res.value += head;
    } else {
      res = quad::adaptive_simpson(f, 0.0, s_max, 0.25 * q.abs_tol);
    }
    if (!res.converged)
      throw NonConvergence(
          "radial integral: adaptive pass did not reach tolerance");
    return {res.value, res.est_error + tail_estimate(s_max), 0};
  }

  double acc = 0.0;
  double last = 0.0;
  double lo = 0.0;
  int k = 0;
  bool done = false;
  while (k < q.max_lobes) {
    ++k;
    const double hi =
        (nu == 0 ? bessel::j0_zero(k) : bessel::j1_zero(k)) / r;
    double panel;
    if (k == 1 && cusp)
      panel = integrate_from_zero(hi);
    else
      panel = capped_panel(lo, hi);
    acc += panel;
    last = std::abs(panel);
    lo = hi;
    const double allow =
        use_rel ? std::max(q.abs_tol, q.rel_tol * std::abs(acc) * value_scale)
                : q.abs_tol;
    if (hi >= s_max && last * value_scale <= 0.5 * allow) {
      done = true;
      break;
    }
  }
  if (!done)
    throw NonConvergence("radial integral: lobe budget of " +
                         std::to_string(q.max_lobes) +
                         " exhausted before the tail fell below tolerance");
  return {acc, 0.5 * last + tail_estimate(lo), k};
}

}  // namespace detail

namespace {

void check_r(double r, const char* who) {
  if (!(r >= 0.0))
    throw std::invalid_argument(std::string(who) + ": r must be >= 0");
}

Evaluated rayleigh_pdf_closed(double r, double gamma) {
  const double v = r / (2.0 * gamma) * std::exp(-r * r / (4.0 * gamma));
  return {v, 4.0 * std::numeric_limits<double>::epsilon() * (v + 1e-300), 0};
}

Evaluated rayleigh_ccdf_closed(double r, double gamma) {
  const double v = std::exp(-r * r / (4.0 * gamma));
  return {v, 4.0 * std::numeric_limits<double>::epsilon() * v, 0};
}

}  // namespace

Evaluated pdf(double r, const ModelParams& m, const QuadratureSpec& q) {
  q.validate();
  check_r(r, "pdf");
  if (m.is_rayleigh()) return rayleigh_pdf_closed(r, m.gamma);
  if (r == 0.0) return {0.0, 0.0, 0};

  const double scale = rms_scale(m);
  const ModelParams mu = m.scaled_by(1.0 / scale);
  const double ru = r / scale;
  const auto ri = detail::bessel_radial_integral(0, ru, mu, q, ru, true);

  double v = ru * ri.value;
  double err = ru * ri.est_error;
  if (v < 0.0) {
    // deep-tail quadrature noise; density nonnegativity is a hard contract
    if (-v > 10.0 * q.abs_tol)
      throw NonConvergence("pdf: negative value " + std::to_string(v) +
                           " beyond the noise floor at r = " +
                           std::to_string(r));
    err = std::max(err, -v);
    v = 0.0;
  }
  if (err > std::max(q.abs_tol, q.rel_tol * v) * 4.0)
    throw NonConvergence("pdf: error estimate above tolerance at r = " +
                         std::to_string(r));
  return {v / scale, err / scale, ri.lobes_used};
}

Evaluated ccdf(double r, const ModelParams& m, const QuadratureSpec& q) {
  q.validate();
  check_r(r, "ccdf");
  if (m.is_rayleigh()) return rayleigh_ccdf_closed(r, m.gamma);
  if (r == 0.0) return {1.0, 0.0, 0};

  const double scale = rms_scale(m);
  const ModelParams mu = m.scaled_by(1.0 / scale);
  const double ru = r / scale;
  const auto ri = detail::bessel_radial_integral(1, ru, mu, q, ru, false);

  const double pre = 1.0 - ru * ri.value;
  double v = std::clamp(pre, 0.0, 1.0);
  double err = std::max(ru * ri.est_error, std::abs(pre - v));
  if (std::abs(pre - v) > 10.0 * q.abs_tol)
    throw NonConvergence("ccdf: value " + std::to_string(pre) +
                         " outside [0, 1] beyond the noise floor at r = " +
                         std::to_string(r));
  return {v, err, ri.lobes_used};
}

double quantile(double p, const ModelParams& m, const QuadratureSpec& q) {
  q.validate();
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("quantile: p must lie in (0, 1)");
  if (m.is_rayleigh()) return 2.0 * std::sqrt(m.gamma * std::log(1.0 / p));

  QuadratureSpec qi = q;
  qi.abs_tol = std::min(q.abs_tol, 0.1 * q.rel_tol * p);
  const auto cc = [&](double r) { return ccdf(r, m, qi).value; };

  const double r0 = rms_scale(m);
  double guess = r0 * std::sqrt(std::max(std::log(1.0 / p), 1e-12));
  if (!(guess > 0.0)) guess = r0;

  double lo = guess, hi = guess;
  if (cc(guess) > p) {
    for (int n = 0;; ++n) {
      if (n >= 200)
        throw NonConvergence("quantile: bracket expansion exceeded 200 "
                             "doublings (pathological parameters)");
      lo = hi;
      hi *= 2.0;
      if (cc(hi) <= p) break;
    }
  } else {
    for (int n = 0;; ++n) {
      if (n >= 200)
        throw NonConvergence("quantile: bracket contraction exceeded 200 "
                             "halvings (pathological parameters)");
      hi = lo;
      lo *= 0.5;
      if (cc(lo) >= p) break;
    }
  }

  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 240; ++it) {
    mid = 0.5 * (lo + hi);
    const double c = cc(mid);
    if (std::abs(c - p) <= 10.0 * q.rel_tol * p) return mid;
    (c > p ? lo : hi) = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
      return mid;  // interval collapsed; remaining gap is quadrature noise
  }
  throw NonConvergence("quantile: bisection failed to converge");
}

Evaluated ht_rayleigh_pdf(double r, double alpha, double gamma,
                          const QuadratureSpec& q) {
  return pdf(r, ModelParams::heavy_tailed(alpha, gamma), q);
}

Evaluated ht_rayleigh_ccdf(double r, double alpha, double gamma,
                           const QuadratureSpec& q) {
  return ccdf(r, ModelParams::heavy_tailed(alpha, gamma), q);
}

}  // namespace cftray
