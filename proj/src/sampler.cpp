#include "sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace cftray {

double sample_positive_stable(double alpha_half, double scale, Rng& rng) {
  if (!(alpha_half > 0.0 && alpha_half < 1.0))
    throw std::invalid_argument(
        "sample_positive_stable: index must lie in (0, 1)");
  if (!(scale > 0.0))
    throw std::invalid_argument("sample_positive_stable: scale must be > 0");
  const double a = alpha_half;
  const double u = rng.uniform() * M_PI;
  const double e = rng.exponential();
  const double ln_zolotarev =
      (a * std::log(std::sin(a * u)) +
       (1.0 - a) * std::log(std::sin((1.0 - a) * u)) -
       std::log(std::sin(u))) /
      (1.0 - a);
  const double s =
      std::exp(((1.0 - a) / a) * (ln_zolotarev - std::log(e)));
  return std::pow(scale, 1.0 / a) * s;
}

double texture_acceptance_rate(const ModelParams& m) {
  if (m.eta_infinite)
    throw std::invalid_argument(
        "texture_acceptance_rate: defined for finite eta only");
  return std::exp(-m.gamma * std::pow(m.eta, -0.5 * m.alpha));
}

long texture_chunks(const ModelParams& m) {
  const double strength = m.gamma * std::pow(m.eta, -0.5 * m.alpha);
  return std::max(1L, static_cast<long>(std::ceil(strength)));
}

double sample_texture(const ModelParams& m, Rng& rng, SampleStats* stats) {
  if (m.eta_infinite)
    throw std::invalid_argument(
        "sample_texture: eta must be finite (draw the untempered positive "
        "stable directly)");
  if (!(m.alpha > 0.0 && m.alpha < 2.0))
    throw std::invalid_argument("sample_texture: alpha must lie in (0, 2)");

  const double a = 0.5 * m.alpha;
  const double strength = m.gamma * std::pow(m.eta, -a);
  if (!(strength < 1e9))
    throw std::invalid_argument(
        "sample_texture: tilt gamma * eta^(-alpha/2) too strong to sample");
  if (stats && std::exp(-strength) < 1e-3) stats->low_acceptance = true;

  const long chunks = std::max(1L, static_cast<long>(std::ceil(strength)));
  const double chunk_scale = m.gamma / static_cast<double>(chunks);
  double v = 0.0;
  for (long c = 0; c < chunks; ++c) {
    for (;;) {
      if (stats) ++stats->proposals;
      const double s = sample_positive_stable(a, chunk_scale, rng);
      if (rng.uniform() <= std::exp(-s / m.eta)) {
        if (stats) ++stats->accepts;
        v += s;
        break;
      }
    }
  }
  return v;
}

namespace {

double draw_texture(const ModelParams& m, Rng& rng, SampleStats* stats) {
  if (m.alpha == 2.0) return m.gamma;  // Rayleigh: constant texture
  if (m.eta_infinite)
    return sample_positive_stable(0.5 * m.alpha, m.gamma, rng);
  return sample_texture(m, rng, stats);
}

}  // namespace

ComplexSeries sample_complex(const ModelParams& m, std::size_t n, Rng& rng,
                             SampleStats* stats) {
  if (n < 1) throw std::invalid_argument("sample_complex: n must be >= 1");
  ComplexSeries out;
  out.i_comp.reserve(n);
  out.q_comp.reserve(n);
  const double root2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double sv = std::sqrt(draw_texture(m, rng, stats));
    double n1, n2;
    rng.normal_pair(n1, n2);
    out.i_comp.push_back(sv * root2 * n1);
    out.q_comp.push_back(sv * root2 * n2);
  }
  return out;
}

std::vector<double> sample_amplitude(const ModelParams& m, std::size_t n,
                                     Rng& rng, SampleStats* stats) {
  if (n < 1) throw std::invalid_argument("sample_amplitude: n must be >= 1");
  std::vector<double> out;
  out.reserve(n);
  const double root2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = draw_texture(m, rng, stats);
    double n1, n2;
    rng.normal_pair(n1, n2);
    const double zi = root2 * n1;
    const double zq = root2 * n2;
    out.push_back(std::sqrt(v) * std::sqrt(zi * zi + zq * zq));
  }
  return out;
}

}  // namespace cftray
