#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "charfn.hpp"
#include "rng.hpp"

namespace cftray {

// In-phase / quadrature pairs of simulated complex clutter.
struct ComplexSeries {
  std::vector<double> i_comp;
  std::vector<double> q_comp;
};

struct SampleStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepts = 0;
  bool low_acceptance = false;
};

// Positive stable draw with Laplace transform exp(-scale s^alpha_half),
// alpha_half in (0, 1). Kanter's construction through Zolotarev's function;
// the parameterization is pinned by the Laplace contract, not by any
// particular textbook convention.
double sample_positive_stable(double alpha_half, double scale, Rng& rng);

// Texture draw with Laplace transform
// exp[(gamma/eta^(alpha/2)) (1 - (eta s + 1)^(alpha/2))] (finite eta,
// alpha in (0, 2)). Exponential-tilt rejection of positive stable
// proposals; when the single-shot acceptance exp(-gamma eta^(-alpha/2))
// drops below e^-1 the scale is split into ceil(gamma eta^(-alpha/2))
// independently tilted chunks (the law is infinitely divisible, so the sum
// is exact) keeping per-chunk acceptance above e^-1.
double sample_texture(const ModelParams& m, Rng& rng,
                      SampleStats* stats = nullptr);

// Complex clutter sqrt(V) (Z_I + j Z_Q), Z ~ N(0, 2) each, one independent
// texture per sample. alpha = 2 uses the constant texture V = gamma; the
// heavy-tailed model draws untempered positive stable texture.
ComplexSeries sample_complex(const ModelParams& m, std::size_t n, Rng& rng,
                             SampleStats* stats = nullptr);

// Amplitude draws sqrt(V) sqrt(Z_I^2 + Z_Q^2), distributionally identical
// to the modulus of sample_complex.
std::vector<double> sample_amplitude(const ModelParams& m, std::size_t n,
                                     Rng& rng, SampleStats* stats = nullptr);

// Analytic single-shot acceptance rate exp(-gamma eta^(-alpha/2)) of the
// tilting rejection.
double texture_acceptance_rate(const ModelParams& m);

// Number of scale chunks sample_texture uses for these parameters.
long texture_chunks(const ModelParams& m);

}  // namespace cftray
