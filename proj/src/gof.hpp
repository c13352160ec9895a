#pragma once

#include "amplitude.hpp"
#include "estimate.hpp"

namespace cftray {

struct GofConfig {
  double pfa = 1e-2;           // false-alarm probability for the TE statistic
  double te_critical_db = 1.0; // pass threshold, declared convention
};

struct GofReport {
  double ks_stat = 0.0;
  double ks_critical = 0.0;  // asymptotic 5% value 1.36 / sqrt(L)
  double te_stat = 0.0;
  double te_critical = 0.0;
  double pfa = 0.0;
  bool pass_ks = false;
  bool pass_te = false;
  bool insufficient_tail = false;  // L * pfa < 10: empirical quantile shaky
};

// (#{r_i > r}) / L, the right-continuous complement convention.
double empirical_ccdf(const AmplitudeSeries& a, double r);

// sup-gap KS statistic against the model CDF F = 1 - ccdf, evaluated at
// the sorted samples: max_i max(|i/L - F(r_(i))|, |(i-1)/L - F(r_(i))|).
// The model CDF is tabulated on a log grid and monotone-interpolated for
// the bulk of the samples; the gap maximizers are then re-evaluated with
// full quadrature, so the returned statistic carries quadrature accuracy.
double ks_statistic(const AmplitudeSeries& a, const ModelParams& m,
                    const QuadratureSpec& q = {});

// |20 log10(r_model / r_emp)| in dB at the given false-alarm probability;
// the empirical quantile interpolates linearly between order statistics.
double te_statistic(const AmplitudeSeries& a, const ModelParams& m,
                    double pfa, const QuadratureSpec& q = {},
                    bool* insufficient_tail = nullptr);

GofReport evaluate_gof(const AmplitudeSeries& a, const ModelParams& m,
                       const GofConfig& cfg = {},
                       const QuadratureSpec& q = {});

}  // namespace cftray
