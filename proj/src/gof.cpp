#include "gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "errors.hpp"

namespace cftray {

double empirical_ccdf(const AmplitudeSeries& a, double r) {
  if (!(r >= 0.0))
    throw std::invalid_argument("empirical_ccdf: r must be >= 0");
  std::size_t count = 0;
  for (double x : a.values) count += (x > r) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(a.values.size());
}

namespace {

// Fritsch-Carlson monotone cubic through (x_i, y_i), x strictly increasing.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
    const std::size_t n = x_.size();
    std::vector<double> sec(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      sec[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    m_[0] = sec[0];
    m_[n - 1] = sec[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
      m_[i] = (sec[i - 1] * sec[i] <= 0.0) ? 0.0
                                           : 0.5 * (sec[i - 1] + sec[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (sec[i] == 0.0) {
        m_[i] = m_[i + 1] = 0.0;
        continue;
      }
      const double a = m_[i] / sec[i];
      const double b = m_[i + 1] / sec[i];
      const double s2 = a * a + b * b;
      if (s2 > 9.0) {
        const double t = 3.0 / std::sqrt(s2);
        m_[i] = t * a * sec[i];
        m_[i + 1] = t * b * sec[i];
      }
    }
  }

  double operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return y_[i] * (2.0 * t3 - 3.0 * t2 + 1.0) +
           m_[i] * h * (t3 - 2.0 * t2 + t) +
           y_[i + 1] * (-2.0 * t3 + 3.0 * t2) + m_[i + 1] * h * (t3 - t2);
  }

 private:
  std::vector<double> x_, y_, m_;
};

double model_cdf(double r, const ModelParams& m, const QuadratureSpec& q) {
  return 1.0 - ccdf(r, m, q).value;
}

// Linear interpolation between adjacent order statistics (type-7).
double empirical_quantile_sorted(const std::vector<double>& sorted,
                                 double p) {
  const std::size_t n = sorted.size();
  const double h = (static_cast<double>(n) - 1.0) * p;
  const std::size_t lo =
      std::min(static_cast<std::size_t>(std::floor(h)), n - 1);
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - std::floor(h);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double ks_statistic(const AmplitudeSeries& a, const ModelParams& m,
                    const QuadratureSpec& q) {
  q.validate();
  std::vector<double> sorted = a.values;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double dn = static_cast<double>(n);

  const auto gap_at = [&](std::size_t i, double cdf) {
    const double up = std::abs((static_cast<double>(i) + 1.0) / dn - cdf);
    const double dn_gap = std::abs(static_cast<double>(i) / dn - cdf);
    return std::max(up, dn_gap);
  };

  if (m.is_rayleigh()) {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      d = std::max(d, gap_at(i, 1.0 - std::exp(-sorted[i] * sorted[i] /
                                               (4.0 * m.gamma))));
    return d;
  }

  // Tabulate the model CDF on a log grid spanning the positive samples and
  // interpolate; exact quadrature then re-evaluates the gap maximizers.
  const double r_hi = sorted.back();
  double r_lo = 0.0;
  for (double x : sorted)
    if (x > 0.0) {
      r_lo = x;
      break;
    }
  if (r_lo == 0.0 || r_hi <= r_lo) {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      d = std::max(d, gap_at(i, model_cdf(sorted[i], m, q)));
    return d;
  }

  constexpr int kGrid = 600;
  const double llo = std::log(r_lo);
  const double lhi = std::log(r_hi);
  std::vector<double> gx(kGrid);
  std::vector<double> gy(kGrid);
  for (int j = 0; j < kGrid; ++j) {
    gx[j] = llo + (lhi - llo) * j / (kGrid - 1);
    gy[j] = model_cdf(std::exp(gx[j]), m, q);
  }
  const MonotoneCubic interp(gx, gy);

  std::vector<double> cdf(n);
  for (std::size_t i = 0; i < n; ++i)
    cdf[i] = sorted[i] > 0.0 ? interp(std::log(sorted[i])) : 0.0;

  double d_approx = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    d_approx = std::max(d_approx, gap_at(i, cdf[i]));

  // every sample whose interpolated gap is within the safety margin of the
  // max gets an exact evaluation
  constexpr double kMargin = 1e-4;
  constexpr std::size_t kMaxExact = 4096;
  double d = 0.0;
  std::size_t exact = 0;
  for (std::size_t i = 0; i < n && exact < kMaxExact; ++i) {
    if (gap_at(i, cdf[i]) >= d_approx - kMargin) {
      d = std::max(d, gap_at(i, model_cdf(sorted[i], m, q)));
      ++exact;
    }
  }
  return d;
}

double te_statistic(const AmplitudeSeries& a, const ModelParams& m,
                    double pfa, const QuadratureSpec& q,
                    bool* insufficient_tail) {
  if (!(pfa > 0.0 && pfa < 1.0))
    throw std::invalid_argument("te_statistic: pfa must lie in (0, 1)");
  if (insufficient_tail)
    *insufficient_tail =
        static_cast<double>(a.values.size()) * pfa < 10.0;

  const double r_model = quantile(pfa, m, q);
  std::vector<double> sorted = a.values;
  std::sort(sorted.begin(), sorted.end());
  const double r_emp = empirical_quantile_sorted(sorted, 1.0 - pfa);
  if (!(r_emp > 0.0))
    throw std::invalid_argument(
        "te_statistic: empirical quantile is zero at this pfa");
  return std::abs(20.0 * std::log10(r_model / r_emp));
}

GofReport evaluate_gof(const AmplitudeSeries& a, const ModelParams& m,
                       const GofConfig& cfg, const QuadratureSpec& q) {
  GofReport rep;
  rep.ks_stat = ks_statistic(a, m, q);
  rep.ks_critical = 1.36 / std::sqrt(static_cast<double>(a.values.size()));
  rep.pfa = cfg.pfa;
  rep.te_critical = cfg.te_critical_db;
  bool thin = false;
  rep.te_stat = te_statistic(a, m, cfg.pfa, q, &thin);
  rep.insufficient_tail = thin;
  rep.pass_ks = rep.ks_stat <= rep.ks_critical;
  rep.pass_te = rep.te_stat <= rep.te_critical;
  return rep;
}

}  // namespace cftray
