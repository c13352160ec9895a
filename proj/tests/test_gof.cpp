#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "errors.hpp"
#include "gof.hpp"
#include "sampler.hpp"

using namespace cftray;

namespace {

std::vector<double> synth(const ModelParams& m, std::size_t n,
                          std::uint64_t seed) {
  Rng rng(seed);
  return sample_amplitude(m, n, rng);
}

// direct per-sample KS evaluation, the slow reference for the production
// grid-accelerated path
double ks_direct(const AmplitudeSeries& a, const ModelParams& m,
                 const QuadratureSpec& q) {
  std::vector<double> sorted = a.values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = 1.0 - ccdf(sorted[i], m, q).value;
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
  }
  return d;
}

}  // namespace

TEST_CASE("empirical ccdf counting") {
  const AmplitudeSeries a({1.0, 2.0, 3.0});
  CHECK(empirical_ccdf(a, 1.5) == doctest::Approx(2.0 / 3.0));
  CHECK(empirical_ccdf(a, 0.0) == 1.0);
  CHECK(empirical_ccdf(a, 5.0) == 0.0);
  CHECK_THROWS_AS(empirical_ccdf(a, -1.0), std::invalid_argument);

  // piecewise constant with jumps only at the sample points
  CHECK(empirical_ccdf(a, 0.999) == 1.0);
  CHECK(empirical_ccdf(a, 1.0) == doctest::Approx(2.0 / 3.0));
  CHECK(empirical_ccdf(a, 1.001) == doctest::Approx(2.0 / 3.0));
  CHECK(empirical_ccdf(a, 2.999) == doctest::Approx(1.0 / 3.0));
  CHECK(empirical_ccdf(a, 3.0) == 0.0);
}

TEST_CASE("ks statistic of point masses at the model median") {
  const auto m = ModelParams::tempered(2.0, 1.0, 1.0);
  const double med = quantile(0.5, m);
  const AmplitudeSeries a({med, med});
  CHECK(ks_statistic(a, m) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("grid-accelerated ks equals the direct evaluation") {
  const QuadratureSpec q;
  const struct {
    ModelParams m;
    std::uint64_t seed;
  } cases[] = {{ModelParams::tempered(1.9, 1.0, 1.0), 1},
               {ModelParams::tempered(1.5, 2.0, 0.5), 2},
               {ModelParams::heavy_tailed(1.5, 1.0), 3}};
  for (const auto& c : cases) {
    const AmplitudeSeries a(synth(c.m, 2000, c.seed));
    const double fast = ks_statistic(a, c.m, q);
    const double slow = ks_direct(a, c.m, q);
    CHECK(std::abs(fast - slow) < 2e-7);
  }
}

TEST_CASE("ks accepts matching data and rejects a wrong model") {
  const auto m = ModelParams::tempered(1.9, 1.0, 1.0);
  const std::size_t n = 20000;
  const double crit = 1.36 / std::sqrt(static_cast<double>(n));

  int pass = 0;
  for (int seed = 0; seed < 20; ++seed) {
    const AmplitudeSeries a(synth(m, n, 100 + seed));
    if (ks_statistic(a, m) < crit) ++pass;
  }
  CHECK(pass >= 17);  // 5% level

  // rayleigh fitted to heavy-tailed data must fail decisively
  const AmplitudeSeries b(synth(ModelParams::tempered(1.5, 1.0, 1.0),
                                n, 55));
  const auto ray = fit_rayleigh(b);
  CHECK(ks_statistic(b, ray.params) > crit);
}

TEST_CASE("ks is invariant under joint rescaling") {
  const QuadratureSpec q;
  auto values = synth(ModelParams::tempered(1.5, 1.0, 1.0), 4000, 9);
  const AmplitudeSeries a(values);
  const double c = 3.7;
  auto scaled_values = values;
  for (auto& v : scaled_values) v *= c;
  const AmplitudeSeries b(scaled_values);

  const auto m = ModelParams::tempered(1.5, 1.0, 1.0);
  const double d1 = ks_statistic(a, m, q);
  const double d2 = ks_statistic(b, m.scaled_by(c), q);
  CHECK(std::abs(d1 - d2) < 1e-6);

  // the rayleigh case in its gamma -> c^2 gamma form
  auto rv = synth(ModelParams::tempered(2.0, 1.0, 1.0), 4000, 10);
  const AmplitudeSeries ra(rv);
  for (auto& v : rv) v *= c;
  const AmplitudeSeries rb(rv);
  const double e1 = ks_statistic(ra, ModelParams::tempered(2.0, 1.0, 1.0), q);
  const double e2 =
      ks_statistic(rb, ModelParams::tempered(2.0, c * c, 1.0), q);
  CHECK(std::abs(e1 - e2) < 1e-6);
}

TEST_CASE("te statistic definition") {
  const auto m = ModelParams::tempered(2.0, 1.0, 1.0);
  const double pfa = 1e-2;
  const AmplitudeSeries a(synth(m, 50000, 21));

  // construct a model whose pfa-quantile equals the empirical one: zero error
  std::vector<double> sorted = a.values;
  std::sort(sorted.begin(), sorted.end());
  const double h = (static_cast<double>(sorted.size()) - 1.0) * (1.0 - pfa);
  const std::size_t lo = static_cast<std::size_t>(h);
  const double r_emp =
      sorted[lo] + (h - std::floor(h)) * (sorted[lo + 1] - sorted[lo]);
  const double gamma0 = r_emp * r_emp / (4.0 * std::log(1.0 / pfa));
  const auto exact = ModelParams::tempered(2.0, gamma0, 1.0);
  CHECK(te_statistic(a, exact, pfa) < 1e-10);

  // scaling the model quantile by 2 gives 20 log10 2 dB exactly
  const auto doubled = ModelParams::tempered(2.0, 4.0 * gamma0, 1.0);
  CHECK(te_statistic(a, doubled, pfa) ==
        doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-9));

  CHECK_THROWS_AS(te_statistic(a, m, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(te_statistic(a, m, 1.0), std::invalid_argument);
}

TEST_CASE("te statistic on matching data is small") {
  const auto m = ModelParams::tempered(1.9, 1.0, 1.0);
  int ok = 0;
  for (int seed = 0; seed < 10; ++seed) {
    const AmplitudeSeries a(synth(m, 200000, 3000 + seed));
    if (te_statistic(a, m, 1e-2) < 0.2) ++ok;
  }
  CHECK(ok >= 9);
}

TEST_CASE("te is continuous in pfa across order statistics") {
  const auto m = ModelParams::tempered(1.9, 1.0, 1.0);
  const AmplitudeSeries a(synth(m, 5000, 17));
  // walk pfa across several order-statistic boundaries
  double prev = te_statistic(a, m, 0.0200);
  for (int i = 1; i <= 40; ++i) {
    const double pfa = 0.0200 - 1e-5 * i;
    const double cur = te_statistic(a, m, pfa);
    CHECK(std::abs(cur - prev) < 0.02);  // dB; small pfa step, small move
    prev = cur;
  }
}

TEST_CASE("insufficient tail flag") {
  const auto m = ModelParams::tempered(2.0, 1.0, 1.0);
  const AmplitudeSeries a(synth(m, 500, 4));
  bool thin = false;
  te_statistic(a, m, 1e-2, QuadratureSpec{}, &thin);
  CHECK(thin);
  const AmplitudeSeries b(synth(m, 5000, 4));
  te_statistic(b, m, 1e-2, QuadratureSpec{}, &thin);
  CHECK_FALSE(thin);
}

TEST_CASE("gof report flags are consistent") {
  const auto m = ModelParams::tempered(1.9, 1.0, 1.0);
  const AmplitudeSeries a(synth(m, 49170, 7));
  const auto rep = evaluate_gof(a, m);
  CHECK(rep.ks_critical ==
        doctest::Approx(1.36 / std::sqrt(49170.0)).epsilon(1e-12));
  CHECK(rep.te_critical == 1.0);
  CHECK(rep.pfa == 1e-2);
  CHECK(rep.pass_ks == (rep.ks_stat <= rep.ks_critical));
  CHECK(rep.pass_te == (rep.te_stat <= rep.te_critical));
  CHECK(rep.ks_stat >= 0.0);
  CHECK(rep.ks_stat <= 1.0);
  CHECK(rep.te_stat >= 0.0);
  CHECK_FALSE(rep.insufficient_tail);
}
