// Test-only reference implementations. Everything here is deliberately
// independent of the library's evaluation paths: plain recursive Simpson,
// std::cyl_bessel_j instead of libm j0/j1, closed forms where they exist.
#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace oracle {

double simpson(const std::function<double(double)>& f, double a, double b,
               double tol, int depth = 60);

// Levy(c) positive stable (index 1/2): density, CDF, and the inverse
// complementary error function used to locate its quantiles.
double levy_pdf(double x, double c);
double levy_cdf(double x, double c);
double erfc_inv(double y);

// Tempered stable CF by numerical integration of the tempered Levy measure
// (finite eta). Symmetric beta = 0 works for any alpha in (0, 2); skewed
// cases need alpha < 1 for absolute convergence.
std::complex<double> tempered_cf_via_levy(double xi, double alpha,
                                          double gamma, double beta,
                                          double eta);

// Brute-force amplitude CCDF as the nested double integral (outer over the
// amplitude, inner the oscillatory radial integral). eta <= 0 selects the
// heavy-tailed limit.
double ccdf_double_integral(double r, double alpha, double gamma,
                            double eta);

struct MeanSe {
  double mean;
  double se;
};
MeanSe mean_se(const std::vector<double>& xs);

}  // namespace oracle
