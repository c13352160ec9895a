#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace cftray::quad {

// 15-point Gauss-Legendre rule on [-1, 1].
inline constexpr double kGl15X[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};

inline constexpr double kGl15W[15] = {
    0.03075324199611727, 0.07036604748810812, 0.1071592204671719,
    0.1395706779261543,  0.1662692058169939,  0.1861610000155622,
    0.1984314853271116,  0.2025782419255613,  0.1984314853271116,
    0.1861610000155622,  0.1662692058169939,  0.1395706779261543,
    0.1071592204671719,  0.07036604748810812, 0.03075324199611727};

template <class F>
double gauss15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 15; ++i) acc += kGl15W[i] * f(c + h * kGl15X[i]);
  return acc * h;
}

struct AdaptiveResult {
  double value = 0.0;
  double est_error = 0.0;
  bool converged = true;
};

// Adaptive Simpson with Richardson extrapolation. Splits until the local
// Richardson error estimate is below the local tolerance share or max_depth
// is hit (in which case `converged` is cleared but the best value is kept).
template <class F>
AdaptiveResult adaptive_simpson(F&& f, double a, double b, double abs_tol,
                                int max_depth = 50) {
  struct Frame {
    double a, b, fa, fm, fb, whole, tol;
    int depth;
  };

  AdaptiveResult out;
  if (!(b > a)) return out;

  const auto simpson = [](double h, double fa, double fm, double fb) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
  };

  // panels narrower than this may accept; forcing a few initial splits
  // keeps narrow features from slipping between the first probe points
  const double force_width = (b - a) / 256.0;

  // explicit stack; depth is bounded so the stack stays small
  constexpr int kMaxStack = 2048;
  Frame stack[kMaxStack];
  int top = 0;

  const double m0 = 0.5 * (a + b);
  const double fa0 = f(a), fm0 = f(m0), fb0 = f(b);
  stack[top++] = {a, b, fa0, fm0, fb0, simpson(b - a, fa0, fm0, fb0),
                  abs_tol, 0};

  while (top > 0) {
    const Frame fr = stack[--top];
    const double m = 0.5 * (fr.a + fr.b);
    const double lm = 0.5 * (fr.a + m);
    const double rm = 0.5 * (m + fr.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(m - fr.a, fr.fa, flm, fr.fm);
    const double right = simpson(fr.b - m, fr.fm, frm, fr.fb);
    const double delta = left + right - fr.whole;
    const bool may_accept = (fr.b - fr.a) <= force_width;
    if (fr.depth >= max_depth ||
        (may_accept && std::abs(delta) <= 15.0 * fr.tol)) {
      out.value += left + right + delta / 15.0;
      out.est_error += std::abs(delta) / 15.0;
      if (fr.depth >= max_depth && std::abs(delta) > 15.0 * fr.tol)
        out.converged = false;
      continue;
    }
    if (top + 2 > kMaxStack) {
      out.value += left + right + delta / 15.0;
      out.est_error += std::abs(delta) / 15.0;
      out.converged = false;
      continue;
    }
    stack[top++] = {fr.a, m, fr.fa, flm, fr.fm, left, 0.5 * fr.tol,
                    fr.depth + 1};
    stack[top++] = {m, fr.b, fr.fm, frm, fr.fb, right, 0.5 * fr.tol,
                    fr.depth + 1};
  }
  return out;
}

}  // namespace cftray::quad
