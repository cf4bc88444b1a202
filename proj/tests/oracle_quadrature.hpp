#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

namespace apele::testing {

inline double simpson_step(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)> &f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_step(a, m, fa, flm, fm);
  double right = simpson_step(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson integral of f over [a, b] with absolute tolerance tol.
inline double adaptive_integral(const std::function<double(double)> &f,
                                double a, double b, double tol) {
  double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  double whole = simpson_step(a, b, fa, fm, fb);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Independent oracle for F_m(t) = int_0^1 u^{2m} exp(-t u^2) du.
inline double boys_oracle(int m, double t) {
  auto f = [m, t](double u) {
    double p = 1.0;
    for (int i = 0; i < m; ++i)
      p *= u * u;
    return p * std::exp(-t * u * u);
  };
  double scale = 0.0;
  for (int i = 0; i <= 64; ++i)
    scale = std::max(scale, f(i / 64.0));
  return adaptive_integral(f, 0.0, 1.0, std::max(scale, 1e-300) * 1e-15);
}

} // namespace apele::testing
