#include "apele/hole.hpp"

#include <cmath>
#include <string>

namespace apele {

namespace {

constexpr double kCurvatureZero = 1e-14;
constexpr double kUnitySlack = 1e-12; // roundoff margin before the clamp
constexpr double kXTol = 1e-12;
constexpr int kMaxIter = 200;
constexpr double kLoBelow = 1e-10;  // bracket (kLoBelow, 2 - kLoBelow)
constexpr double kHiAbove = 502.0;  // bracket (2 + kLoBelow, kHiAbove)

// 1 - e^{-x}(1 + x/2), stable for small x.
double one_minus_decay(double x) {
  if (x < 1e-4)
    return 0.5 * x * (1.0 - x * x / 6.0);
  return -std::expm1(-x) - 0.5 * x * std::exp(-x);
}

double log_one_minus_decay(double x) {
  if (x < 1e-4)
    return std::log(0.5 * x) + std::log1p(-x * x / 6.0);
  return std::log(one_minus_decay(x));
}

// Safeguarded Newton for a monotone function w on (lo, hi) with w(x*) = 0.
// w and dw are evaluated together.
template <typename F>
double monotone_newton(double lo, double hi, double w_lo, double w_hi, F eval) {
  if (!(w_lo == 0.0) && !(w_hi == 0.0) && (w_lo > 0.0) == (w_hi > 0.0))
    throw OutOfRangeError("hole shape target not bracketed");
  if (w_lo == 0.0)
    return lo;
  if (w_hi == 0.0)
    return hi;
  bool increasing = w_hi > 0.0;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIter; ++it) {
    auto [w, dw] = eval(x);
    if ((w > 0.0) == increasing)
      hi = x;
    else
      lo = x;
    double step = w / dw;
    double next = x - step;
    if (!(next > lo) || !(next < hi))
      next = 0.5 * (lo + hi); // Newton left the bracket, bisect
    double moved = std::abs(next - x);
    x = next;
    if (moved <= kXTol)
      return x;
  }
  return x; // bisection alone contracts the bracket well below kXTol
}

struct Branch {
  double lo, hi;
};

Branch branch_for(double q) {
  if (q > 0.0)
    return {2.0 + kLoBelow, kHiAbove};
  return {kLoBelow, 2.0 - kLoBelow};
}

// log |g(x)| with g(x) = x e^{-2x/3} / (x - 2) and its derivative.
std::pair<double, double> log_g(double x) {
  double val = std::log(x) - 2.0 * x / 3.0 - std::log(std::abs(x - 2.0));
  double der = 1.0 / x - 2.0 / 3.0 - 1.0 / (x - 2.0);
  return {val, der};
}

// log(-u_model(x)) up to the x-independent constant, and its derivative.
std::pair<double, double> log_u_shape(double x) {
  double val = std::log(std::abs(x - 2.0)) + x + log_one_minus_decay(x) -
               2.0 * std::log(x);
  double der = 1.0 / (x - 2.0) + 1.0 +
               0.5 * std::exp(-x) * (1.0 + x) / one_minus_decay(x) -
               2.0 / x;
  return {val, der};
}

double displacement(double x, double n, double rho) {
  return std::cbrt(n * x * x * x * std::exp(-x) / (8.0 * M_PI * rho));
}

HoleSolution fallback_solution() {
  HoleSolution s;
  s.status = HoleStatus::fallback;
  return s;
}

} // namespace

double br_curvature(const SpinFields &f) {
  double g2 = f.grad[0] * f.grad[0] + f.grad[1] * f.grad[1] +
              f.grad[2] * f.grad[2];
  double d = f.tau - 0.25 * g2 / f.rho;
  if (d < 0.0)
    d = 0.0; // von Weizsacker bound, negative values are roundoff
  return (f.lap - 2.0 * d) / 6.0;
}

double hole_potential(double x, double n, double rho) {
  double b = displacement(x, n, rho);
  return -n * one_minus_decay(x) / b;
}

double solve_br(double rho, double q, double n) {
  if (!(rho > 0.0) || !(n > 0.0))
    throw OutOfRangeError("solve_br needs positive density and normalization");
  if (q == 0.0)
    return 2.0;
  double rhs = (2.0 / 3.0) * std::pow(M_PI, 2.0 / 3.0) *
               std::pow(rho, 5.0 / 3.0) / (q * std::cbrt(n * n));
  double target = std::log(std::abs(rhs));
  Branch br = branch_for(q);
  auto eval = [target](double x) {
    auto [v, d] = log_g(x);
    return std::pair<double, double>(v - target, d);
  };
  double w_lo = eval(br.lo).first;
  double w_hi = eval(br.hi).first;
  return monotone_newton(br.lo, br.hi, w_lo, w_hi, eval);
}

HoleSolution relaxed_normalization(double rho, double q, double u_exact) {
  if (!(rho > 0.0) || !(u_exact < 0.0) || !std::isfinite(u_exact))
    return fallback_solution();

  HoleSolution s;
  if (std::abs(q) < kCurvatureZero) {
    // Shape equation degenerates; x = 2 exactly, normalization straight
    // from the potential match.
    double scale = std::cbrt(8.0 * M_PI * rho) * std::exp(2.0 / 3.0) *
                   one_minus_decay(2.0) / 2.0;
    double n23 = -u_exact / scale;
    s.x = 2.0;
    s.n_raw = n23 * std::sqrt(n23);
    s.status = HoleStatus::curvature_zero;
  } else {
    double k = (2.0 / 3.0) * std::pow(M_PI, 2.0 / 3.0) *
               std::pow(rho, 5.0 / 3.0) / q;
    double log_const = std::log(std::abs(k)) +
                       std::log(8.0 * M_PI * rho) / 3.0;
    double target = std::log(-u_exact) - log_const;
    Branch br = branch_for(q);
    auto eval = [target](double x) {
      auto [v, d] = log_u_shape(x);
      return std::pair<double, double>(v - target, d);
    };
    double x;
    try {
      double w_lo = eval(br.lo).first;
      double w_hi = eval(br.hi).first;
      x = monotone_newton(br.lo, br.hi, w_lo, w_hi, eval);
    } catch (const OutOfRangeError &) {
      return fallback_solution();
    }
    double n23 = k * (x - 2.0) * std::exp(2.0 * x / 3.0) / x;
    s.x = x;
    s.n_raw = n23 * std::sqrt(n23);
    s.status = HoleStatus::ok;
  }

  if (s.n_raw > 1.0 + kUnitySlack) {
    // Hole deeper than one electron; pin the normalization and let the
    // shape equation absorb the rest.
    s.n_eff = 1.0;
    s.status = HoleStatus::clamped;
    try {
      s.x = solve_br(rho, q, 1.0);
    } catch (const OutOfRangeError &) {
      s.x = 2.0;
    }
    s.b = displacement(s.x, 1.0, rho);
    s.a = s.x / s.b;
    return s;
  }
  s.n_eff = std::min(s.n_raw, 1.0);
  s.b = displacement(s.x, s.n_eff, rho);
  s.a = s.x / s.b;
  return s;
}

HoleSolution effective_hole(const SpinFields &f, double e_x) {
  if (f.negligible) {
    HoleSolution s;
    s.status = HoleStatus::negligible;
    return s;
  }
  double u_exact = 2.0 * e_x / f.rho;
  return relaxed_normalization(f.rho, br_curvature(f), u_exact);
}

} // namespace apele
