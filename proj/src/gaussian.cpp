#include "apele/gaussian.hpp"

#include <cmath>

namespace apele {

namespace {

// wfx ordering: s | x y z | xx yy zz xy xz yz | xxx yyy zzz xxy xxz yyz xyy
// xzz yzz xyz
constexpr CartPowers kTypeTable[] = {
    {0, 0, 0},                                                      // 1
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1},                                // 2-4
    {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, // 5-10
    {3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {2, 1, 0}, {2, 0, 1}, {0, 2, 1}, // 11-16
    {1, 2, 0}, {1, 0, 2}, {0, 1, 2}, {1, 1, 1}};                    // 17-20

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2)
    r *= k;
  return r;
}

// d/dx and d2/dx2 of x^l exp(-a x^2), divided by exp(-a x^2).
struct AxisFactors {
  double f;   // x^l
  double df;  // l x^(l-1) - 2 a x^(l+1)
  double ddf; // l(l-1) x^(l-2) - 2a(2l+1) x^l + 4a^2 x^(l+2)
};

AxisFactors axis_factors(int l, double a, double x) {
  double xl = 1.0, xlm1 = 0.0, xlm2 = 0.0;
  switch (l) {
  case 0:
    break;
  case 1:
    xl = x;
    xlm1 = 1.0;
    break;
  case 2:
    xl = x * x;
    xlm1 = x;
    xlm2 = 1.0;
    break;
  case 3:
    xl = x * x * x;
    xlm1 = x * x;
    xlm2 = x;
    break;
  default:
    xl = std::pow(x, l);
    xlm1 = std::pow(x, l - 1);
    xlm2 = std::pow(x, l - 2);
    break;
  }
  AxisFactors out;
  out.f = xl;
  out.df = l * xlm1 - 2.0 * a * x * xl;
  out.ddf = l * (l - 1) * xlm2 - 2.0 * a * (2 * l + 1) * xl +
            4.0 * a * a * x * x * xl;
  return out;
}

} // namespace

CartPowers type_powers(int type_code) {
  if (type_code < 1 || type_code > 20)
    throw UnsupportedPrimitiveTypeError(
        "unsupported primitive type code " + std::to_string(type_code) +
        " (supported: 1-20, Cartesian s/p/d/f)");
  return kTypeTable[type_code - 1];
}

double primitive_norm(int type_code, double exponent) {
  const CartPowers p = type_powers(type_code);
  const double a = exponent;
  const double pref = std::pow(2.0 * a / M_PI, 0.75);
  const double ang =
      std::pow(4.0 * a, 0.5 * p.total()) /
      std::sqrt(double_factorial(2 * p.l - 1) * double_factorial(2 * p.m - 1) *
                double_factorial(2 * p.n - 1));
  return pref * ang;
}

PrimitiveValue eval_primitive(int type_code, double exponent, double norm,
                              const std::array<double, 3> &delta) {
  const CartPowers p = type_powers(type_code);
  const double r2 =
      delta[0] * delta[0] + delta[1] * delta[1] + delta[2] * delta[2];
  const double e = norm * std::exp(-exponent * r2);
  PrimitiveValue out;
  if (e == 0.0)
    return out;
  const AxisFactors fx = axis_factors(p.l, exponent, delta[0]);
  const AxisFactors fy = axis_factors(p.m, exponent, delta[1]);
  const AxisFactors fz = axis_factors(p.n, exponent, delta[2]);
  out.value = e * fx.f * fy.f * fz.f;
  out.grad[0] = e * fx.df * fy.f * fz.f;
  out.grad[1] = e * fx.f * fy.df * fz.f;
  out.grad[2] = e * fx.f * fy.f * fz.df;
  out.laplacian =
      e * (fx.ddf * fy.f * fz.f + fx.f * fy.ddf * fz.f + fx.f * fy.f * fz.ddf);
  return out;
}

} // namespace apele
