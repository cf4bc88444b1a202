#include "apele/boys.hpp"

#include <cmath>
#include <string>

namespace apele {

namespace {

constexpr double kSwitch = 35.0;

// Convergent series at the highest order, F_m(t) = e^{-t} sum_i (2t)^i
// (2m-1)!! / (2m+2i+1)!!. All terms positive, no cancellation.
double series_top(int m, double t) {
  double term = 1.0 / (2.0 * m + 1.0);
  double sum = term;
  double two_t = 2.0 * t;
  for (int i = 1; i < 400; ++i) {
    term *= two_t / (2.0 * m + 2.0 * i + 1.0);
    sum += term;
    if (term < sum * 1e-17)
      break;
  }
  return std::exp(-t) * sum;
}

} // namespace

void boys_array(int m_max, double t, double *out) {
  if (m_max < 0 || m_max > kBoysMaxOrder)
    throw OutOfRangeError("boys order " + std::to_string(m_max) +
                          " outside [0, 24]");
  if (t < 0.0)
    throw OutOfRangeError("boys argument t = " + std::to_string(t) +
                          " is negative");
  if (t < kSwitch) {
    out[m_max] = series_top(m_max, t);
    if (m_max > 0) {
      double et = std::exp(-t);
      for (int m = m_max; m > 0; --m)
        out[m - 1] = (2.0 * t * out[m] + et) / (2.0 * m - 1.0);
    }
    return;
  }
  // Large t: closed form for F_0, then upward recursion. Stable here since
  // 2t always exceeds 2m+1 in the supported order range.
  double st = std::sqrt(t);
  out[0] = 0.5 * std::sqrt(M_PI) / st * std::erf(st);
  double et = std::exp(-t);
  for (int m = 0; m < m_max; ++m)
    out[m + 1] = ((2.0 * m + 1.0) * out[m] - et) / (2.0 * t);
}

double boys(int m, double t) {
  double buf[kBoysMaxOrder + 1];
  boys_array(m, t, buf);
  return buf[m];
}

} // namespace apele
