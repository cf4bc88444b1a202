#pragma once

#include "apele/error.hpp"

namespace apele {

inline constexpr int kBoysMaxOrder = 24;

/// Boys function F_m(t) = integral_0^1 u^{2m} exp(-t u^2) du.
/// Valid for m in [0, 24] and t >= 0; throws OutOfRangeError otherwise.
double boys(int m, double t);

/// Fill out[0..m_max] with F_0(t) .. F_m_max(t) in one pass.
void boys_array(int m_max, double t, double *out);

} // namespace apele
