#pragma once

#include <array>

#include "apele/error.hpp"

namespace apele {

class UnsupportedPrimitiveTypeError : public Error {
public:
  using Error::Error;
};

/// Cartesian powers (l, m, n) of a primitive x^l y^m z^n exp(-a r^2).
struct CartPowers {
  int l = 0;
  int m = 0;
  int n = 0;
  int total() const { return l + m + n; }
};

/// Decode a wfx Cartesian type code (1 = s, 2-4 = p, 5-10 = d, 11-20 = f).
/// Codes above 20 (g and higher) throw UnsupportedPrimitiveTypeError.
CartPowers type_powers(int type_code);

/// Normalization constant of the Cartesian primitive with the given type
/// code and exponent, so that the normalized primitive has unit self-overlap.
double primitive_norm(int type_code, double exponent);

/// Value, gradient and Laplacian of one normalized primitive at `delta`
/// = point - center.
struct PrimitiveValue {
  double value = 0.0;
  std::array<double, 3> grad{0.0, 0.0, 0.0};
  double laplacian = 0.0;
};

PrimitiveValue eval_primitive(int type_code, double exponent, double norm,
                              const std::array<double, 3> &delta);

} // namespace apele
