#pragma once

#include <array>
#include <vector>

#include "apele/wfx.hpp"

namespace apele {

/// Spin densities below this are treated as numerically absent.
inline constexpr double kNegligibleDensity = 1e-12;

struct SpinFields {
  double rho = 0.0;
  std::array<double, 3> grad{0.0, 0.0, 0.0};
  double lap = 0.0;
  double tau = 0.0; // sum of n_i |grad phi_i|^2, no one-half factor
  bool negligible = true;
};

struct FieldSample {
  SpinFields alpha;
  SpinFields beta;
  std::vector<double> orbital_values; // phi_i at the point when requested
};

/// All scalar fields needed downstream at one point. Orbital values are
/// retained only when keep_orbitals is set (the exchange evaluator reuses
/// them, everything else does not need them).
FieldSample eval_fields(const WavefunctionData &wfn,
                        const std::array<double, 3> &point,
                        bool keep_orbitals = false);

} // namespace apele
