#pragma once

#include "apele/error.hpp"
#include "apele/fields.hpp"

namespace apele {

enum class HoleStatus {
  ok,             // potential-matched solve succeeded with n_eff in [0, 1]
  curvature_zero, // |Q| below 1e-14, closed-form x = 2 branch used
  clamped,        // matched normalization exceeded 1, remodeled at n = 1
  fallback,       // no usable hole (u >= 0 or unbracketable), n forced to 1
  negligible      // spin density below the significance threshold
};

struct HoleSolution {
  double x = 2.0;     // dimensionless hole displacement a*b
  double a = 0.0;     // inverse decay length of the model hole
  double b = 0.0;     // distance of the hole center from the reference point
  double n_eff = 1.0; // hole normalization after the [0, 1] clamp
  double n_raw = 1.0; // normalization the potential match actually produced
  HoleStatus status = HoleStatus::ok;
};

/// Curvature of the spherically averaged same-spin pair density around a
/// point, from density derivatives and kinetic density.
double br_curvature(const SpinFields &f);

/// Coulomb potential of the model hole at the reference point, for shape
/// parameter x, normalization n, and on-top density rho. Always negative.
double hole_potential(double x, double n, double rho);

/// Shape equation at fixed normalization: finds x such that the model hole
/// reproduces on-top density rho and curvature q. The branch is selected by
/// the sign of q (x > 2 iff q > 0). Throws OutOfRangeError when the target
/// lies outside the solver bracket.
double solve_br(double rho, double q, double n);

/// Potential-matched hole: finds x and the normalization n such that the
/// model reproduces rho, q, and the exchange-hole potential u_exact. Never
/// throws; unphysical inputs degrade to the fallback status.
HoleSolution relaxed_normalization(double rho, double q, double u_exact);

/// Full single-spin pipeline: negligible-density shortcut, curvature from
/// the fields, u_exact from the exchange energy density, matched solve.
HoleSolution effective_hole(const SpinFields &f, double e_x);

} // namespace apele
