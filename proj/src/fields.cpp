#include "apele/fields.hpp"

#include <cmath>

#include "apele/gaussian.hpp"

namespace apele {

namespace {

// Exponential screening bound; exp(-60) ~ 9e-27 is far below every field
// tolerance used downstream.
constexpr double kExpCutoff = 60.0;

struct OrbitalDerivs {
  double value = 0.0;
  std::array<double, 3> grad{0.0, 0.0, 0.0};
  double lap = 0.0;
};

void accumulate_spin(SpinFields &f, double occ, const OrbitalDerivs &mo) {
  if (occ == 0.0)
    return;
  f.rho += occ * mo.value * mo.value;
  for (int d = 0; d < 3; ++d)
    f.grad[d] += 2.0 * occ * mo.value * mo.grad[d];
  double g2 = mo.grad[0] * mo.grad[0] + mo.grad[1] * mo.grad[1] +
              mo.grad[2] * mo.grad[2];
  f.lap += 2.0 * occ * (mo.value * mo.lap + g2);
  f.tau += occ * g2;
}

} // namespace

FieldSample eval_fields(const WavefunctionData &wfn,
                        const std::array<double, 3> &point,
                        bool keep_orbitals) {
  const size_t n_prim = wfn.primitives.size();
  const size_t n_mo = wfn.orbitals.size();

  std::vector<PrimitiveValue> prim(n_prim);
  std::vector<char> live(n_prim, 0);
  for (size_t p = 0; p < n_prim; ++p) {
    const Primitive &pr = wfn.primitives[p];
    const auto &c = wfn.nuclei[pr.center].position;
    std::array<double, 3> delta = {point[0] - c[0], point[1] - c[1],
                                   point[2] - c[2]};
    double r2 = delta[0] * delta[0] + delta[1] * delta[1] +
                delta[2] * delta[2];
    if (pr.exponent * r2 > kExpCutoff)
      continue;
    prim[p] = eval_primitive(pr.type_code, pr.exponent, pr.norm, delta);
    live[p] = 1;
  }

  FieldSample out;
  if (keep_orbitals)
    out.orbital_values.resize(n_mo, 0.0);
  for (size_t i = 0; i < n_mo; ++i) {
    const Orbital &mo = wfn.orbitals[i];
    OrbitalDerivs d;
    for (size_t p = 0; p < n_prim; ++p) {
      if (!live[p])
        continue;
      double c = mo.coefficients[p];
      if (c == 0.0)
        continue;
      d.value += c * prim[p].value;
      d.grad[0] += c * prim[p].grad[0];
      d.grad[1] += c * prim[p].grad[1];
      d.grad[2] += c * prim[p].grad[2];
      d.lap += c * prim[p].laplacian;
    }
    if (keep_orbitals)
      out.orbital_values[i] = d.value;
    switch (mo.spin) {
    case Spin::alpha:
      accumulate_spin(out.alpha, mo.occupation, d);
      break;
    case Spin::beta:
      accumulate_spin(out.beta, mo.occupation, d);
      break;
    case Spin::paired:
      accumulate_spin(out.alpha, 0.5 * mo.occupation, d);
      accumulate_spin(out.beta, 0.5 * mo.occupation, d);
      break;
    }
  }
  out.alpha.negligible = out.alpha.rho < kNegligibleDensity;
  out.beta.negligible = out.beta.rho < kNegligibleDensity;
  return out;
}

} // namespace apele
