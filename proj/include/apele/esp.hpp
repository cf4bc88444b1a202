#pragma once

#include <array>
#include <utility>
#include <vector>

#include "apele/wfx.hpp"

namespace apele {

/// Coulomb-attraction integral of a pair of normalized cartesian primitives:
/// integral chi_p(r) chi_q(r) / |r - c| d^3r, centers taken from rp and rq.
double esp_pair_integral(const Primitive &p, const std::array<double, 3> &rp,
                         const Primitive &q, const std::array<double, 3> &rq,
                         const std::array<double, 3> &c);

/// Exact-exchange energy density of the occupied orbitals, evaluated
/// pointwise. Pair expansion data is precomputed once per wavefunction;
/// evaluation is const and usable concurrently from several threads.
class ExchangeEvaluator {
public:
  explicit ExchangeEvaluator(const WavefunctionData &wfn);

  /// e_X per spin at the point. orbital_values must hold phi_i(point) in
  /// wavefunction orbital order (eval_fields with keep_orbitals provides
  /// exactly that). Both values are <= 0.
  std::pair<double, double>
  exchange_energy_density(const std::array<double, 3> &point,
                          const std::vector<double> &orbital_values) const;

private:
  struct PairData {
    double gamma;
    std::array<double, 3> center; // gaussian product center
    int p, q;
    int lt, lu, lv; // per-axis hermite orders
    std::vector<double> coef;     // flattened [t][u][v], scale folded in
  };

  const WavefunctionData &wfn_;
  std::vector<PairData> pairs_;
  std::vector<std::vector<double>> weights_; // per spin: n_i at each orbital
};

} // namespace apele
