#include "apele/esp.hpp"

#include <cmath>

#include "apele/boys.hpp"
#include "apele/gaussian.hpp"

namespace apele {

namespace {

constexpr double kPairCutoff = 1e-14; // on exp(-mu |AB|^2)
constexpr int kMaxAxisOrder = 6;      // f x f on one axis

// Hermite expansion coefficients E_t^{ij} along one axis; the gaussian
// overlap prefactor is applied by the caller. out[t] for t in [0, i+j].
void hermite_e(int i, int j, double gamma, double xpa, double xpb,
               double *out) {
  double e[4][4][8] = {};
  e[0][0][0] = 1.0;
  double inv2g = 0.5 / gamma;
  for (int ii = 0; ii <= i; ++ii)
    for (int jj = 0; jj <= j; ++jj) {
      if (ii == 0 && jj == 0)
        continue;
      for (int t = 0; t <= ii + jj; ++t) {
        double v = 0.0;
        if (ii > 0) {
          if (t > 0)
            v += inv2g * e[ii - 1][jj][t - 1];
          v += xpa * e[ii - 1][jj][t];
          if (t + 1 <= ii - 1 + jj)
            v += (t + 1) * e[ii - 1][jj][t + 1];
        } else {
          if (t > 0)
            v += inv2g * e[ii][jj - 1][t - 1];
          v += xpb * e[ii][jj - 1][t];
          if (t + 1 <= ii + jj - 1)
            v += (t + 1) * e[ii][jj - 1][t + 1];
        }
        e[ii][jj][t] = v;
      }
    }
  for (int t = 0; t <= i + j; ++t)
    out[t] = e[i][j][t];
}

// Hermite Coulomb integrals R^0_{tuv} for t <= lt, u <= lu, v <= lv.
// r[t][u][v][m] recursion off the Boys values.
void hermite_r(int lt, int lu, int lv, double gamma,
               const std::array<double, 3> &pc,
               double r[kMaxAxisOrder + 1][kMaxAxisOrder + 1]
                       [kMaxAxisOrder + 1][kMaxAxisOrder + 1]) {
  int total_max = lt + lu + lv;
  double t_arg = gamma * (pc[0] * pc[0] + pc[1] * pc[1] + pc[2] * pc[2]);
  double f[kBoysMaxOrder + 1];
  boys_array(total_max, t_arg, f);
  double m2g = 1.0;
  for (int m = 0; m <= total_max; ++m) {
    r[0][0][0][m] = m2g * f[m];
    m2g *= -2.0 * gamma;
  }
  for (int total = 1; total <= total_max; ++total)
    for (int t = 0; t <= std::min(total, lt); ++t)
      for (int u = 0; u <= std::min(total - t, lu); ++u) {
        int v = total - t - u;
        if (v > lv)
          continue;
        for (int m = 0; m <= total_max - total; ++m) {
          double val;
          if (t > 0) {
            val = pc[0] * r[t - 1][u][v][m + 1];
            if (t > 1)
              val += (t - 1) * r[t - 2][u][v][m + 1];
          } else if (u > 0) {
            val = pc[1] * r[t][u - 1][v][m + 1];
            if (u > 1)
              val += (u - 1) * r[t][u - 2][v][m + 1];
          } else {
            val = pc[2] * r[t][u][v - 1][m + 1];
            if (v > 1)
              val += (v - 1) * r[t][u][v - 2][m + 1];
          }
          r[t][u][v][m] = val;
        }
      }
}

struct PairExpansion {
  double gamma;
  std::array<double, 3> center;
  int lt, lu, lv;
  double coef[kMaxAxisOrder + 1][kMaxAxisOrder + 1][kMaxAxisOrder + 1];
  bool dead = false;
};

PairExpansion expand_pair(const Primitive &p, const std::array<double, 3> &rp,
                          const Primitive &q,
                          const std::array<double, 3> &rq) {
  PairExpansion ex;
  double a = p.exponent, b = q.exponent;
  ex.gamma = a + b;
  double mu = a * b / ex.gamma;
  double ab2 = 0.0;
  for (int d = 0; d < 3; ++d) {
    double dx = rp[d] - rq[d];
    ab2 += dx * dx;
    ex.center[d] = (a * rp[d] + b * rq[d]) / ex.gamma;
  }
  double pre = std::exp(-mu * ab2);
  if (pre < kPairCutoff) {
    ex.dead = true;
    return ex;
  }
  CartPowers pw_p = type_powers(p.type_code);
  CartPowers pw_q = type_powers(q.type_code);
  int li[3] = {pw_p.l, pw_p.m, pw_p.n};
  int lj[3] = {pw_q.l, pw_q.m, pw_q.n};
  double e[3][kMaxAxisOrder + 1];
  for (int d = 0; d < 3; ++d)
    hermite_e(li[d], lj[d], ex.gamma, ex.center[d] - rp[d],
              ex.center[d] - rq[d], e[d]);
  ex.lt = li[0] + lj[0];
  ex.lu = li[1] + lj[1];
  ex.lv = li[2] + lj[2];
  double scale = p.norm * q.norm * pre * 2.0 * M_PI / ex.gamma;
  for (int t = 0; t <= ex.lt; ++t)
    for (int u = 0; u <= ex.lu; ++u)
      for (int v = 0; v <= ex.lv; ++v)
        ex.coef[t][u][v] = scale * e[0][t] * e[1][u] * e[2][v];
  return ex;
}

double contract(const PairExpansion &ex, const std::array<double, 3> &point) {
  double r[kMaxAxisOrder + 1][kMaxAxisOrder + 1][kMaxAxisOrder + 1]
          [kMaxAxisOrder + 1];
  std::array<double, 3> pc = {ex.center[0] - point[0],
                              ex.center[1] - point[1],
                              ex.center[2] - point[2]};
  hermite_r(ex.lt, ex.lu, ex.lv, ex.gamma, pc, r);
  double s = 0.0;
  for (int t = 0; t <= ex.lt; ++t)
    for (int u = 0; u <= ex.lu; ++u)
      for (int v = 0; v <= ex.lv; ++v)
        s += ex.coef[t][u][v] * r[t][u][v][0];
  return s;
}

} // namespace

double esp_pair_integral(const Primitive &p, const std::array<double, 3> &rp,
                         const Primitive &q, const std::array<double, 3> &rq,
                         const std::array<double, 3> &c) {
  PairExpansion ex = expand_pair(p, rp, q, rq);
  if (ex.dead)
    return 0.0;
  return contract(ex, c);
}

ExchangeEvaluator::ExchangeEvaluator(const WavefunctionData &wfn)
    : wfn_(wfn) {
  size_t n = wfn.primitives.size();
  pairs_.reserve(n * (n + 1) / 2);
  for (size_t p = 0; p < n; ++p) {
    const auto &rp = wfn.nuclei[wfn.primitives[p].center].position;
    for (size_t q = p; q < n; ++q) {
      const auto &rq = wfn.nuclei[wfn.primitives[q].center].position;
      PairExpansion ex =
          expand_pair(wfn.primitives[p], rp, wfn.primitives[q], rq);
      if (ex.dead)
        continue;
      PairData pd;
      pd.gamma = ex.gamma;
      pd.center = ex.center;
      pd.p = static_cast<int>(p);
      pd.q = static_cast<int>(q);
      pd.lt = ex.lt;
      pd.lu = ex.lu;
      pd.lv = ex.lv;
      double off_diag = (p == q) ? 1.0 : 2.0;
      pd.coef.resize((ex.lt + 1) * (ex.lu + 1) * (ex.lv + 1));
      size_t k = 0;
      for (int t = 0; t <= ex.lt; ++t)
        for (int u = 0; u <= ex.lu; ++u)
          for (int v = 0; v <= ex.lv; ++v)
            pd.coef[k++] = off_diag * ex.coef[t][u][v];
      pairs_.push_back(std::move(pd));
    }
  }
  weights_.assign(2, std::vector<double>(wfn.orbitals.size(), 0.0));
  for (size_t i = 0; i < wfn.orbitals.size(); ++i) {
    const Orbital &mo = wfn.orbitals[i];
    switch (mo.spin) {
    case Spin::alpha:
      weights_[0][i] = mo.occupation;
      break;
    case Spin::beta:
      weights_[1][i] = mo.occupation;
      break;
    case Spin::paired:
      weights_[0][i] = 0.5 * mo.occupation;
      weights_[1][i] = 0.5 * mo.occupation;
      break;
    }
  }
}

std::pair<double, double> ExchangeEvaluator::exchange_energy_density(
    const std::array<double, 3> &point,
    const std::vector<double> &orbital_values) const {
  size_t n_prim = wfn_.primitives.size();
  size_t n_mo = wfn_.orbitals.size();
  std::vector<double> g_a(n_prim, 0.0), g_b(n_prim, 0.0);
  for (size_t i = 0; i < n_mo; ++i) {
    double wa = weights_[0][i] * orbital_values[i];
    double wb = weights_[1][i] * orbital_values[i];
    if (wa == 0.0 && wb == 0.0)
      continue;
    const auto &c = wfn_.orbitals[i].coefficients;
    for (size_t p = 0; p < n_prim; ++p) {
      g_a[p] += wa * c[p];
      g_b[p] += wb * c[p];
    }
  }
  double gmax = 0.0;
  for (size_t p = 0; p < n_prim; ++p)
    gmax = std::max(gmax, std::max(std::abs(g_a[p]), std::abs(g_b[p])));
  if (gmax == 0.0)
    return {0.0, 0.0};
  double drop = 1e-15 * gmax;

  double acc_a = 0.0, acc_b = 0.0;
  double r[kMaxAxisOrder + 1][kMaxAxisOrder + 1][kMaxAxisOrder + 1]
          [kMaxAxisOrder + 1];
  for (const PairData &pd : pairs_) {
    double wa = g_a[pd.p] * g_a[pd.q];
    double wb = g_b[pd.p] * g_b[pd.q];
    if (std::abs(g_a[pd.p]) < drop && std::abs(g_b[pd.p]) < drop)
      continue;
    if (std::abs(g_a[pd.q]) < drop && std::abs(g_b[pd.q]) < drop)
      continue;
    std::array<double, 3> pc = {pd.center[0] - point[0],
                                pd.center[1] - point[1],
                                pd.center[2] - point[2]};
    hermite_r(pd.lt, pd.lu, pd.lv, pd.gamma, pc, r);
    double s = 0.0;
    size_t k = 0;
    for (int t = 0; t <= pd.lt; ++t)
      for (int u = 0; u <= pd.lu; ++u)
        for (int v = 0; v <= pd.lv; ++v)
          s += pd.coef[k++] * r[t][u][v][0];
    acc_a += wa * s;
    acc_b += wb * s;
  }
  return {-0.5 * acc_a, -0.5 * acc_b};
}

} // namespace apele
