#include "apele/apele.hpp"

#include <set>
#include <string>

#include "apele/parallel.hpp"

namespace apele {

PointApele apele_at_point(const WavefunctionData &wfn,
                          const ExchangeEvaluator &exchange,
                          const std::array<double, 3> &point) {
  PointApele out;
  out.fields = eval_fields(wfn, point, true);
  auto [ex_a, ex_b] =
      exchange.exchange_energy_density(point, out.fields.orbital_values);
  out.alpha = effective_hole(out.fields.alpha, ex_a);
  out.beta = effective_hole(out.fields.beta, ex_b);
  out.d_u = 2.0 * (out.fields.alpha.rho * (1.0 - out.alpha.n_eff) +
                   out.fields.beta.rho * (1.0 - out.beta.n_eff));
  return out;
}

namespace {

void count_status(StatusCounts &counts, HoleStatus s) {
  switch (s) {
  case HoleStatus::ok:
    ++counts.ok;
    break;
  case HoleStatus::curvature_zero:
    ++counts.curvature_zero;
    break;
  case HoleStatus::clamped:
    ++counts.clamped;
    break;
  case HoleStatus::fallback:
    ++counts.fallback;
    break;
  case HoleStatus::negligible:
    ++counts.negligible;
    break;
  }
}

} // namespace

ApeleResult compute_apele(const WavefunctionData &wfn,
                          const ApeleSettings &settings) {
  MolecularGrid grid = build_grid(wfn.nuclei, settings.grid);
  ExchangeEvaluator exchange(wfn);

  std::size_t n = grid.points.size();
  std::vector<double> d_u(n), rho_tot(n);
  std::vector<unsigned char> st_a(n), st_b(n);
  parallel_for(n, settings.threads, [&](std::size_t i) {
    PointApele p = apele_at_point(wfn, exchange, grid.points[i].xyz);
    d_u[i] = p.d_u;
    rho_tot[i] = p.fields.alpha.rho + p.fields.beta.rho;
    st_a[i] = static_cast<unsigned char>(p.alpha.status);
    st_b[i] = static_cast<unsigned char>(p.beta.status);
  });

  ApeleResult res;
  res.grid = settings.grid;
  for (std::size_t i = 0; i < n; ++i) {
    count_status(res.statuses, static_cast<HoleStatus>(st_a[i]));
    count_status(res.statuses, static_cast<HoleStatus>(st_b[i]));
  }
  std::size_t significant = res.statuses.total() - res.statuses.negligible;
  res.degraded =
      significant > 0 &&
      res.statuses.fallback * 100 > significant; // above 1 percent

  res.atoms.reserve(wfn.nuclei.size());
  for (std::size_t a = 0; a < wfn.nuclei.size(); ++a) {
    AtomPopulation ap;
    ap.atom = static_cast<int>(a);
    ap.symbol = wfn.nuclei[a].symbol;
    ap.population = integrate_basin(grid, d_u, a);
    res.atoms.push_back(std::move(ap));
  }
  res.total = integrate(grid, d_u);
  res.electron_count_check = integrate(grid, rho_tot);
  return res;
}

GroupedApele group_apele(const ApeleResult &result,
                         const std::vector<AtomGroup> &groups) {
  GroupedApele out;
  std::set<int> seen;
  for (const AtomGroup &g : groups) {
    GroupPopulation gp;
    gp.name = g.name;
    gp.atoms = g.atoms;
    for (int a : g.atoms) {
      if (a < 0 || a >= static_cast<int>(result.atoms.size()))
        throw UnknownAtomIndexError("group '" + g.name + "' refers to atom " +
                                    std::to_string(a) + " but only " +
                                    std::to_string(result.atoms.size()) +
                                    " atoms exist");
      if (!seen.insert(a).second)
        out.overlapping = true;
      gp.population += result.atoms[a].population;
    }
    gp.pair_share =
        result.total != 0.0 ? 2.0 * gp.population / result.total : 0.0;
    out.groups.push_back(std::move(gp));
  }
  return out;
}

} // namespace apele
