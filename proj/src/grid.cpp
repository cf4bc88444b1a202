#include "apele/grid.hpp"

#include <cmath>
#include <string>

#include "apele/elements.hpp"
#include "apele/lebedev.hpp"

namespace apele {

namespace {

double distance(const std::array<double, 3> &a,
                const std::array<double, 3> &b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Becke cell function: odd polynomial sharpened k times, mapped to [0, 1].
double cell_step(double mu, int k) {
  double f = mu;
  for (int i = 0; i < k; ++i)
    f = 0.5 * f * (3.0 - f * f);
  return 0.5 * (1.0 - f);
}

// Boundary shift parameter for unequal atom sizes, clamped to |a| <= 1/2.
double size_shift(double r_a, double r_b) {
  double chi = r_a / r_b;
  double u = (chi - 1.0) / (chi + 1.0);
  double a = u / (u * u - 1.0);
  if (a > 0.5)
    a = 0.5;
  if (a < -0.5)
    a = -0.5;
  return a;
}

struct PairTable {
  std::vector<double> inv_dist; // n x n, 1/R_AB
  std::vector<double> shift;    // n x n, boundary shift a_AB
  std::size_t n = 0;
};

PairTable make_pairs(const std::vector<Nucleus> &nuclei, bool size_adjust) {
  PairTable t;
  t.n = nuclei.size();
  t.inv_dist.assign(t.n * t.n, 0.0);
  t.shift.assign(t.n * t.n, 0.0);
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = 0; b < t.n; ++b) {
      if (a == b)
        continue;
      double d = distance(nuclei[a].position, nuclei[b].position);
      if (d < 1e-10)
        throw CoincidentNucleiError(
            "nuclei " + std::to_string(a) + " and " + std::to_string(b) +
            " are closer than 1e-10 bohr");
      t.inv_dist[a * t.n + b] = 1.0 / d;
      if (size_adjust)
        t.shift[a * t.n + b] =
            size_shift(bragg_radius(nuclei[a].atomic_number),
                       bragg_radius(nuclei[b].atomic_number));
    }
  return t;
}

std::vector<double> cell_weights(const std::vector<Nucleus> &nuclei,
                                 const PairTable &pairs,
                                 const std::array<double, 3> &point, int k) {
  std::size_t n = nuclei.size();
  std::vector<double> dist(n);
  for (std::size_t a = 0; a < n; ++a)
    dist[a] = distance(nuclei[a].position, point);
  std::vector<double> p(n, 1.0);
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a)
        continue;
      double mu = (dist[a] - dist[b]) * pairs.inv_dist[a * n + b];
      double shift = pairs.shift[a * n + b];
      if (shift != 0.0)
        mu += shift * (1.0 - mu * mu);
      p[a] *= cell_step(mu, k);
    }
    total += p[a];
  }
  for (std::size_t a = 0; a < n; ++a)
    p[a] /= total;
  return p;
}

// Radial shell radius for an element; hydrogen keeps its full covalent
// radius, everything else uses half.
double radial_scale(int atomic_number) {
  double r = bragg_radius(atomic_number);
  return atomic_number == 1 ? r : 0.5 * r;
}

} // namespace

std::vector<double> becke_weights(const std::vector<Nucleus> &nuclei,
                                  const std::array<double, 3> &point, int k,
                                  bool size_adjust) {
  if (nuclei.empty())
    throw Error("becke_weights: no nuclei");
  PairTable pairs = make_pairs(nuclei, size_adjust);
  return cell_weights(nuclei, pairs, point, k);
}

MolecularGrid build_grid(const std::vector<Nucleus> &nuclei,
                         const GridSettings &settings) {
  if (nuclei.empty())
    throw Error("build_grid: no nuclei");
  if (settings.radial < 1)
    throw OutOfRangeError("radial shell count must be at least 1");
  if (settings.becke_k < 1)
    throw OutOfRangeError("becke_k must be at least 1");
  const auto &angular = lebedev_rule(settings.angular);
  PairTable pairs = make_pairs(nuclei, settings.size_adjust);

  MolecularGrid grid;
  grid.points.reserve(nuclei.size() * settings.radial * angular.size());
  int n_rad = settings.radial;
  double four_pi = 4.0 * M_PI;
  for (std::size_t a = 0; a < nuclei.size(); ++a) {
    std::size_t begin = grid.points.size();
    double rm = radial_scale(nuclei[a].atomic_number);
    const auto &origin = nuclei[a].position;
    for (int j = n_rad; j >= 1; --j) { // ascending radius
      double theta = j * M_PI / (n_rad + 1);
      double x = std::cos(theta);
      double r = rm * (1.0 + x) / (1.0 - x);
      double dr = 2.0 * rm / ((1.0 - x) * (1.0 - x));
      double w_rad = M_PI / (n_rad + 1) * std::sin(theta) * dr * r * r;
      for (const auto &ang : angular) {
        GridPoint pt;
        pt.xyz = {origin[0] + r * ang.xyz[0], origin[1] + r * ang.xyz[1],
                  origin[2] + r * ang.xyz[2]};
        double w = w_rad * four_pi * ang.weight;
        if (nuclei.size() > 1)
          w *= cell_weights(nuclei, pairs, pt.xyz, settings.becke_k)[a];
        pt.weight = w;
        pt.owner = static_cast<int>(a);
        grid.points.push_back(pt);
      }
    }
    grid.atom_ranges.emplace_back(begin, grid.points.size());
  }
  return grid;
}

double integrate_basin(const MolecularGrid &grid,
                       const std::vector<double> &values, std::size_t atom) {
  if (values.size() != grid.points.size())
    throw LengthMismatchError(
        "integrate: " + std::to_string(values.size()) + " values for " +
        std::to_string(grid.points.size()) + " grid points");
  if (atom >= grid.atom_ranges.size())
    throw OutOfRangeError("integrate_basin: atom index out of range");
  auto [begin, end] = grid.atom_ranges[atom];
  // Neumaier compensated sum over the block.
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    double term = grid.points[i].weight * values[i];
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double integrate(const MolecularGrid &grid,
                 const std::vector<double> &values) {
  if (values.size() != grid.points.size())
    throw LengthMismatchError(
        "integrate: " + std::to_string(values.size()) + " values for " +
        std::to_string(grid.points.size()) + " grid points");
  double total = 0.0;
  for (std::size_t a = 0; a < grid.atom_ranges.size(); ++a)
    total += integrate_basin(grid, values, a);
  return total;
}

} // namespace apele
