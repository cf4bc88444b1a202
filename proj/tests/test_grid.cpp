#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "apele/elements.hpp"
#include "apele/grid.hpp"
#include "apele/lebedev.hpp"

using namespace apele;

namespace {

Nucleus make_nucleus(int z, double x, double y, double zz) {
  Nucleus n;
  n.atomic_number = z;
  n.symbol = element_symbol(z);
  n.position = {x, y, zz};
  return n;
}

std::vector<double> sample(const MolecularGrid &grid,
                           const std::function<double(double, double, double)> &f) {
  std::vector<double> v;
  v.reserve(grid.points.size());
  for (const auto &p : grid.points)
    v.push_back(f(p.xyz[0], p.xyz[1], p.xyz[2]));
  return v;
}

double hydrogenic(double x, double y, double z, const std::array<double, 3> &c) {
  double r = std::sqrt((x - c[0]) * (x - c[0]) + (y - c[1]) * (y - c[1]) +
                       (z - c[2]) * (z - c[2]));
  return std::exp(-2.0 * r) / M_PI;
}

} // namespace

TEST_CASE("cell weights partition unity at random points") {
  std::vector<Nucleus> mol = {make_nucleus(1, 0.0, 0.0, 0.0),
                              make_nucleus(6, 2.1, 0.0, 0.3),
                              make_nucleus(8, 0.4, 1.9, -0.8)};
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  for (int k : {1, 3}) {
    for (bool adjust : {false, true}) {
      for (int trial = 0; trial < 10000; ++trial) {
        std::array<double, 3> pt = {coord(rng), coord(rng), coord(rng)};
        auto w = becke_weights(mol, pt, k, adjust);
        REQUIRE(w.size() == 3);
        double sum = 0.0;
        for (double wi : w) {
          CHECK(wi >= 0.0);
          CHECK(wi <= 1.0);
          sum += wi;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("single atom owns every point") {
  std::vector<Nucleus> mol = {make_nucleus(1, 0.5, -0.25, 1.0)};
  auto w = becke_weights(mol, {3.0, 2.0, 1.0}, 3, false);
  REQUIRE(w.size() == 1);
  CHECK(w[0] == doctest::Approx(1.0));
}

TEST_CASE("coincident nuclei are rejected") {
  std::vector<Nucleus> mol = {make_nucleus(1, 0.0, 0.0, 0.0),
                              make_nucleus(1, 0.0, 0.0, 1e-12)};
  CHECK_THROWS_AS(becke_weights(mol, {1.0, 0.0, 0.0}, 3, false),
                  CoincidentNucleiError);
  CHECK_THROWS_AS(build_grid(mol, GridSettings{}), CoincidentNucleiError);
}

TEST_CASE("midpoint split is even without size adjustment, shifted with it") {
  std::vector<Nucleus> mol = {make_nucleus(1, 0.0, 0.0, 0.0),
                              make_nucleus(8, 0.0, 0.0, 2.0)};
  std::array<double, 3> mid = {0.0, 0.0, 1.0};
  auto plain = becke_weights(mol, mid, 3, false);
  CHECK(plain[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(plain[1] == doctest::Approx(0.5).epsilon(1e-13));
  auto adjusted = becke_weights(mol, mid, 3, true);
  // The larger atom's cell must absorb the midpoint.
  CHECK(adjusted[1] > 0.6);
  CHECK(adjusted[0] + adjusted[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("default grid on one hydrogen") {
  std::vector<Nucleus> mol = {make_nucleus(1, 0.0, 0.0, 0.0)};
  MolecularGrid grid = build_grid(mol, GridSettings{});
  CHECK(grid.points.size() == 128u * 302u);
  REQUIRE(grid.atom_ranges.size() == 1);
  CHECK(grid.atom_ranges[0].first == 0);
  CHECK(grid.atom_ranges[0].second == grid.points.size());
  double prev_r = -1.0;
  for (size_t shell = 0; shell < 128; ++shell) {
    const auto &p = grid.points[shell * 302];
    double r = std::sqrt(p.xyz[0] * p.xyz[0] + p.xyz[1] * p.xyz[1] +
                         p.xyz[2] * p.xyz[2]);
    CHECK(r > prev_r); // shells stored inside out
    prev_r = r;
  }
  for (const auto &p : grid.points) {
    CHECK(p.weight > 0.0);
    CHECK(p.owner == 0);
  }
}

TEST_CASE("gaussian integrals on a one-atom grid") {
  std::vector<Nucleus> mol = {make_nucleus(1, 0.0, 0.0, 0.0)};
  MolecularGrid grid = build_grid(mol, GridSettings{});
  auto centered = sample(grid, [](double x, double y, double z) {
    return std::exp(-(x * x + y * y + z * z));
  });
  CHECK(integrate(grid, centered) ==
        doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-8));
  auto shifted = sample(grid, [](double x, double y, double z) {
    double dx = x - 0.3, dy = y + 0.2, dz = z - 0.5;
    return std::exp(-1.5 * (dx * dx + dy * dy + dz * dz));
  });
  CHECK(integrate(grid, shifted) ==
        doctest::Approx(std::pow(M_PI / 1.5, 1.5)).epsilon(1e-8));
}

TEST_CASE("exponential density normalizes on one- and two-center grids") {
  std::vector<Nucleus> h = {make_nucleus(1, 0.0, 0.0, 0.0)};
  MolecularGrid hg = build_grid(h, GridSettings{});
  auto rho1 = sample(hg, [](double x, double y, double z) {
    return hydrogenic(x, y, z, {0.0, 0.0, 0.0});
  });
  CHECK(integrate(hg, rho1) == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<Nucleus> h2 = {make_nucleus(1, 0.0, 0.0, 0.0),
                             make_nucleus(1, 0.0, 0.0, 1.4)};
  MolecularGrid g2 = build_grid(h2, GridSettings{});
  CHECK(g2.points.size() == 2u * 128u * 302u);
  auto rho2 = sample(g2, [](double x, double y, double z) {
    return hydrogenic(x, y, z, {0.0, 0.0, 0.0}) +
           hydrogenic(x, y, z, {0.0, 0.0, 1.4});
  });
  CHECK(integrate(g2, rho2) == doctest::Approx(2.0).epsilon(1e-8));
  double left = integrate_basin(g2, rho2, 0);
  double right = integrate_basin(g2, rho2, 1);
  CHECK(left == doctest::Approx(right).epsilon(1e-10)); // symmetric split
  CHECK(left == doctest::Approx(1.0).epsilon(1e-4));    // cell tails overlap
}

TEST_CASE("radial refinement converges") {
  std::vector<Nucleus> h = {make_nucleus(1, 0.0, 0.0, 0.0)};
  double prev_err = 1e9;
  for (int radial : {16, 32, 64, 128}) {
    GridSettings s;
    s.radial = radial;
    s.angular = 110;
    MolecularGrid g = build_grid(h, s);
    auto rho = sample(g, [](double x, double y, double z) {
      return hydrogenic(x, y, z, {0.0, 0.0, 0.0});
    });
    double err = std::abs(integrate(g, rho) - 1.0);
    CHECK(err < std::max(prev_err, 1e-12));
    prev_err = err;
  }
  CHECK(prev_err < 1e-10);
}

TEST_CASE("molecular integral equals the sum of basin integrals bitwise") {
  std::vector<Nucleus> mol = {make_nucleus(1, 0.0, 0.0, 0.0),
                              make_nucleus(8, 0.0, 0.0, 1.8),
                              make_nucleus(1, 1.5, 0.0, 2.4)};
  GridSettings s;
  s.radial = 32;
  s.angular = 50;
  MolecularGrid g = build_grid(mol, s);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<double> values(g.points.size());
  for (auto &v : values)
    v = val(rng);
  double whole = integrate(g, values);
  double parts = 0.0;
  for (size_t a = 0; a < mol.size(); ++a)
    parts += integrate_basin(g, values, a);
  CHECK(whole == parts); // bitwise contract
}

TEST_CASE("errors carry the right types") {
  std::vector<Nucleus> h = {make_nucleus(1, 0.0, 0.0, 0.0)};
  MolecularGrid g = build_grid(h, GridSettings{});
  std::vector<double> wrong(g.points.size() - 1, 1.0);
  CHECK_THROWS_AS(integrate(g, wrong), LengthMismatchError);
  CHECK_THROWS_AS(integrate_basin(g, wrong, 0), LengthMismatchError);

  GridSettings bad_ang;
  bad_ang.angular = 100;
  CHECK_THROWS_AS(build_grid(h, bad_ang), UnsupportedLebedevOrderError);

  GridSettings bad_rad;
  bad_rad.radial = 0;
  CHECK_THROWS_AS(build_grid(h, bad_rad), OutOfRangeError);

  std::vector<Nucleus> exotic = {make_nucleus(1, 0.0, 0.0, 0.0)};
  exotic[0].atomic_number = 99;
  CHECK_THROWS_AS(build_grid(exotic, GridSettings{}), UnknownElementError);
}
