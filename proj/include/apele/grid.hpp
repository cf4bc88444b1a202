#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "apele/error.hpp"
#include "apele/wfx.hpp"

namespace apele {

class CoincidentNucleiError : public Error {
public:
  using Error::Error;
};

class LengthMismatchError : public Error {
public:
  using Error::Error;
};

struct GridSettings {
  int radial = 128;        // radial shells per atom
  int angular = 302;       // Lebedev points per shell
  int becke_k = 3;         // cell function sharpening iterations
  bool size_adjust = false; // heteronuclear cell boundary shift
};

struct GridPoint {
  std::array<double, 3> xyz;
  double weight; // full 3D quadrature weight including the cell factor
  int owner;     // atom whose shells produced this point
};

/// Atom-centered molecular quadrature grid. Points are stored contiguously
/// by owner atom, in deterministic order.
struct MolecularGrid {
  std::vector<GridPoint> points;
  std::vector<std::pair<std::size_t, std::size_t>> atom_ranges;
};

/// Normalized partition weights of every atom at one point; entries are in
/// [0, 1] and sum to 1. Throws CoincidentNucleiError when two nuclei sit
/// closer than 1e-10 bohr.
std::vector<double> becke_weights(const std::vector<Nucleus> &nuclei,
                                  const std::array<double, 3> &point, int k,
                                  bool size_adjust);

MolecularGrid build_grid(const std::vector<Nucleus> &nuclei,
                         const GridSettings &settings);

/// Quadrature sum of values over the grid. Each owner block is accumulated
/// with compensated summation, blocks are then combined left to right, so
/// the molecular integral equals the sum of basin integrals bitwise.
double integrate(const MolecularGrid &grid, const std::vector<double> &values);

/// One owner block of the same sum.
double integrate_basin(const MolecularGrid &grid,
                       const std::vector<double> &values, std::size_t atom);

} // namespace apele
