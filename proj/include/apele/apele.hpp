#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "apele/esp.hpp"
#include "apele/fields.hpp"
#include "apele/grid.hpp"
#include "apele/hole.hpp"
#include "apele/wfx.hpp"

namespace apele {

class UnknownAtomIndexError : public Error {
public:
  using Error::Error;
};

struct ApeleSettings {
  GridSettings grid;
  int threads = 0; // 0 picks one thread per core
};

/// One point of the delocalization density pipeline.
struct PointApele {
  FieldSample fields;
  HoleSolution alpha;
  HoleSolution beta;
  double d_u = 0.0; // density of effectively delocalized electrons
};

PointApele apele_at_point(const WavefunctionData &wfn,
                          const ExchangeEvaluator &exchange,
                          const std::array<double, 3> &point);

struct AtomPopulation {
  int atom = 0;
  std::string symbol;
  double population = 0.0; // basin integral of d_u
};

struct StatusCounts {
  std::size_t ok = 0;
  std::size_t curvature_zero = 0;
  std::size_t clamped = 0;
  std::size_t fallback = 0;
  std::size_t negligible = 0;

  std::size_t total() const {
    return ok + curvature_zero + clamped + fallback + negligible;
  }
};

struct ApeleResult {
  std::vector<AtomPopulation> atoms;
  double total = 0.0; // equals the sum of atomic populations bitwise
  StatusCounts statuses;
  bool degraded = false; // fallback rate above 1% of significant points
  double electron_count_check = 0.0; // grid integral of the total density
  GridSettings grid;
};

/// Full analysis: grid, fields, exchange, hole normalization at every point,
/// basin-resolved populations of the delocalization density.
ApeleResult compute_apele(const WavefunctionData &wfn,
                          const ApeleSettings &settings);

struct AtomGroup {
  std::string name;
  std::vector<int> atoms;
};

struct GroupPopulation {
  std::string name;
  std::vector<int> atoms;
  double population = 0.0; // sum of member basin populations
  double pair_share = 0.0; // 2 * population / total
};

struct GroupedApele {
  std::vector<GroupPopulation> groups;
  bool overlapping = false; // some atom appears in more than one group
};

/// Aggregates basin populations over user-defined atom groups. Group
/// indices are zero-based; unknown indices throw UnknownAtomIndexError.
GroupedApele group_apele(const ApeleResult &result,
                         const std::vector<AtomGroup> &groups);

} // namespace apele
