#pragma once

#include <array>
#include <vector>

#include "apele/error.hpp"

namespace apele {

class UnsupportedLebedevOrderError : public Error {
public:
  using Error::Error;
};

struct LebedevPoint {
  std::array<double, 3> xyz; // on the unit sphere
  double weight;             // weights over a rule sum to 1
};

/// Supported rule sizes, ascending.
const std::vector<int> &lebedev_orders();

/// Polynomial degree integrated exactly by the rule of the given size.
int lebedev_degree(int order);

/// Angular quadrature rule with `order` points. Throws
/// UnsupportedLebedevOrderError for sizes not in lebedev_orders().
const std::vector<LebedevPoint> &lebedev_rule(int order);

} // namespace apele
