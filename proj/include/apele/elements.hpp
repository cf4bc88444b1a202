#pragma once

#include <string>
#include <string_view>

#include "apele/error.hpp"

namespace apele {

class UnknownElementError : public Error {
public:
  using Error::Error;
};

/// Atomic number for an element symbol ("H", "He", ...). Case-insensitive.
int atomic_number(std::string_view symbol);

/// Element symbol for an atomic number.
const std::string &element_symbol(int z);

/// Bragg-Slater radius in bohr (Slater's empirical set, H raised to 0.35 A).
/// Tabulated for Z = 1..36; throws UnknownElementError outside that range.
double bragg_radius(int z);

} // namespace apele
