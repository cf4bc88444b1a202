#include "apele/elements.hpp"

#include <array>
#include <cctype>

namespace apele {

namespace {

constexpr int kMaxZ = 36;

const std::array<std::string, kMaxZ + 1> kSymbols = {
    "X",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr"};

constexpr double kAngstromToBohr = 1.8897261254578281;

// Slater's radii in Angstrom; hydrogen uses Becke's 0.35 instead of 0.25,
// noble gases take the preceding halogen's value.
constexpr std::array<double, kMaxZ + 1> kBraggAngstrom = {
    0.0,  0.35, 0.28,                                     // -, H, He
    1.45, 1.05, 0.85, 0.70, 0.65, 0.60, 0.50, 0.50,       // Li..Ne
    1.80, 1.50, 1.25, 1.10, 1.00, 1.00, 1.00, 1.00,       // Na..Ar
    2.20, 1.80,                                           // K, Ca
    1.60, 1.40, 1.35, 1.40, 1.40, 1.40, 1.35, 1.35, 1.35, // Sc..Cu
    1.35, 1.30, 1.25, 1.15, 1.15, 1.15, 1.15};            // Zn..Kr

} // namespace

int atomic_number(std::string_view symbol) {
  std::string s;
  for (char c : symbol)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += c;
  if (!s.empty())
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  for (size_t i = 1; i < s.size(); ++i)
    s[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
  for (int z = 1; z <= kMaxZ; ++z)
    if (kSymbols[z] == s)
      return z;
  throw UnknownElementError("unknown element symbol '" + std::string(symbol) +
                            "'");
}

const std::string &element_symbol(int z) {
  if (z < 1 || z > kMaxZ)
    throw UnknownElementError("no symbol for atomic number " +
                              std::to_string(z));
  return kSymbols[static_cast<size_t>(z)];
}

double bragg_radius(int z) {
  if (z < 1 || z > kMaxZ)
    throw UnknownElementError("no Bragg-Slater radius for atomic number " +
                              std::to_string(z));
  return kBraggAngstrom[static_cast<size_t>(z)] * kAngstromToBohr;
}

} // namespace apele
