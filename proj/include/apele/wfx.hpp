#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "apele/error.hpp"
#include "apele/gaussian.hpp"

namespace apele {

/// Parse error with the wfx section and line it was detected at.
class WfxError : public Error {
public:
  WfxError(const std::string &message, std::string section, long line);
  const std::string &section() const { return section_; }
  long line() const { return line_; }

private:
  std::string section_;
  long line_ = 0;
};

class MissingSectionError : public WfxError {
public:
  using WfxError::WfxError;
};

class MalformedNumberError : public WfxError {
public:
  using WfxError::WfxError;
};

class InvariantViolationError : public WfxError {
public:
  using WfxError::WfxError;
};

enum class Spin { alpha, beta, paired };

struct Nucleus {
  std::string symbol;
  int atomic_number = 0;
  std::array<double, 3> position{0.0, 0.0, 0.0}; // bohr
};

struct Primitive {
  int center = 0; // index into nuclei
  int type_code = 1;
  double exponent = 0.0; // bohr^-2
  double norm = 0.0;     // normalization constant, filled by the parser
};

struct Orbital {
  double occupation = 0.0; // in [0, 2]
  Spin spin = Spin::paired;
  double energy = 0.0; // hartree
  std::vector<double> coefficients;
};

/// In-memory single-determinant wavefunction. Immutable once parsed; safe to
/// share read-only across threads.
struct WavefunctionData {
  std::vector<Nucleus> nuclei;
  std::vector<Primitive> primitives;
  std::vector<Orbital> orbitals;
  long declared_electron_count = 0;
};

/// Parse AIM .wfx text. Unrecognized sections are ignored; both restricted
/// (paired occupations) and unrestricted (separate alpha/beta) files are
/// accepted. All WavefunctionData invariants are checked before returning.
WavefunctionData parse_wfx(std::istream &in);
WavefunctionData parse_wfx_file(const std::string &path); // "-" reads stdin

/// Emit the wavefunction back as .wfx, reals at 16 significant digits.
/// serialize(parse(serialize(w))) is byte-identical to serialize(w).
std::string serialize_wfx(const WavefunctionData &wfn);

/// Per-spin occupation sums; paired orbitals contribute half to each spin.
std::pair<double, double> electron_counts(const WavefunctionData &wfn);

/// Run the invariant checks on an externally constructed WavefunctionData.
void validate(const WavefunctionData &wfn);

} // namespace apele
