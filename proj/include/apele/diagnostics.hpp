#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apele/error.hpp"

namespace apele {

class EmptyMatrixError : public Error {
public:
  using Error::Error;
};

class DivisionByZeroDomainError : public Error {
public:
  using Error::Error;
};

class ZeroDenominatorError : public Error {
public:
  using Error::Error;
};

class LambdaOutOfRangeError : public Error {
public:
  using Error::Error;
};

class UnknownKindError : public Error {
public:
  using Error::Error;
};

class TagMismatchError : public Error {
public:
  using Error::Error;
};

class ConstantPredictorError : public Error {
public:
  using Error::Error;
};

/// Named sequence of (tag, value) observations, e.g. one diagnostic across a
/// bond-stretch series. Tags must be unique within a series.
struct DiagnosticSeries {
  std::string name;
  std::vector<std::pair<std::string, double>> points;
};

/// Atomization-energy inputs for the energy-based diagnostics. The unit tag
/// is carried through to reports; all four energies must share it.
struct EnergyRecord {
  double tae_ccsd_t = 0.0;
  double tae_ccsd = 0.0;
  double tae_hybrid = 0.0;
  double tae_hf100 = 0.0;
  double lambda = 1.0; // exact-exchange fraction of the hybrid
  std::string unit = "kcal/mol";
};

/// Coupled-cluster singles amplitudes, row-major occupied x virtual.
struct AmplitudeData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  int n_correlated = 0; // valence electrons entering the T1 normalization
};

enum class ElementClass { organic, transition_3d, transition_4d };

enum class Severity {
  mild,
  moderate,
  severe,
  dynamic_dominated, // energy diagnostic below the nondynamic onset
  strong,
  no_threshold // the literature defines no band for this kind/class pair
};

const char *severity_label(Severity s);

/// Frobenius norm of the singles amplitudes over sqrt(n_correlated).
double t1_diagnostic(const AmplitudeData &amps);

/// Largest singular value of the singles-amplitude matrix.
double d1_diagnostic(const AmplitudeData &amps);

double t1_d1_ratio(double t1, double d1);

/// Percentage of the atomization energy contributed by perturbative triples.
double percent_tae(const EnergyRecord &rec);

/// Energy-based correlation diagnostic, normalized by the exact-exchange
/// fraction of the hybrid functional.
double a_lambda(const EnergyRecord &rec);

/// Diradical character from the frontier natural-orbital overlap t in [0,1].
double y_index(double t);

/// Same index entered through natural-orbital occupations; the overlap is
/// half the occupation difference.
double y_from_occupations(double n_homo, double n_lumo);

/// Severity band for a diagnostic value. Kinds: "T1", "D1", "%TAE" (alias
/// "%TAE[(T)]"), "A_lambda"; matching is case-insensitive.
Severity classify(const std::string &kind, double value, ElementClass cls);

/// Pairwise correlations in percent. Entries are empty where a correlation
/// is undefined (a constant series); the diagonal is always 100.
struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<std::optional<double>>> values;
};

CorrelationMatrix pearson_matrix(const std::vector<DiagnosticSeries> &series);

/// Ordinary least squares y = intercept + slope * x over shared tags.
/// correlation is the plain Pearson r, absent when y is constant.
struct RegressionFit {
  double intercept = 0.0;
  double slope = 0.0;
  std::optional<double> correlation;
};

RegressionFit linear_regression(const DiagnosticSeries &x,
                                const DiagnosticSeries &y);

} // namespace apele
