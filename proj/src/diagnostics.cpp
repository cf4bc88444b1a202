#include "apele/diagnostics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include <Eigen/SVD>

namespace apele {

const char *severity_label(Severity s) {
  switch (s) {
  case Severity::mild:
    return "mild";
  case Severity::moderate:
    return "moderate";
  case Severity::severe:
    return "severe";
  case Severity::dynamic_dominated:
    return "dynamic-dominated";
  case Severity::strong:
    return "strong";
  case Severity::no_threshold:
    return "no-threshold";
  }
  return "unknown";
}

namespace {

void require_matrix(const AmplitudeData &amps) {
  if (amps.rows == 0 || amps.cols == 0 || amps.values.empty())
    throw EmptyMatrixError("amplitude matrix is empty");
  if (amps.values.size() != amps.rows * amps.cols)
    throw EmptyMatrixError("amplitude matrix has " +
                           std::to_string(amps.values.size()) +
                           " values for shape " + std::to_string(amps.rows) +
                           "x" + std::to_string(amps.cols));
}

} // namespace

double t1_diagnostic(const AmplitudeData &amps) {
  require_matrix(amps);
  if (amps.n_correlated <= 0)
    throw OutOfRangeError("correlated electron count must be positive");
  double ss = 0.0;
  for (double v : amps.values)
    ss += v * v;
  return std::sqrt(ss) / std::sqrt(static_cast<double>(amps.n_correlated));
}

double d1_diagnostic(const AmplitudeData &amps) {
  require_matrix(amps);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(amps.values.data(), static_cast<Eigen::Index>(amps.rows),
        static_cast<Eigen::Index>(amps.cols));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double t1_d1_ratio(double t1, double d1) {
  if (d1 <= 0.0)
    throw DivisionByZeroDomainError("ratio requires a positive denominator");
  return t1 / d1;
}

double percent_tae(const EnergyRecord &rec) {
  if (rec.tae_ccsd_t == 0.0)
    throw ZeroDenominatorError("total atomization energy is zero");
  return 100.0 * (rec.tae_ccsd_t - rec.tae_ccsd) / rec.tae_ccsd_t;
}

double a_lambda(const EnergyRecord &rec) {
  if (!(rec.lambda > 0.0) || rec.lambda > 1.0)
    throw LambdaOutOfRangeError("exchange fraction " +
                                std::to_string(rec.lambda) +
                                " outside (0, 1]");
  if (rec.tae_hf100 == 0.0)
    throw ZeroDenominatorError("full-exchange atomization energy is zero");
  return (1.0 - rec.tae_hybrid / rec.tae_hf100) / rec.lambda;
}

double y_index(double t) {
  if (!(t >= 0.0) || t > 1.0)
    throw OutOfRangeError("orbital overlap " + std::to_string(t) +
                          " outside [0, 1]");
  return 1.0 - 2.0 * t / (1.0 + t * t);
}

double y_from_occupations(double n_homo, double n_lumo) {
  if (!(n_homo >= 0.0) || n_homo > 2.0 || !(n_lumo >= 0.0) || n_lumo > 2.0)
    throw OutOfRangeError("occupations must lie in [0, 2]");
  if (n_homo < n_lumo)
    throw OutOfRangeError("frontier occupations are out of order");
  return y_index((n_homo - n_lumo) / 2.0);
}

namespace {

std::string normalize_kind(const std::string &kind) {
  std::string k;
  for (char c : kind)
    k.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (k == "%tae[(t)]")
    k = "%tae";
  return k;
}

} // namespace

Severity classify(const std::string &kind, double value, ElementClass cls) {
  std::string k = normalize_kind(kind);
  if (k == "t1") {
    double threshold = cls == ElementClass::organic          ? 0.02
                       : cls == ElementClass::transition_3d ? 0.05
                                                            : 0.045;
    return value > threshold ? Severity::severe : Severity::mild;
  }
  if (k == "d1") {
    switch (cls) {
    case ElementClass::organic:
      return Severity::no_threshold;
    case ElementClass::transition_3d:
      return value > 0.15 ? Severity::severe : Severity::mild;
    case ElementClass::transition_4d:
      return value >= 0.12 ? Severity::severe : Severity::mild;
    }
  }
  if (k == "%tae") {
    if (value < 5.0)
      return Severity::mild;
    if (value <= 10.0)
      return Severity::moderate;
    return Severity::severe;
  }
  if (k == "a_lambda") {
    if (value < 0.10)
      return Severity::dynamic_dominated;
    if (value < 0.225)
      return Severity::mild;
    if (value <= 0.50)
      return Severity::moderate;
    return Severity::strong;
  }
  throw UnknownKindError("no severity bands for diagnostic '" + kind + "'");
}

namespace {

struct Aligned {
  std::vector<double> a;
  std::vector<double> b;
};

std::map<std::string, double> tag_map(const DiagnosticSeries &s) {
  std::map<std::string, double> m;
  for (const auto &[tag, value] : s.points)
    if (!m.emplace(tag, value).second)
      throw TagMismatchError("series '" + s.name + "' repeats tag '" + tag +
                             "'");
  return m;
}

// Pulls both series into the tag order of the reference series.
Aligned align(const DiagnosticSeries &ref, const DiagnosticSeries &x,
              const DiagnosticSeries &y) {
  auto mx = tag_map(x), my = tag_map(y);
  if (mx.size() != my.size())
    throw TagMismatchError("series '" + x.name + "' and '" + y.name +
                           "' have different lengths");
  Aligned out;
  for (const auto &[tag, unused] : ref.points) {
    (void)unused;
    auto ix = mx.find(tag), iy = my.find(tag);
    if (ix == mx.end() || iy == my.end())
      throw TagMismatchError("tag '" + tag + "' is not shared by '" + x.name +
                             "' and '" + y.name + "'");
    out.a.push_back(ix->second);
    out.b.push_back(iy->second);
  }
  return out;
}

bool is_constant(const std::vector<double> &v) {
  return std::all_of(v.begin(), v.end(),
                     [&](double x) { return x == v.front(); });
}

struct Moments {
  double mean_x = 0.0, mean_y = 0.0;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
};

Moments moments(const std::vector<double> &x, const std::vector<double> &y) {
  Moments m;
  double n = static_cast<double>(x.size());
  for (double v : x)
    m.mean_x += v;
  for (double v : y)
    m.mean_y += v;
  m.mean_x /= n;
  m.mean_y /= n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - m.mean_x, dy = y[i] - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

std::optional<double> pearson(const std::vector<double> &x,
                              const std::vector<double> &y) {
  if (is_constant(x) || is_constant(y))
    return std::nullopt;
  Moments m = moments(x, y);
  if (m.sxx == 0.0 || m.syy == 0.0)
    return std::nullopt;
  return m.sxy / std::sqrt(m.sxx * m.syy);
}

} // namespace

CorrelationMatrix pearson_matrix(const std::vector<DiagnosticSeries> &series) {
  CorrelationMatrix out;
  if (series.empty())
    return out;
  if (series.front().points.size() < 2)
    throw TagMismatchError("correlation needs at least 2 shared tags");
  for (const auto &s : series)
    out.names.push_back(s.name);
  std::size_t n = series.size();
  out.values.assign(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    out.values[i][i] = 100.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Aligned v = align(series.front(), series[i], series[j]);
      std::optional<double> r = pearson(v.a, v.b);
      if (r)
        out.values[i][j] = out.values[j][i] = 100.0 * *r;
    }
  return out;
}

RegressionFit linear_regression(const DiagnosticSeries &x,
                                const DiagnosticSeries &y) {
  if (x.points.size() < 2)
    throw TagMismatchError("regression needs at least 2 shared tags");
  Aligned v = align(x, x, y);
  if (is_constant(v.a))
    throw ConstantPredictorError("predictor series '" + x.name +
                                 "' is constant");
  Moments m = moments(v.a, v.b);
  if (m.sxx == 0.0)
    throw ConstantPredictorError("predictor series '" + x.name +
                                 "' is constant");
  RegressionFit fit;
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.mean_y - fit.slope * m.mean_x;
  if (!is_constant(v.b) && m.syy != 0.0)
    fit.correlation = m.sxy / std::sqrt(m.sxx * m.syy);
  return fit;
}

} // namespace apele
