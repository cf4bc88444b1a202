// Command-line front end. Subcommands:
//   apele      unpaired-electron populations from a .wfx wavefunction
//   diag       wavefunction diagnostics from amplitude/energy/occupation data
//   corr       Pearson correlation matrix and regression over tagged series
//   grid-dump  molecular quadrature grid points
//
// Exit codes: 0 success, 1 error, 2 degraded report, 64 flag parse failure.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "apele/apele.hpp"
#include "apele/diagnostics.hpp"
#include "apele/grid.hpp"
#include "apele/wfx.hpp"

namespace {

using nlohmann::ordered_json;

std::string fmt_shortest(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_fixed(double v, int prec) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(prec) << v;
  return out.str();
}

std::string trim(const std::string &s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string &text, const std::string &where) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception &) {
    throw apele::Error(where + ": cannot parse number '" + text + "'");
  }
}

void emit(const std::string &text, const std::string &path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw apele::Error("cannot write output file '" + path + "'");
  out << text;
}

struct CommonOpts {
  std::string format = "json";
  std::string output;
};

// ---------------------------------------------------------------------------
// apele subcommand

struct ApeleOpts {
  std::string wfx;
  std::string grid_spec = "128x302";
  int becke_k = 3;
  bool size_adjust = false;
  int threads = 0;
  std::vector<std::string> groups;
  std::string level_of_theory;
  CommonOpts common;
};

apele::GridSettings parse_grid_spec(const std::string &spec, int becke_k,
                                    bool size_adjust) {
  apele::GridSettings g;
  std::size_t x = spec.find_first_of("xX");
  if (x == std::string::npos || x == 0 || x + 1 == spec.size()) {
    throw apele::Error("grid spec must look like 128x302, got '" + spec + "'");
  }
  g.radial = static_cast<int>(parse_double(spec.substr(0, x), "--grid"));
  g.angular = static_cast<int>(parse_double(spec.substr(x + 1), "--grid"));
  g.becke_k = becke_k;
  g.size_adjust = size_adjust;
  return g;
}

// "NAME=1,2,3" with 1-based atom numbers.
apele::AtomGroup parse_group_spec(const std::string &spec) {
  std::size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw apele::Error("group spec must look like NAME=1,2 but got '" + spec + "'");
  }
  apele::AtomGroup group;
  group.name = trim(spec.substr(0, eq));
  for (const std::string &tok : split(spec.substr(eq + 1), ',')) {
    std::string t = trim(tok);
    if (t.empty()) throw apele::Error("group '" + group.name + "' has an empty atom entry");
    int one_based = static_cast<int>(parse_double(t, "--groups"));
    group.atoms.push_back(one_based - 1);
  }
  return group;
}

ordered_json apele_report_json(const ApeleOpts &opts,
                               const apele::ApeleResult &result,
                               const std::vector<apele::GroupPopulation> &groups) {
  ordered_json j;
  j["command"] = "apele";
  j["input"] = opts.wfx;
  j["level_of_theory"] =
      opts.level_of_theory.empty() ? ordered_json(nullptr) : ordered_json(opts.level_of_theory);
  j["grid"] = {{"radial", result.grid.radial}, {"angular", result.grid.angular}};
  j["becke"] = {{"k", result.grid.becke_k}, {"size_adjust", result.grid.size_adjust}};
  j["threads"] = opts.threads;
  ordered_json atoms = ordered_json::array();
  for (const apele::AtomPopulation &a : result.atoms) {
    atoms.push_back({{"atom", a.atom + 1}, {"symbol", a.symbol}, {"population", a.population}});
  }
  j["atoms"] = std::move(atoms);
  ordered_json gj = ordered_json::array();
  for (const apele::GroupPopulation &g : groups) {
    ordered_json atoms_1b = ordered_json::array();
    for (int a : g.atoms) atoms_1b.push_back(a + 1);
    gj.push_back({{"name", g.name},
                  {"atoms", std::move(atoms_1b)},
                  {"population", g.population},
                  {"pair_share", g.pair_share}});
  }
  j["groups"] = std::move(gj);
  j["total_unpaired"] = result.total;
  j["electron_count_check"] = result.electron_count_check;
  j["statuses"] = {{"ok", result.statuses.ok},
                   {"curvature_zero", result.statuses.curvature_zero},
                   {"clamped", result.statuses.clamped},
                   {"fallback", result.statuses.fallback},
                   {"negligible", result.statuses.negligible}};
  j["degraded"] = result.degraded;
  return j;
}

std::string apele_report_csv(const apele::ApeleResult &result,
                             const std::vector<apele::GroupPopulation> &groups) {
  std::ostringstream out;
  out << "atom,symbol,population\n";
  for (const apele::AtomPopulation &a : result.atoms) {
    out << a.atom + 1 << "," << a.symbol << "," << fmt_shortest(a.population) << "\n";
  }
  out << "total,," << fmt_shortest(result.total) << "\n";
  if (!groups.empty()) {
    out << "group,atoms,population,pair_share\n";
    for (const apele::GroupPopulation &g : groups) {
      out << g.name << ",";
      for (std::size_t k = 0; k < g.atoms.size(); ++k) {
        out << (k ? "+" : "") << g.atoms[k] + 1;
      }
      out << "," << fmt_shortest(g.population) << "," << fmt_shortest(g.pair_share) << "\n";
    }
  }
  return out.str();
}

std::string apele_report_text(const ApeleOpts &opts,
                              const apele::ApeleResult &result,
                              const std::vector<apele::GroupPopulation> &groups) {
  std::ostringstream out;
  out << "unpaired-electron populations for " << opts.wfx << "\n";
  if (!opts.level_of_theory.empty()) {
    out << "level of theory: " << opts.level_of_theory << "\n";
  }
  out << "grid " << result.grid.radial << "x" << result.grid.angular << ", becke k="
      << result.grid.becke_k << ", size_adjust "
      << (result.grid.size_adjust ? "on" : "off") << "\n\n";
  out << "  atom  symbol  population\n";
  for (const apele::AtomPopulation &a : result.atoms) {
    out << std::setw(6) << a.atom + 1 << "  " << std::setw(6) << a.symbol << "  "
        << fmt_fixed(a.population, 6) << "\n";
  }
  out << "\ntotal unpaired electrons: " << fmt_fixed(result.total, 6) << "\n";
  if (!groups.empty()) {
    out << "\n  group  population  pair_share\n";
    for (const apele::GroupPopulation &g : groups) {
      out << std::setw(7) << g.name << "  " << fmt_fixed(g.population, 6) << "    "
          << fmt_fixed(g.pair_share, 6) << "\n";
    }
  }
  out << "\nelectron count check: " << fmt_fixed(result.electron_count_check, 6)
      << "\nstatuses: ok=" << result.statuses.ok
      << " curvature_zero=" << result.statuses.curvature_zero
      << " clamped=" << result.statuses.clamped
      << " fallback=" << result.statuses.fallback
      << " negligible=" << result.statuses.negligible << "\n";
  if (result.degraded) out << "report DEGRADED: fallback rate above 1%\n";
  return out.str();
}

int run_apele(const ApeleOpts &opts) {
  apele::WavefunctionData wfn = apele::parse_wfx_file(opts.wfx);
  apele::ApeleSettings settings;
  settings.grid = parse_grid_spec(opts.grid_spec, opts.becke_k, opts.size_adjust);
  settings.threads = opts.threads;
  apele::ApeleResult result = apele::compute_apele(wfn, settings);
  std::vector<apele::GroupPopulation> groups;
  if (!opts.groups.empty()) {
    std::vector<apele::AtomGroup> defs;
    defs.reserve(opts.groups.size());
    for (const std::string &spec : opts.groups) defs.push_back(parse_group_spec(spec));
    groups = apele::group_apele(result, defs).groups;
  }
  std::string text;
  if (opts.common.format == "json") {
    text = apele_report_json(opts, result, groups).dump(2) + "\n";
  } else if (opts.common.format == "csv") {
    text = apele_report_csv(result, groups);
  } else {
    text = apele_report_text(opts, result, groups);
  }
  emit(text, opts.common.output);
  if (result.degraded) {
    std::cerr << "apele: report degraded, hole solver fell back on more than 1% of "
                 "significant grid points\n";
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// diag subcommand

struct DiagOpts {
  std::string amplitudes;
  int n_correlated = 0;
  std::string energies;
  std::string occupations;
  std::string element_class = "organic";
  CommonOpts common;
};

apele::ElementClass parse_element_class(const std::string &name) {
  if (name == "organic") return apele::ElementClass::organic;
  if (name == "3d") return apele::ElementClass::transition_3d;
  if (name == "4d") return apele::ElementClass::transition_4d;
  throw apele::Error("unknown element class '" + name + "' (use organic, 3d, or 4d)");
}

ordered_json load_json_file(const std::string &path, const std::string &what) {
  std::ifstream in(path);
  if (!in) throw apele::Error("cannot open " + what + " file '" + path + "'");
  try {
    return ordered_json::parse(in);
  } catch (const std::exception &e) {
    throw apele::Error(what + " file '" + path + "': " + e.what());
  }
}

apele::AmplitudeData load_amplitudes(const std::string &path, int n_override) {
  apele::AmplitudeData amp;
  bool looks_json = path.size() > 5 && path.substr(path.size() - 5) == ".json";
  if (looks_json) {
    ordered_json j = load_json_file(path, "amplitudes");
    for (const char *field : {"rows", "cols", "values"}) {
      if (!j.contains(field)) {
        throw apele::Error("amplitudes: missing field '" + std::string(field) + "'");
      }
    }
    amp.rows = j["rows"].get<int>();
    amp.cols = j["cols"].get<int>();
    amp.values = j["values"].get<std::vector<double>>();
    if (j.contains("n_correlated")) amp.n_correlated = j["n_correlated"].get<int>();
  } else {
    std::ifstream in(path);
    if (!in) throw apele::Error("cannot open amplitudes file '" + path + "'");
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
      ++row;
      std::string t = trim(line);
      if (t.empty()) continue;
      std::vector<std::string> cells = split(t, ',');
      if (amp.cols == 0) {
        amp.cols = static_cast<int>(cells.size());
      } else if (static_cast<int>(cells.size()) != amp.cols) {
        throw apele::Error("amplitudes row " + std::to_string(row) + " has " +
                           std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(amp.cols));
      }
      for (const std::string &c : cells) {
        amp.values.push_back(parse_double(trim(c), "amplitudes row " + std::to_string(row)));
      }
      ++amp.rows;
    }
  }
  if (n_override > 0) amp.n_correlated = n_override;
  if (amp.n_correlated <= 0) {
    throw apele::Error("amplitudes: number of correlated electrons not given "
                       "(pass --n-correlated)");
  }
  return amp;
}

apele::EnergyRecord load_energies(const ordered_json &j, bool &have_tae, bool &have_lambda) {
  apele::EnergyRecord rec;
  have_tae = j.contains("tae_ccsd_t") && j.contains("tae_ccsd");
  have_lambda = j.contains("tae_hybrid") && j.contains("tae_hf100");
  if (have_tae) {
    rec.tae_ccsd_t = j["tae_ccsd_t"].get<double>();
    rec.tae_ccsd = j["tae_ccsd"].get<double>();
  }
  if (have_lambda) {
    rec.tae_hybrid = j["tae_hybrid"].get<double>();
    rec.tae_hf100 = j["tae_hf100"].get<double>();
  }
  if (j.contains("lambda")) rec.lambda = j["lambda"].get<double>();
  if (j.contains("unit")) rec.unit = j["unit"].get<std::string>();
  return rec;
}

struct DiagEntry {
  std::string name;
  std::optional<double> value;
  std::string label; // empty when the diagnostic carries no severity bands
};

int run_diag(const DiagOpts &opts) {
  if (opts.amplitudes.empty() && opts.energies.empty() && opts.occupations.empty()) {
    throw apele::Error("diag needs at least one of --amplitudes, --energies, --occupations");
  }
  apele::ElementClass cls = parse_element_class(opts.element_class);
  std::vector<DiagEntry> entries;
  auto classified = [&](const std::string &name, const char *kind, double value) {
    DiagEntry e;
    e.name = name;
    e.value = value;
    e.label = apele::severity_label(apele::classify(kind, value, cls));
    entries.push_back(e);
  };

  if (!opts.amplitudes.empty()) {
    apele::AmplitudeData amp = load_amplitudes(opts.amplitudes, opts.n_correlated);
    double t1 = apele::t1_diagnostic(amp);
    double d1 = apele::d1_diagnostic(amp);
    classified("t1", "t1", t1);
    classified("d1", "d1", d1);
    if (d1 > 0.0) {
      entries.push_back({"t1_d1_ratio", apele::t1_d1_ratio(t1, d1), ""});
    } else {
      entries.push_back({"t1_d1_ratio", std::nullopt, ""});
    }
  } else {
    entries.push_back({"t1", std::nullopt, ""});
    entries.push_back({"d1", std::nullopt, ""});
    entries.push_back({"t1_d1_ratio", std::nullopt, ""});
  }

  std::optional<double> ptae, alam;
  if (!opts.energies.empty()) {
    ordered_json j = load_json_file(opts.energies, "energies");
    bool have_tae = false, have_lambda = false;
    apele::EnergyRecord rec = load_energies(j, have_tae, have_lambda);
    if (have_tae) ptae = apele::percent_tae(rec);
    if (have_lambda) alam = apele::a_lambda(rec);
  }
  if (ptae) {
    classified("percent_tae", "%tae", *ptae);
  } else {
    entries.push_back({"percent_tae", std::nullopt, ""});
  }
  if (alam) {
    classified("a_lambda", "a_lambda", *alam);
  } else {
    entries.push_back({"a_lambda", std::nullopt, ""});
  }

  if (!opts.occupations.empty()) {
    std::vector<std::string> cells = split(opts.occupations, ',');
    if (cells.size() != 2) {
      throw apele::Error("--occupations wants 'n_homo,n_lumo' but got '" +
                         opts.occupations + "'");
    }
    double nh = parse_double(trim(cells[0]), "--occupations");
    double nl = parse_double(trim(cells[1]), "--occupations");
    entries.push_back({"y", apele::y_from_occupations(nh, nl), ""});
  } else {
    entries.push_back({"y", std::nullopt, ""});
  }

  std::string text;
  if (opts.common.format == "json") {
    ordered_json j;
    j["command"] = "diag";
    j["element_class"] = opts.element_class;
    for (const DiagEntry &e : entries) {
      if (!e.value) {
        j[e.name] = "not provided";
      } else if (e.label.empty()) {
        j[e.name] = {{"value", *e.value}};
      } else {
        j[e.name] = {{"value", *e.value}, {"label", e.label}};
      }
    }
    text = j.dump(2) + "\n";
  } else if (opts.common.format == "csv") {
    std::ostringstream out;
    out << "diagnostic,value,label\n";
    for (const DiagEntry &e : entries) {
      out << e.name << ",";
      if (e.value) {
        out << fmt_shortest(*e.value);
      } else {
        out << "not provided";
      }
      out << "," << e.label << "\n";
    }
    text = out.str();
  } else {
    std::ostringstream out;
    for (const DiagEntry &e : entries) {
      out << std::setw(12) << e.name << " = ";
      if (e.value) {
        out << fmt_fixed(*e.value, 6);
        if (!e.label.empty()) out << "  (" << e.label << ")";
      } else {
        out << "not provided";
      }
      out << "\n";
    }
    text = out.str();
  }
  emit(text, opts.common.output);
  return 0;
}

// ---------------------------------------------------------------------------
// corr subcommand

struct CorrOpts {
  std::string series;
  std::vector<std::string> regress;
  CommonOpts common;
};

// First column holds tags, header row names the series.
std::vector<apele::DiagnosticSeries> load_series_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw apele::Error("cannot open series file '" + path + "'");
  std::string line;
  std::vector<apele::DiagnosticSeries> series;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    std::string t = trim(line);
    if (t.empty()) continue;
    std::vector<std::string> cells = split(t, ',');
    if (series.empty()) {
      if (cells.size() < 2) {
        throw apele::Error("series header needs a tag column and at least one series");
      }
      for (std::size_t k = 1; k < cells.size(); ++k) {
        apele::DiagnosticSeries s;
        s.name = trim(cells[k]);
        if (s.name.empty()) {
          throw apele::Error("series header column " + std::to_string(k + 1) + " is empty");
        }
        series.push_back(std::move(s));
      }
      continue;
    }
    if (cells.size() != series.size() + 1) {
      throw apele::Error("series row " + std::to_string(row) + " has " +
                         std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(series.size() + 1));
    }
    std::string tag = trim(cells[0]);
    for (std::size_t k = 1; k < cells.size(); ++k) {
      series[k - 1].points.emplace_back(
          tag, parse_double(trim(cells[k]), "series row " + std::to_string(row)));
    }
  }
  if (series.empty()) throw apele::Error("series file '" + path + "' is empty");
  return series;
}

const apele::DiagnosticSeries &find_series(const std::vector<apele::DiagnosticSeries> &all,
                                           const std::string &name) {
  for (const apele::DiagnosticSeries &s : all) {
    if (s.name == name) return s;
  }
  throw apele::Error("no series named '" + name + "' in the input");
}

int run_corr(const CorrOpts &opts) {
  std::vector<apele::DiagnosticSeries> series = load_series_csv(opts.series);
  apele::CorrelationMatrix matrix = apele::pearson_matrix(series);

  bool want_regress = !opts.regress.empty();
  std::string rx, ry;
  std::optional<apele::RegressionFit> fit;
  if (want_regress) {
    for (const std::string &spec : opts.regress) {
      std::size_t eq = spec.find('=');
      if (eq == std::string::npos) {
        throw apele::Error("--regress wants x=NAME y=NAME, got '" + spec + "'");
      }
      std::string key = trim(spec.substr(0, eq));
      std::string val = trim(spec.substr(eq + 1));
      if (key == "x") {
        rx = val;
      } else if (key == "y") {
        ry = val;
      } else {
        throw apele::Error("--regress keys are x and y, got '" + key + "'");
      }
    }
    if (rx.empty() || ry.empty()) {
      throw apele::Error("--regress needs both x=NAME and y=NAME");
    }
    fit = apele::linear_regression(find_series(series, rx), find_series(series, ry));
  }

  std::string text;
  if (opts.common.format == "json") {
    ordered_json j;
    j["command"] = "corr";
    j["names"] = matrix.names;
    ordered_json rows = ordered_json::array();
    for (const auto &row : matrix.values) {
      ordered_json r = ordered_json::array();
      for (const auto &v : row) {
        if (v) {
          r.push_back(*v);
        } else {
          r.push_back(nullptr);
        }
      }
      rows.push_back(std::move(r));
    }
    j["matrix"] = std::move(rows);
    if (fit) {
      ordered_json rj;
      rj["x"] = rx;
      rj["y"] = ry;
      rj["slope"] = fit->slope;
      rj["intercept"] = fit->intercept;
      if (fit->correlation) {
        rj["correlation"] = *fit->correlation;
      } else {
        rj["correlation"] = nullptr;
      }
      j["regression"] = std::move(rj);
    }
    text = j.dump(2) + "\n";
  } else if (opts.common.format == "csv") {
    std::ostringstream out;
    out << "series";
    for (const std::string &n : matrix.names) out << "," << n;
    out << "\n";
    for (std::size_t i = 0; i < matrix.names.size(); ++i) {
      out << matrix.names[i];
      for (std::size_t k = 0; k < matrix.names.size(); ++k) {
        out << ",";
        if (matrix.values[i][k]) out << fmt_fixed(*matrix.values[i][k], 3);
      }
      out << "\n";
    }
    if (fit) {
      out << "\nregression,x,y,slope,intercept,correlation\n";
      out << "," << rx << "," << ry << "," << fmt_shortest(fit->slope) << ","
          << fmt_shortest(fit->intercept) << ",";
      if (fit->correlation) out << fmt_shortest(*fit->correlation);
      out << "\n";
    }
    text = out.str();
  } else {
    std::ostringstream out;
    std::size_t w = 9;
    for (const std::string &n : matrix.names) w = std::max(w, n.size() + 1);
    out << std::setw(static_cast<int>(w)) << "";
    for (const std::string &n : matrix.names) out << std::setw(static_cast<int>(w)) << n;
    out << "\n";
    for (std::size_t i = 0; i < matrix.names.size(); ++i) {
      out << std::setw(static_cast<int>(w)) << matrix.names[i];
      for (std::size_t k = 0; k < matrix.names.size(); ++k) {
        if (matrix.values[i][k]) {
          out << std::setw(static_cast<int>(w)) << fmt_fixed(*matrix.values[i][k], 3);
        } else {
          out << std::setw(static_cast<int>(w)) << "--";
        }
      }
      out << "\n";
    }
    if (fit) {
      out << "\nregression of " << ry << " on " << rx << ": slope "
          << fmt_fixed(fit->slope, 6) << ", intercept " << fmt_fixed(fit->intercept, 6);
      if (fit->correlation) out << ", r " << fmt_fixed(*fit->correlation, 6);
      out << "\n";
    }
    text = out.str();
  }
  emit(text, opts.common.output);
  return 0;
}

// ---------------------------------------------------------------------------
// grid-dump subcommand

struct GridDumpOpts {
  std::string wfx;
  std::string grid_spec = "128x302";
  int becke_k = 3;
  bool size_adjust = false;
  CommonOpts common;
};

int run_grid_dump(const GridDumpOpts &opts) {
  apele::WavefunctionData wfn = apele::parse_wfx_file(opts.wfx);
  apele::GridSettings settings =
      parse_grid_spec(opts.grid_spec, opts.becke_k, opts.size_adjust);
  apele::MolecularGrid grid = apele::build_grid(wfn.nuclei, settings);
  std::string text;
  if (opts.common.format == "json") {
    ordered_json j;
    j["command"] = "grid-dump";
    j["input"] = opts.wfx;
    j["grid"] = {{"radial", settings.radial},
                 {"angular", settings.angular},
                 {"becke_k", settings.becke_k},
                 {"size_adjust", settings.size_adjust}};
    j["point_count"] = grid.points.size();
    ordered_json pts = ordered_json::array();
    for (const apele::GridPoint &p : grid.points) {
      pts.push_back({{"x", p.xyz[0]},
                     {"y", p.xyz[1]},
                     {"z", p.xyz[2]},
                     {"weight", p.weight},
                     {"owner", p.owner + 1}});
    }
    j["points"] = std::move(pts);
    text = j.dump(2) + "\n";
  } else if (opts.common.format == "csv") {
    std::ostringstream out;
    out << "x,y,z,weight,owner\n";
    for (const apele::GridPoint &p : grid.points) {
      out << fmt_shortest(p.xyz[0]) << "," << fmt_shortest(p.xyz[1]) << ","
          << fmt_shortest(p.xyz[2]) << "," << fmt_shortest(p.weight) << ","
          << p.owner + 1 << "\n";
    }
    text = out.str();
  } else {
    std::ostringstream out;
    out << "quadrature grid for " << opts.wfx << ": " << grid.points.size()
        << " points, " << settings.radial << "x" << settings.angular
        << " per atom\n";
    for (std::size_t a = 0; a < grid.atom_ranges.size(); ++a) {
      auto [lo, hi] = grid.atom_ranges[a];
      out << "  atom " << a + 1 << " (" << wfn.nuclei[a].symbol << "): points ["
          << lo << ", " << hi << ")\n";
    }
    text = out.str();
  }
  emit(text, opts.common.output);
  return 0;
}

void add_common(CLI::App *cmd, CommonOpts &common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--output,-o", common.output, "Output file (default: stdout)");
  // Consumed during pre-parse expansion; registered so it shows up in help.
  cmd->add_option("--config", "Read flag defaults from a flat key=value file");
}

// Flat key=value config support. The file's keys become --key=value tokens
// appended to the argument list; keys already present on the command line
// are skipped, so explicit flags win.
std::vector<std::string> expand_config(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) return args; // let CLI11 report the missing value
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) throw apele::Error("cannot open config file '" + config_path + "'");
  auto present = [&args](const std::string &key) {
    std::string flag = "--" + key;
    for (const std::string &a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
      if (key == "output" && (a == "-o" || a.rfind("-o=", 0) == 0)) return true;
    }
    return false;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw apele::Error("config file '" + config_path + "' line " +
                         std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw apele::Error("config file '" + config_path + "' line " +
                         std::to_string(lineno) + ": empty key");
    }
    if (!present(key)) args.push_back("--" + key + "=" + value);
  }
  return args;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Unpaired-electron populations and correlation diagnostics "
               "for single-determinant wavefunctions"};
  app.require_subcommand(1);

  ApeleOpts ao;
  CLI::App *ap = app.add_subcommand(
      "apele", "Per-atom unpaired-electron populations from a .wfx file");
  ap->add_option("--wfx", ao.wfx, "Wavefunction file (.wfx, '-' for stdin)")->required();
  ap->add_option("--grid", ao.grid_spec, "Radial x angular grid points per atom")
      ->capture_default_str();
  ap->add_option("--becke-k", ao.becke_k, "Cell function sharpening iterations")
      ->capture_default_str();
  ap->add_flag("--size-adjust", ao.size_adjust,
               "Shift cell boundaries by the covalent radius ratio");
  ap->add_option("--threads", ao.threads, "Worker threads (0 = hardware)")
      ->capture_default_str();
  ap->add_option("--groups", ao.groups,
                 "Atom group as NAME=1,2 with 1-based atom numbers (repeatable)");
  ap->add_option("--level-of-theory", ao.level_of_theory,
                 "Provenance note echoed into the report");
  add_common(ap, ao.common);

  DiagOpts dopts;
  CLI::App *dg = app.add_subcommand(
      "diag", "Nondynamic-correlation diagnostics from reference data");
  dg->add_option("--amplitudes", dopts.amplitudes,
                 "Singles amplitudes, .json {rows,cols,values,n_correlated} or .csv rows");
  dg->add_option("--n-correlated", dopts.n_correlated,
                 "Correlated electron count for CSV amplitudes");
  dg->add_option("--energies", dopts.energies,
                 "Atomization energies .json (tae_ccsd_t, tae_ccsd, tae_hybrid, "
                 "tae_hf100, lambda)");
  dg->add_option("--occupations", dopts.occupations,
                 "Frontier natural occupations as 'n_homo,n_lumo'");
  dg->add_option("--element-class", dopts.element_class,
                 "Threshold family: organic, 3d, or 4d")
      ->check(CLI::IsMember({"organic", "3d", "4d"}))
      ->capture_default_str();
  add_common(dg, dopts.common);

  CorrOpts co;
  CLI::App *cr = app.add_subcommand(
      "corr", "Pearson correlations and regression over tagged series");
  cr->add_option("--series", co.series, "CSV with a tag column and one column per series")
      ->required();
  cr->add_option("--regress", co.regress,
                 "Fit y on x, written as --regress x=NAME y=NAME");
  add_common(cr, co.common);

  GridDumpOpts go;
  CLI::App *gd = app.add_subcommand("grid-dump", "Molecular quadrature grid points");
  gd->add_option("--wfx", go.wfx, "Wavefunction file supplying the nuclei")->required();
  gd->add_option("--grid", go.grid_spec, "Radial x angular grid points per atom")
      ->capture_default_str();
  gd->add_option("--becke-k", go.becke_k, "Cell function sharpening iterations")
      ->capture_default_str();
  gd->add_flag("--size-adjust", go.size_adjust,
               "Shift cell boundaries by the covalent radius ratio");
  add_common(gd, go.common);

  int rc = 0;
  ap->callback([&]() { rc = run_apele(ao); });
  dg->callback([&]() { rc = run_diag(dopts); });
  cr->callback([&]() { rc = run_corr(co); });
  gd->callback([&]() { rc = run_grid_dump(go); });

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end()); // CLI11's vector overload pops from the back
    app.parse(args);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 64;
  } catch (const apele::Error &e) {
    std::cerr << "apele: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "apele: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
