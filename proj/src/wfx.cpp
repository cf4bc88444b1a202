#include "apele/wfx.hpp"

#include "apele/elements.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace apele {

WfxError::WfxError(const std::string &message, std::string section, long line)
    : Error(message + " (section '" + section + "', line " +
            std::to_string(line) + ")"),
      section_(std::move(section)), line_(line) {}

namespace {

struct Token {
  std::string text;
  long line;
};

struct Section {
  std::vector<Token> tokens; // whitespace-split data, nested tag lines kept
  long open_line = 0;
};

std::string trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// A tag line holds exactly one <...> or </...> element.
bool tag_name(const std::string &line, std::string &name, bool &closing) {
  std::string t = trim(line);
  if (t.size() < 3 || t.front() != '<' || t.back() != '>')
    return false;
  std::string inner = t.substr(1, t.size() - 2);
  closing = !inner.empty() && inner.front() == '/';
  if (closing)
    inner = inner.substr(1);
  inner = trim(inner);
  if (inner.empty() || inner.find('<') != std::string::npos ||
      inner.find('>') != std::string::npos)
    return false;
  name = inner;
  return true;
}

using SectionMap = std::map<std::string, Section>;

SectionMap read_sections(std::istream &in) {
  SectionMap sections;
  std::string line;
  long lineno = 0;
  std::string current;      // open section name, empty at top level
  long current_line = 0;    // line the open tag appeared on
  Section *body = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    std::string name;
    bool closing = false;
    if (tag_name(line, name, closing)) {
      if (current.empty()) {
        if (closing)
          throw MissingSectionError("close tag without matching open", name,
                                    lineno);
        current = name;
        current_line = lineno;
        auto [it, fresh] = sections.try_emplace(name);
        if (!fresh)
          throw InvariantViolationError("duplicate section", name, lineno);
        body = &it->second;
        body->open_line = lineno;
        continue;
      }
      if (closing && name == current) {
        current.clear();
        body = nullptr;
        continue;
      }
      // Nested tag (only <MO Number> in practice); keep it as data so the
      // section parser can recover the structure.
      body->tokens.push_back({trim(line), lineno});
      continue;
    }
    if (current.empty()) {
      if (!trim(line).empty())
        throw MissingSectionError("data outside any section", trim(line),
                                  lineno);
      continue;
    }
    std::istringstream ls(line);
    std::string word;
    while (ls >> word)
      body->tokens.push_back({word, lineno});
  }
  if (!current.empty())
    throw MissingSectionError("section not closed before end of file", current,
                              current_line);
  return sections;
}

const Section &require(const SectionMap &sections, const std::string &name) {
  auto it = sections.find(name);
  if (it == sections.end())
    throw MissingSectionError("required section is missing", name, 0);
  return it->second;
}

double parse_real(const Token &tok, const std::string &section) {
  std::string s = tok.text;
  for (char &c : s)
    if (c == 'D' || c == 'd')
      c = 'E'; // Fortran exponent marker
  const char *begin = s.c_str();
  char *end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + s.size() || s.empty())
    throw MalformedNumberError("cannot parse real '" + tok.text + "'", section,
                               tok.line);
  return v;
}

long parse_integer(const Token &tok, const std::string &section) {
  const char *begin = tok.text.c_str();
  char *end = nullptr;
  long v = std::strtol(begin, &end, 10);
  if (end != begin + tok.text.size() || tok.text.empty())
    throw MalformedNumberError("cannot parse integer '" + tok.text + "'",
                               section, tok.line);
  return v;
}

std::vector<double> real_list(const Section &sec, const std::string &name) {
  std::vector<double> out;
  out.reserve(sec.tokens.size());
  for (const auto &tok : sec.tokens)
    out.push_back(parse_real(tok, name));
  return out;
}

std::vector<long> integer_list(const Section &sec, const std::string &name) {
  std::vector<long> out;
  out.reserve(sec.tokens.size());
  for (const auto &tok : sec.tokens)
    out.push_back(parse_integer(tok, name));
  return out;
}

void check_count(size_t got, size_t want, const std::string &name,
                 long line) {
  if (got != want)
    throw InvariantViolationError("section holds " + std::to_string(got) +
                                      " values, expected " +
                                      std::to_string(want),
                                  name, line);
}

std::string symbol_from_name(const std::string &name) {
  std::string sym;
  for (char c : name) {
    if (std::isalpha(static_cast<unsigned char>(c)))
      sym.push_back(c);
    else
      break;
  }
  return sym;
}

// MO coefficient bodies interleave <MO Number> blocks with coefficient runs.
std::vector<std::vector<double>> parse_mo_coefficients(const Section &sec,
                                                       size_t n_prims) {
  static const std::string name = "Molecular Orbital Primitive Coefficients";
  std::vector<std::vector<double>> mos;
  size_t i = 0;
  const auto &toks = sec.tokens;
  auto is_tag = [](const Token &t, const char *txt) { return t.text == txt; };
  while (i < toks.size()) {
    if (is_tag(toks[i], "<MO Number>")) {
      // header: <MO Number> k </MO Number>
      if (i + 2 >= toks.size() || !is_tag(toks[i + 2], "</MO Number>"))
        throw InvariantViolationError("malformed MO Number block", name,
                                      toks[i].line);
      long idx = parse_integer(toks[i + 1], name);
      if (idx != static_cast<long>(mos.size()) + 1)
        throw InvariantViolationError(
            "MO Number " + std::to_string(idx) + " out of order", name,
            toks[i + 1].line);
      i += 3;
      mos.emplace_back();
      mos.back().reserve(n_prims);
      continue;
    }
    if (mos.empty())
      throw InvariantViolationError("coefficients before first MO Number",
                                    name, toks[i].line);
    mos.back().push_back(parse_real(toks[i], name));
    ++i;
  }
  for (size_t k = 0; k < mos.size(); ++k)
    if (mos[k].size() != n_prims)
      throw InvariantViolationError(
          "orbital " + std::to_string(k + 1) + " has " +
              std::to_string(mos[k].size()) + " coefficients, expected " +
              std::to_string(n_prims),
          name, sec.open_line);
  return mos;
}

Spin parse_spin(const std::string &text, long line) {
  if (text == "Alpha")
    return Spin::alpha;
  if (text == "Beta")
    return Spin::beta;
  if (text == "Alpha and Beta")
    return Spin::paired;
  throw InvariantViolationError("unknown spin type '" + text + "'",
                                "Molecular Orbital Spin Types", line);
}

// Spin entries are one per line, and "Alpha and Beta" spans three tokens.
std::vector<Spin> parse_spins(const Section &sec) {
  std::vector<Spin> out;
  size_t i = 0;
  while (i < sec.tokens.size()) {
    long line = sec.tokens[i].line;
    std::string text = sec.tokens[i].text;
    size_t j = i + 1;
    while (j < sec.tokens.size() && sec.tokens[j].line == line) {
      text += " " + sec.tokens[j].text;
      ++j;
    }
    out.push_back(parse_spin(text, line));
    i = j;
  }
  return out;
}

} // namespace

void validate(const WavefunctionData &wfn) {
  if (wfn.nuclei.empty())
    throw InvariantViolationError("no nuclei", "Nuclear Cartesian Coordinates",
                                  0);
  if (wfn.primitives.empty())
    throw InvariantViolationError("no primitives", "Primitive Exponents", 0);
  if (wfn.orbitals.empty())
    throw InvariantViolationError("no orbitals",
                                  "Molecular Orbital Occupation Numbers", 0);
  for (const auto &p : wfn.primitives) {
    if (p.center < 0 || p.center >= static_cast<int>(wfn.nuclei.size()))
      throw InvariantViolationError("primitive center index out of range",
                                    "Primitive Centers", 0);
    if (!(p.exponent > 0.0))
      throw InvariantViolationError("primitive exponent must be positive",
                                    "Primitive Exponents", 0);
    type_powers(p.type_code); // throws UnsupportedPrimitiveTypeError
  }
  double occ_sum = 0.0;
  for (const auto &mo : wfn.orbitals) {
    if (mo.occupation < -1e-9 || mo.occupation > 2.0 + 1e-9)
      throw InvariantViolationError(
          "occupation " + std::to_string(mo.occupation) + " outside [0, 2]",
          "Molecular Orbital Occupation Numbers", 0);
    if (mo.spin != Spin::paired && mo.occupation > 1.0 + 1e-9)
      throw InvariantViolationError(
          "single-spin orbital occupation exceeds 1",
          "Molecular Orbital Occupation Numbers", 0);
    if (mo.coefficients.size() != wfn.primitives.size())
      throw InvariantViolationError(
          "coefficient count does not match primitive count",
          "Molecular Orbital Primitive Coefficients", 0);
    occ_sum += mo.occupation;
  }
  if (std::abs(occ_sum - static_cast<double>(wfn.declared_electron_count)) >
      1e-6)
    throw InvariantViolationError(
        "occupation sum " + std::to_string(occ_sum) +
            " does not match declared electron count " +
            std::to_string(wfn.declared_electron_count),
        "Number of Electrons", 0);
}

WavefunctionData parse_wfx(std::istream &in) {
  SectionMap sections = read_sections(in);
  WavefunctionData wfn;

  const Section &coords = require(sections, "Nuclear Cartesian Coordinates");
  std::vector<double> xyz =
      real_list(coords, "Nuclear Cartesian Coordinates");
  if (xyz.empty() || xyz.size() % 3 != 0)
    throw InvariantViolationError("coordinate count not a multiple of 3",
                                  "Nuclear Cartesian Coordinates",
                                  coords.open_line);
  size_t n_nuc = xyz.size() / 3;
  wfn.nuclei.resize(n_nuc);
  for (size_t a = 0; a < n_nuc; ++a)
    wfn.nuclei[a].position = {xyz[3 * a], xyz[3 * a + 1], xyz[3 * a + 2]};

  auto names_it = sections.find("Nuclear Names");
  auto z_it = sections.find("Atomic Numbers");
  if (z_it != sections.end()) {
    auto zs = integer_list(z_it->second, "Atomic Numbers");
    check_count(zs.size(), n_nuc, "Atomic Numbers", z_it->second.open_line);
    for (size_t a = 0; a < n_nuc; ++a) {
      wfn.nuclei[a].atomic_number = static_cast<int>(zs[a]);
      wfn.nuclei[a].symbol = element_symbol(static_cast<int>(zs[a]));
    }
  }
  if (names_it != sections.end()) {
    const auto &toks = names_it->second.tokens;
    check_count(toks.size(), n_nuc, "Nuclear Names",
                names_it->second.open_line);
    for (size_t a = 0; a < n_nuc; ++a) {
      std::string sym = symbol_from_name(toks[a].text);
      if (wfn.nuclei[a].atomic_number == 0) {
        wfn.nuclei[a].atomic_number = atomic_number(sym);
        wfn.nuclei[a].symbol = element_symbol(wfn.nuclei[a].atomic_number);
      }
    }
  }
  if (z_it == sections.end() && names_it == sections.end())
    throw MissingSectionError("need Atomic Numbers or Nuclear Names",
                              "Atomic Numbers", 0);

  const Section &cent = require(sections, "Primitive Centers");
  const Section &types = require(sections, "Primitive Types");
  const Section &expo = require(sections, "Primitive Exponents");
  auto centers = integer_list(cent, "Primitive Centers");
  auto codes = integer_list(types, "Primitive Types");
  auto exps = real_list(expo, "Primitive Exponents");
  size_t n_prim = centers.size();
  check_count(codes.size(), n_prim, "Primitive Types", types.open_line);
  check_count(exps.size(), n_prim, "Primitive Exponents", expo.open_line);
  if (auto it = sections.find("Number of Primitives"); it != sections.end()) {
    auto declared = integer_list(it->second, "Number of Primitives");
    if (declared.size() != 1 || declared[0] != static_cast<long>(n_prim))
      throw InvariantViolationError("declared primitive count mismatch",
                                    "Number of Primitives",
                                    it->second.open_line);
  }
  wfn.primitives.resize(n_prim);
  for (size_t p = 0; p < n_prim; ++p) {
    if (centers[p] < 1 || centers[p] > static_cast<long>(n_nuc))
      throw InvariantViolationError("primitive center index out of range",
                                    "Primitive Centers", cent.open_line);
    wfn.primitives[p].center = static_cast<int>(centers[p]) - 1;
    wfn.primitives[p].type_code = static_cast<int>(codes[p]);
    wfn.primitives[p].exponent = exps[p];
    if (!(exps[p] > 0.0))
      throw InvariantViolationError("primitive exponent must be positive",
                                    "Primitive Exponents", expo.open_line);
    wfn.primitives[p].norm =
        primitive_norm(wfn.primitives[p].type_code, exps[p]);
  }

  const Section &occ_sec =
      require(sections, "Molecular Orbital Occupation Numbers");
  auto occs = real_list(occ_sec, "Molecular Orbital Occupation Numbers");
  size_t n_mo = occs.size();
  if (n_mo == 0)
    throw InvariantViolationError("no orbitals",
                                  "Molecular Orbital Occupation Numbers",
                                  occ_sec.open_line);
  wfn.orbitals.resize(n_mo);
  for (size_t k = 0; k < n_mo; ++k)
    wfn.orbitals[k].occupation = occs[k];

  if (auto it = sections.find("Molecular Orbital Energies");
      it != sections.end()) {
    auto es = real_list(it->second, "Molecular Orbital Energies");
    check_count(es.size(), n_mo, "Molecular Orbital Energies",
                it->second.open_line);
    for (size_t k = 0; k < n_mo; ++k)
      wfn.orbitals[k].energy = es[k];
  }
  if (auto it = sections.find("Molecular Orbital Spin Types");
      it != sections.end()) {
    auto spins = parse_spins(it->second);
    check_count(spins.size(), n_mo, "Molecular Orbital Spin Types",
                it->second.open_line);
    for (size_t k = 0; k < n_mo; ++k)
      wfn.orbitals[k].spin = spins[k];
  }

  const Section &coef_sec =
      require(sections, "Molecular Orbital Primitive Coefficients");
  auto mos = parse_mo_coefficients(coef_sec, n_prim);
  check_count(mos.size(), n_mo, "Molecular Orbital Primitive Coefficients",
              coef_sec.open_line);
  for (size_t k = 0; k < n_mo; ++k)
    wfn.orbitals[k].coefficients = std::move(mos[k]);

  if (auto it = sections.find("Number of Electrons"); it != sections.end()) {
    auto declared = integer_list(it->second, "Number of Electrons");
    if (declared.size() != 1)
      throw InvariantViolationError("expected a single electron count",
                                    "Number of Electrons",
                                    it->second.open_line);
    wfn.declared_electron_count = declared[0];
  } else {
    double occ_sum = 0.0;
    for (const auto &mo : wfn.orbitals)
      occ_sum += mo.occupation;
    wfn.declared_electron_count = std::llround(occ_sum);
  }

  validate(wfn);
  return wfn;
}

WavefunctionData parse_wfx_file(const std::string &path) {
  if (path == "-")
    return parse_wfx(std::cin);
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open wavefunction file '" + path + "'");
  return parse_wfx(in);
}

namespace {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void emit_reals(std::ostream &os, const std::vector<double> &vals,
                size_t per_line) {
  for (size_t i = 0; i < vals.size(); ++i) {
    os << (i % per_line == 0 ? " " : "  ") << fmt_real(vals[i]);
    if (i % per_line == per_line - 1 || i + 1 == vals.size())
      os << "\n";
  }
}

void emit_integers(std::ostream &os, const std::vector<long> &vals,
                   size_t per_line) {
  for (size_t i = 0; i < vals.size(); ++i) {
    os << (i % per_line == 0 ? " " : "  ") << vals[i];
    if (i % per_line == per_line - 1 || i + 1 == vals.size())
      os << "\n";
  }
}

const char *spin_label(Spin s) {
  switch (s) {
  case Spin::alpha:
    return "Alpha";
  case Spin::beta:
    return "Beta";
  default:
    return "Alpha and Beta";
  }
}

} // namespace

std::string serialize_wfx(const WavefunctionData &wfn) {
  std::ostringstream os;
  size_t n_nuc = wfn.nuclei.size();
  size_t n_prim = wfn.primitives.size();
  size_t n_mo = wfn.orbitals.size();

  os << "<Number of Nuclei>\n " << n_nuc << "\n</Number of Nuclei>\n";
  os << "<Number of Primitives>\n " << n_prim
     << "\n</Number of Primitives>\n";
  os << "<Number of Electrons>\n " << wfn.declared_electron_count
     << "\n</Number of Electrons>\n";

  os << "<Nuclear Names>\n";
  for (size_t a = 0; a < n_nuc; ++a)
    os << " " << wfn.nuclei[a].symbol << a + 1 << "\n";
  os << "</Nuclear Names>\n";

  os << "<Atomic Numbers>\n";
  {
    std::vector<long> zs;
    for (const auto &nuc : wfn.nuclei)
      zs.push_back(nuc.atomic_number);
    emit_integers(os, zs, 10);
  }
  os << "</Atomic Numbers>\n";

  os << "<Nuclear Cartesian Coordinates>\n";
  for (const auto &nuc : wfn.nuclei)
    os << " " << fmt_real(nuc.position[0]) << "  " << fmt_real(nuc.position[1])
       << "  " << fmt_real(nuc.position[2]) << "\n";
  os << "</Nuclear Cartesian Coordinates>\n";

  {
    std::vector<long> centers, codes;
    std::vector<double> exps;
    for (const auto &p : wfn.primitives) {
      centers.push_back(p.center + 1);
      codes.push_back(p.type_code);
      exps.push_back(p.exponent);
    }
    os << "<Primitive Centers>\n";
    emit_integers(os, centers, 10);
    os << "</Primitive Centers>\n";
    os << "<Primitive Types>\n";
    emit_integers(os, codes, 10);
    os << "</Primitive Types>\n";
    os << "<Primitive Exponents>\n";
    emit_reals(os, exps, 4);
    os << "</Primitive Exponents>\n";
  }

  {
    std::vector<double> occs, energies;
    for (const auto &mo : wfn.orbitals) {
      occs.push_back(mo.occupation);
      energies.push_back(mo.energy);
    }
    os << "<Molecular Orbital Occupation Numbers>\n";
    emit_reals(os, occs, 4);
    os << "</Molecular Orbital Occupation Numbers>\n";
    os << "<Molecular Orbital Energies>\n";
    emit_reals(os, energies, 4);
    os << "</Molecular Orbital Energies>\n";
  }

  os << "<Molecular Orbital Spin Types>\n";
  for (const auto &mo : wfn.orbitals)
    os << " " << spin_label(mo.spin) << "\n";
  os << "</Molecular Orbital Spin Types>\n";

  os << "<Molecular Orbital Primitive Coefficients>\n";
  for (size_t k = 0; k < n_mo; ++k) {
    os << "<MO Number>\n " << k + 1 << "\n</MO Number>\n";
    emit_reals(os, wfn.orbitals[k].coefficients, 4);
  }
  os << "</Molecular Orbital Primitive Coefficients>\n";
  return os.str();
}

std::pair<double, double> electron_counts(const WavefunctionData &wfn) {
  double na = 0.0, nb = 0.0;
  for (const auto &mo : wfn.orbitals) {
    switch (mo.spin) {
    case Spin::alpha:
      na += mo.occupation;
      break;
    case Spin::beta:
      nb += mo.occupation;
      break;
    case Spin::paired:
      na += 0.5 * mo.occupation;
      nb += 0.5 * mo.occupation;
      break;
    }
  }
  return {na, nb};
}

} // namespace apele
