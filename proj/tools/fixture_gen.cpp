// Generates the .wfx fixtures shipped under tests/fixtures, plus
// expected.json with reference electron counts and, for the s-only
// fixtures, analytic exchange energies.
//
// Usage: fixture-gen [output-dir]   (default: tests/fixtures)

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "apele/boys.hpp"
#include "apele/gaussian.hpp"
#include "apele/wfx.hpp"
#include "json.hpp"

namespace {

using apele::Orbital;
using apele::Primitive;
using apele::Spin;
using apele::WavefunctionData;

constexpr double kBohrPerAngstrom = 1.8897261254578281;

// Dimensionless 1D overlap table via the two-term upward recursion,
// normalized so the (0,0) entry is 1.
double overlap_1d(int ia, int ib, double xpa, double xpb, double gamma) {
  std::vector<std::vector<double>> s(ia + 1, std::vector<double>(ib + 1, 0.0));
  s[0][0] = 1.0;
  for (int i = 0; i <= ia; ++i) {
    for (int j = 0; j <= ib; ++j) {
      if (i == 0 && j == 0) continue;
      double v = 0.0;
      if (i > 0) {
        v = xpa * s[i - 1][j];
        if (i > 1) v += (i - 1) * s[i - 2][j] / (2.0 * gamma);
        if (j > 0) v += j * s[i - 1][j - 1] / (2.0 * gamma);
      } else {
        v = xpb * s[0][j - 1];
        if (j > 1) v += (j - 1) * s[0][j - 2] / (2.0 * gamma);
      }
      s[i][j] = v;
    }
  }
  return s[ia][ib];
}

double primitive_overlap(const WavefunctionData &wfn, int p, int q) {
  const Primitive &a = wfn.primitives[p];
  const Primitive &b = wfn.primitives[q];
  const auto &ra = wfn.nuclei[a.center].position;
  const auto &rb = wfn.nuclei[b.center].position;
  apele::CartPowers pa = apele::type_powers(a.type_code);
  apele::CartPowers pb = apele::type_powers(b.type_code);
  int la[3] = {pa.l, pa.m, pa.n};
  int lb[3] = {pb.l, pb.m, pb.n};
  double gamma = a.exponent + b.exponent;
  double mu = a.exponent * b.exponent / gamma;
  double out = a.norm * b.norm;
  for (int k = 0; k < 3; ++k) {
    double ab = ra[k] - rb[k];
    double pc = (a.exponent * ra[k] + b.exponent * rb[k]) / gamma;
    out *= std::sqrt(M_PI / gamma) * std::exp(-mu * ab * ab) *
           overlap_1d(la[k], lb[k], pc - ra[k], pc - rb[k], gamma);
  }
  return out;
}

// Electron repulsion integral over four s primitives, chemist notation.
double eri_ssss(const WavefunctionData &wfn, int ip, int iq, int ir, int is) {
  const Primitive &a = wfn.primitives[ip];
  const Primitive &b = wfn.primitives[iq];
  const Primitive &c = wfn.primitives[ir];
  const Primitive &d = wfn.primitives[is];
  const auto &ra = wfn.nuclei[a.center].position;
  const auto &rb = wfn.nuclei[b.center].position;
  const auto &rc = wfn.nuclei[c.center].position;
  const auto &rd = wfn.nuclei[d.center].position;
  double g1 = a.exponent + b.exponent;
  double g2 = c.exponent + d.exponent;
  double ab2 = 0.0, cd2 = 0.0, pq2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    double dab = ra[k] - rb[k];
    double dcd = rc[k] - rd[k];
    double pk = (a.exponent * ra[k] + b.exponent * rb[k]) / g1;
    double qk = (c.exponent * rc[k] + d.exponent * rd[k]) / g2;
    ab2 += dab * dab;
    cd2 += dcd * dcd;
    pq2 += (pk - qk) * (pk - qk);
  }
  double t = g1 * g2 / (g1 + g2) * pq2;
  double pre = 2.0 * std::pow(M_PI, 2.5) / (g1 * g2 * std::sqrt(g1 + g2));
  return a.norm * b.norm * c.norm * d.norm * pre *
         std::exp(-a.exponent * b.exponent / g1 * ab2 -
                  c.exponent * d.exponent / g2 * cd2) *
         apele::boys(0, t);
}

// Exact HF exchange energy for wavefunctions built from s primitives only.
double exchange_energy(const WavefunctionData &wfn) {
  int np = static_cast<int>(wfn.primitives.size());
  for (const Primitive &p : wfn.primitives) {
    if (p.type_code != 1) throw std::runtime_error("exchange: s-only fixture expected");
  }
  int nmo = static_cast<int>(wfn.orbitals.size());
  std::vector<double> na(nmo), nb(nmo);
  for (int i = 0; i < nmo; ++i) {
    const Orbital &o = wfn.orbitals[i];
    if (o.spin == Spin::paired) {
      na[i] = nb[i] = 0.5 * o.occupation;
    } else if (o.spin == Spin::alpha) {
      na[i] = o.occupation;
    } else {
      nb[i] = o.occupation;
    }
  }
  double ex = 0.0;
  for (int i = 0; i < nmo; ++i) {
    for (int j = i; j < nmo; ++j) {
      double weight = na[i] * na[j] + nb[i] * nb[j];
      if (weight == 0.0) continue;
      const std::vector<double> &ci = wfn.orbitals[i].coefficients;
      const std::vector<double> &cj = wfn.orbitals[j].coefficients;
      double k_ij = 0.0;
      for (int p = 0; p < np; ++p) {
        if (ci[p] == 0.0) continue;
        for (int q = 0; q < np; ++q) {
          if (cj[q] == 0.0) continue;
          double cpq = ci[p] * cj[q];
          for (int r = 0; r < np; ++r) {
            if (cj[r] == 0.0) continue;
            for (int s = 0; s < np; ++s) {
              if (ci[s] == 0.0) continue;
              k_ij += cpq * cj[r] * ci[s] * eri_ssss(wfn, p, q, r, s);
            }
          }
        }
      }
      ex += -0.5 * weight * k_ij * (i == j ? 1.0 : 2.0);
    }
  }
  return ex;
}

// Assembles nuclei, primitives, and contracted AO descriptors, then turns
// non-orthogonal prototype vectors into orthonormal orbitals via symmetric
// orthogonalization in the primitive overlap metric.
struct Builder {
  WavefunctionData wfn;
  // Each AO: list of (primitive index, coefficient on the normalized primitive).
  std::vector<std::vector<std::pair<int, double>>> aos;

  int nucleus(const std::string &symbol, int z, std::array<double, 3> pos) {
    apele::Nucleus n;
    n.symbol = symbol;
    n.atomic_number = z;
    n.position = pos;
    wfn.nuclei.push_back(n);
    return static_cast<int>(wfn.nuclei.size()) - 1;
  }

  int prim(int center, int type, double expo) {
    Primitive p;
    p.center = center;
    p.type_code = type;
    p.exponent = expo;
    p.norm = apele::primitive_norm(type, expo);
    wfn.primitives.push_back(p);
    return static_cast<int>(wfn.primitives.size()) - 1;
  }

  int s_shell(int center, const std::vector<double> &exps,
              const std::vector<double> &coeffs) {
    std::vector<std::pair<int, double>> ao;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      ao.emplace_back(prim(center, 1, exps[k]), coeffs[k]);
    }
    aos.push_back(std::move(ao));
    return static_cast<int>(aos.size()) - 1;
  }

  // Returns AO indices {s, px, py, pz}.
  std::array<int, 4> sp_shell(int center, const std::vector<double> &exps,
                              const std::vector<double> &ds,
                              const std::vector<double> &dp) {
    std::vector<std::pair<int, double>> s_ao;
    std::array<std::vector<std::pair<int, double>>, 3> p_ao;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      s_ao.emplace_back(prim(center, 1, exps[k]), ds[k]);
      for (int c = 0; c < 3; ++c) {
        p_ao[c].emplace_back(prim(center, 2 + c, exps[k]), dp[k]);
      }
    }
    std::array<int, 4> out{};
    out[0] = static_cast<int>(aos.size());
    aos.push_back(std::move(s_ao));
    for (int c = 0; c < 3; ++c) aos.push_back(std::move(p_ao[c]));
    out[1] = out[0] + 1;
    out[2] = out[0] + 2;
    out[3] = out[0] + 3;
    return out;
  }

  // Six cartesian d primitives (xx, yy, zz, xy, xz, yz); returns the AO
  // index of the first.
  int d_prims(int center, double expo) {
    int first = static_cast<int>(aos.size());
    for (int t = 5; t <= 10; ++t) {
      aos.push_back({{prim(center, t, expo), 1.0}});
    }
    return first;
  }

  void orbitals_from_protos(
      const std::vector<std::vector<std::pair<int, double>>> &protos,
      const std::vector<double> &energies, double occupation, Spin spin) {
    int np = static_cast<int>(wfn.primitives.size());
    int k = static_cast<int>(protos.size());
    Eigen::MatrixXd proto = Eigen::MatrixXd::Zero(np, k);
    for (int col = 0; col < k; ++col) {
      for (const auto &[ao, w] : protos[col]) {
        for (const auto &[p, c] : aos[ao]) proto(p, col) += w * c;
      }
    }
    Eigen::MatrixXd s(np, np);
    for (int p = 0; p < np; ++p) {
      for (int q = p; q < np; ++q) {
        s(p, q) = s(q, p) = primitive_overlap(wfn, p, q);
      }
    }
    Eigen::MatrixXd metric = proto.transpose() * s * proto;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(metric);
    double lo = eig.eigenvalues().minCoeff();
    double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 1e-6 * hi)) {
      throw std::runtime_error("prototype orbitals are nearly dependent");
    }
    Eigen::MatrixXd inv_sqrt = eig.eigenvectors() *
                               eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                               eig.eigenvectors().transpose();
    Eigen::MatrixXd c = proto * inv_sqrt;
    for (int col = 0; col < k; ++col) {
      Orbital o;
      o.occupation = occupation;
      o.spin = spin;
      o.energy = energies[col];
      o.coefficients.assign(c.col(col).data(), c.col(col).data() + np);
      wfn.orbitals.push_back(o);
    }
  }
};

// STO-6G hydrogen 1s, exponents pre-scaled for the molecular environment.
const std::vector<double> kH6gExp = {35.52322122, 6.513143725, 1.822142904,
                                     0.625955266, 0.243076747, 0.100112428};
const std::vector<double> kH6gCoef = {0.00916359628, 0.04936149294,
                                      0.16853830490, 0.37056279970,
                                      0.41649152980, 0.13033408410};

// STO-3G tables.
const std::vector<double> kCoreCoef = {0.15432897, 0.53532814, 0.44463454};
const std::vector<double> kH3gExp = {3.42525091, 0.62391373, 0.16885540};
const std::vector<double> kO1sExp = {130.7093200, 23.8088610, 6.4436083};
const std::vector<double> kO2spExp = {5.0331513, 1.1695961, 0.3803890};
const std::vector<double> kC1sExp = {71.6168370, 13.0450960, 3.5305122};
const std::vector<double> kC2spExp = {2.9412494, 0.6834831, 0.2222899};
const std::vector<double> kSpSCoef = {-0.09996723, 0.39951283, 0.70011547};
const std::vector<double> kSpPCoef = {0.15591627, 0.60768372, 0.39195739};

WavefunctionData make_h_atom() {
  Builder b;
  int h = b.nucleus("H", 1, {0.0, 0.0, 0.0});
  std::vector<double> exps;
  for (double e : kH6gExp) exps.push_back(e / (1.24 * 1.24));
  int s = b.s_shell(h, exps, kH6gCoef);
  b.orbitals_from_protos({{{s, 1.0}}}, {-0.5}, 1.0, Spin::alpha);
  b.wfn.declared_electron_count = 1;
  return b.wfn;
}

WavefunctionData make_h2(double bond_bohr) {
  Builder b;
  int h1 = b.nucleus("H", 1, {0.0, 0.0, -0.5 * bond_bohr});
  int h2 = b.nucleus("H", 1, {0.0, 0.0, 0.5 * bond_bohr});
  int s1 = b.s_shell(h1, kH6gExp, kH6gCoef);
  int s2 = b.s_shell(h2, kH6gExp, kH6gCoef);
  b.orbitals_from_protos({{{s1, 1.0}, {s2, 1.0}}}, {-0.55}, 2.0, Spin::paired);
  b.wfn.declared_electron_count = 2;
  return b.wfn;
}

WavefunctionData make_h2_pair(double bond_bohr, double separation_bohr) {
  Builder b;
  std::array<int, 4> s{};
  for (int mol = 0; mol < 2; ++mol) {
    double x = mol * separation_bohr;
    int ha = b.nucleus("H", 1, {x, 0.0, -0.5 * bond_bohr});
    int hb = b.nucleus("H", 1, {x, 0.0, 0.5 * bond_bohr});
    s[2 * mol] = b.s_shell(ha, kH6gExp, kH6gCoef);
    s[2 * mol + 1] = b.s_shell(hb, kH6gExp, kH6gCoef);
  }
  b.orbitals_from_protos(
      {{{s[0], 1.0}, {s[1], 1.0}}, {{s[2], 1.0}, {s[3], 1.0}}},
      {-0.551, -0.55}, 2.0, Spin::paired);
  b.wfn.declared_electron_count = 4;
  return b.wfn;
}

WavefunctionData make_h2o_like() {
  Builder b;
  double r = 0.9572 * kBohrPerAngstrom;
  double half = 0.5 * 104.52 * M_PI / 180.0;
  double hx = r * std::sin(half);
  double hz = r * std::cos(half);
  int o = b.nucleus("O", 8, {0.0, 0.0, 0.0});
  int h1 = b.nucleus("H", 1, {hx, 0.0, hz});
  int h2 = b.nucleus("H", 1, {-hx, 0.0, hz});
  int o1s = b.s_shell(o, kO1sExp, kCoreCoef);
  std::array<int, 4> osp = b.sp_shell(o, kO2spExp, kSpSCoef, kSpPCoef);
  int d0 = b.d_prims(o, 1.0);
  int h1s = b.s_shell(h1, kH3gExp, kCoreCoef);
  int h2s = b.s_shell(h2, kH3gExp, kCoreCoef);
  int dzz = d0 + 2;
  int dyz = d0 + 5;
  std::vector<std::vector<std::pair<int, double>>> protos = {
      {{o1s, 1.0}},
      {{osp[0], 1.0}, {dzz, 0.08}},
      {{osp[3], 1.0}, {h1s, 0.35}, {h2s, 0.35}},
      {{osp[1], 1.0}, {h1s, 0.35}, {h2s, -0.35}},
      {{osp[2], 1.0}, {dyz, 0.15}},
  };
  b.orbitals_from_protos(protos, {-20.0, -1.3, -0.7, -0.55, -0.5}, 2.0,
                         Spin::paired);
  b.wfn.declared_electron_count = 10;
  return b.wfn;
}

WavefunctionData make_ethane_like() {
  Builder b;
  double zc = 0.75 * kBohrPerAngstrom;
  double dch = 1.09 * kBohrPerAngstrom;
  double rxy = dch * std::sqrt(8.0) / 3.0;
  double dz = dch / 3.0;
  int c1 = b.nucleus("C", 6, {0.0, 0.0, -zc});
  int c2 = b.nucleus("C", 6, {0.0, 0.0, zc});
  const double deg = M_PI / 180.0;
  std::array<double, 6> phi = {0.0, 120.0, 240.0, 60.0, 180.0, 300.0};
  std::array<int, 6> h{};
  std::array<std::array<double, 3>, 6> u{};
  for (int k = 0; k < 6; ++k) {
    int carbon = k < 3 ? c1 : c2;
    double zdir = k < 3 ? -1.0 : 1.0;
    double cx = std::cos(phi[k] * deg);
    double sx = std::sin(phi[k] * deg);
    std::array<double, 3> pos = {rxy * cx, rxy * sx,
                                 (k < 3 ? -zc : zc) + zdir * dz};
    h[k] = b.nucleus("H", 1, pos);
    u[k] = {std::sqrt(8.0) / 3.0 * cx, std::sqrt(8.0) / 3.0 * sx, zdir / 3.0};
    (void)carbon;
  }
  int c1core = b.s_shell(c1, kC1sExp, kCoreCoef);
  std::array<int, 4> c1sp = b.sp_shell(c1, kC2spExp, kSpSCoef, kSpPCoef);
  int c2core = b.s_shell(c2, kC1sExp, kCoreCoef);
  std::array<int, 4> c2sp = b.sp_shell(c2, kC2spExp, kSpSCoef, kSpPCoef);
  std::array<int, 6> hs{};
  for (int k = 0; k < 6; ++k) hs[k] = b.s_shell(h[k], kH3gExp, kCoreCoef);
  std::vector<std::vector<std::pair<int, double>>> protos;
  protos.push_back({{c1core, 1.0}});
  protos.push_back({{c2core, 1.0}});
  protos.push_back({{c1sp[0], 0.7}, {c2sp[0], 0.7}, {c1sp[3], 0.55}, {c2sp[3], -0.55}});
  for (int k = 0; k < 6; ++k) {
    const std::array<int, 4> &sp = k < 3 ? c1sp : c2sp;
    protos.push_back({{hs[k], 1.0},
                      {sp[0], 0.45},
                      {sp[1], 0.55 * u[k][0]},
                      {sp[2], 0.55 * u[k][1]},
                      {sp[3], 0.55 * u[k][2]}});
  }
  std::vector<double> energies = {-11.21, -11.20, -0.95, -0.62, -0.615,
                                  -0.61,  -0.605, -0.60, -0.595};
  b.orbitals_from_protos(protos, energies, 2.0, Spin::paired);
  b.wfn.declared_electron_count = 18;
  return b.wfn;
}

void write_fixture(const std::string &dir, const std::string &name,
                   const WavefunctionData &wfn, bool s_only, double bond_bohr,
                   nlohmann::ordered_json &index) {
  std::string text = apele::serialize_wfx(wfn);
  // Round-trip through the parser so every shipped file is known-valid.
  std::istringstream in(text);
  WavefunctionData parsed = apele::parse_wfx(in);
  auto [na, nb] = apele::electron_counts(parsed);
  double declared = static_cast<double>(wfn.declared_electron_count);
  if (std::abs(na + nb - declared) > 1e-10) {
    throw std::runtime_error(name + ": occupation sum disagrees with declared count");
  }
  std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  nlohmann::ordered_json entry;
  entry["nuclei"] = wfn.nuclei.size();
  entry["electrons"] = wfn.declared_electron_count;
  entry["n_alpha"] = na;
  entry["n_beta"] = nb;
  if (bond_bohr > 0.0) entry["bond_bohr"] = bond_bohr;
  if (s_only) entry["exchange_energy_hartree"] = exchange_energy(parsed);
  index[name] = entry;
  std::cout << name << ": " << wfn.nuclei.size() << " nuclei, "
            << wfn.primitives.size() << " primitives, " << wfn.orbitals.size()
            << " orbitals\n";
}

} // namespace

int main(int argc, char **argv) {
  std::string dir = argc > 1 ? argv[1] : "tests/fixtures";
  try {
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json index;
    write_fixture(dir, "h_atom.wfx", make_h_atom(), true, 0.0, index);
    const std::vector<std::pair<std::string, double>> bonds = {
        {"h2_0.74A.wfx", 0.74}, {"h2_1.5A.wfx", 1.5}, {"h2_2.5A.wfx", 2.5},
        {"h2_3.5A.wfx", 3.5},   {"h2_5.0A.wfx", 5.0}};
    for (const auto &[name, ang] : bonds) {
      write_fixture(dir, name, make_h2(ang * kBohrPerAngstrom), true,
                    ang * kBohrPerAngstrom, index);
    }
    write_fixture(dir, "h2_5.0A_x2.wfx",
                  make_h2_pair(5.0 * kBohrPerAngstrom, 50.0 * kBohrPerAngstrom),
                  true, 5.0 * kBohrPerAngstrom, index);
    write_fixture(dir, "h2o_like.wfx", make_h2o_like(), false, 0.0, index);
    write_fixture(dir, "ethane_like.wfx", make_ethane_like(), false, 0.0, index);
    std::ofstream out(dir + "/expected.json");
    if (!out) throw std::runtime_error("cannot write expected.json");
    out << index.dump(2) << "\n";
  } catch (const std::exception &e) {
    std::cerr << "fixture-gen: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
