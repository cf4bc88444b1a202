#include "apele/lebedev.hpp"

#include <cmath>
#include <map>
#include <string>

namespace apele {

namespace {

// One octahedral symmetry orbit. Codes follow the classical generator:
//   1: (1,0,0) axis orbit, 6 points
//   2: (a,a,0) with a=1/sqrt(2), 12 points
//   3: (a,a,a) with a=1/sqrt(3), 8 points
//   4: (a,a,b) with b=sqrt(1-2a^2), 24 points
//   5: (a,b,0) with b=sqrt(1-a^2), 24 points
//   6: (a,b,c) with c=sqrt(1-a^2-b^2), 48 points
void gen_oh(int code, double a, double b, double w,
            std::vector<LebedevPoint> &out) {
  auto put = [&](double x, double y, double z) {
    out.push_back({{x, y, z}, w});
  };
  switch (code) {
  case 1:
    put(1, 0, 0);
    put(-1, 0, 0);
    put(0, 1, 0);
    put(0, -1, 0);
    put(0, 0, 1);
    put(0, 0, -1);
    break;
  case 2:
    a = std::sqrt(0.5);
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        put(0, s1 * a, s2 * a);
        put(s1 * a, 0, s2 * a);
        put(s1 * a, s2 * a, 0);
      }
    break;
  case 3:
    a = std::sqrt(1.0 / 3.0);
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1})
          put(s1 * a, s2 * a, s3 * a);
    break;
  case 4:
    b = std::sqrt(1.0 - 2.0 * a * a);
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1}) {
          put(s1 * a, s2 * a, s3 * b);
          put(s1 * a, s2 * b, s3 * a);
          put(s1 * b, s2 * a, s3 * a);
        }
    break;
  case 5:
    b = std::sqrt(1.0 - a * a);
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        put(s1 * a, s2 * b, 0);
        put(s1 * b, s2 * a, 0);
        put(s1 * a, 0, s2 * b);
        put(s1 * b, 0, s2 * a);
        put(0, s1 * a, s2 * b);
        put(0, s1 * b, s2 * a);
      }
    break;
  case 6: {
    double c = std::sqrt(1.0 - a * a - b * b);
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1}) {
          put(s1 * a, s2 * b, s3 * c);
          put(s1 * a, s2 * c, s3 * b);
          put(s1 * b, s2 * a, s3 * c);
          put(s1 * b, s2 * c, s3 * a);
          put(s1 * c, s2 * a, s3 * b);
          put(s1 * c, s2 * b, s3 * a);
        }
    break;
  }
  }
}

std::vector<LebedevPoint> build(int order) {
  std::vector<LebedevPoint> pts;
  pts.reserve(order);
  switch (order) {
  case 6:
    gen_oh(1, 0, 0, 1.0 / 6.0, pts);
    break;
  case 26:
    gen_oh(1, 0, 0, 1.0 / 21.0, pts);
    gen_oh(2, 0, 0, 4.0 / 105.0, pts);
    gen_oh(3, 0, 0, 9.0 / 280.0, pts);
    break;
  case 50:
    gen_oh(1, 0, 0, 4.0 / 315.0, pts);
    gen_oh(2, 0, 0, 64.0 / 2835.0, pts);
    gen_oh(3, 0, 0, 27.0 / 1280.0, pts);
    gen_oh(4, std::sqrt(1.0 / 11.0), 0, 14641.0 / 725760.0, pts);
    break;
  case 110:
    gen_oh(1, 0, 0, 0.3828270494937162e-2, pts);
    gen_oh(3, 0, 0, 0.9793737512487512e-2, pts);
    gen_oh(4, 0.1851156353447362, 0, 0.8211737283191111e-2, pts);
    gen_oh(4, 0.6904210483822922, 0, 0.9942814891178103e-2, pts);
    gen_oh(4, 0.3956894730559419, 0, 0.9595471336070963e-2, pts);
    gen_oh(5, 0.4783690288121502, 0, 0.9694996361663028e-2, pts);
    break;
  case 194:
    gen_oh(1, 0, 0, 0.1782340447244611e-2, pts);
    gen_oh(2, 0, 0, 0.5716905949977102e-2, pts);
    gen_oh(3, 0, 0, 0.5573383178848738e-2, pts);
    gen_oh(4, 0.6712973442695226, 0, 0.5608704082587997e-2, pts);
    gen_oh(4, 0.2892465627575439, 0, 0.5158237711805383e-2, pts);
    gen_oh(4, 0.4446933178717437, 0, 0.5518771467273614e-2, pts);
    gen_oh(4, 0.1299335447650067, 0, 0.4106777028169394e-2, pts);
    gen_oh(5, 0.3457702197611283, 0, 0.5051846064614808e-2, pts);
    gen_oh(6, 0.1590417105383530, 0.8360360154824589,
           0.5530248916233094e-2, pts);
    break;
  case 302:
    gen_oh(1, 0, 0, 0.8545911725128148e-3, pts);
    gen_oh(3, 0, 0, 0.3599119285025571e-2, pts);
    gen_oh(4, 0.3515640345570105, 0, 0.3449788424305883e-2, pts);
    gen_oh(4, 0.6566329410219612, 0, 0.3604822601419882e-2, pts);
    gen_oh(4, 0.4729054132581005, 0, 0.3576729661743367e-2, pts);
    gen_oh(4, 0.9618308522614784e-1, 0, 0.2352101413689164e-2, pts);
    gen_oh(4, 0.2219645236294178, 0, 0.3108953122413675e-2, pts);
    gen_oh(4, 0.7011766416089545, 0, 0.3650045807677255e-2, pts);
    gen_oh(5, 0.2644152887060663, 0, 0.2982344963171804e-2, pts);
    gen_oh(5, 0.5718955891878961, 0, 0.3600820932216460e-2, pts);
    gen_oh(6, 0.2510034751770465, 0.8000727494073952,
           0.3571540554273387e-2, pts);
    gen_oh(6, 0.1233548532583327, 0.4127724083168531,
           0.3392312205006170e-2, pts);
    break;
  default:
    throw UnsupportedLebedevOrderError(
        "no angular rule with " + std::to_string(order) +
        " points; supported: 6 26 50 110 194 302");
  }
  return pts;
}

} // namespace

const std::vector<int> &lebedev_orders() {
  static const std::vector<int> orders = {6, 26, 50, 110, 194, 302};
  return orders;
}

int lebedev_degree(int order) {
  switch (order) {
  case 6:
    return 3;
  case 26:
    return 7;
  case 50:
    return 11;
  case 110:
    return 17;
  case 194:
    return 23;
  case 302:
    return 29;
  default:
    throw UnsupportedLebedevOrderError(
        "no angular rule with " + std::to_string(order) + " points");
  }
}

const std::vector<LebedevPoint> &lebedev_rule(int order) {
  static const std::map<int, std::vector<LebedevPoint>> cache = [] {
    std::map<int, std::vector<LebedevPoint>> m;
    for (int n : lebedev_orders())
      m.emplace(n, build(n));
    return m;
  }();
  auto it = cache.find(order);
  if (it == cache.end())
    throw UnsupportedLebedevOrderError(
        "no angular rule with " + std::to_string(order) +
        " points; supported: 6 26 50 110 194 302");
  return it->second;
}

} // namespace apele
