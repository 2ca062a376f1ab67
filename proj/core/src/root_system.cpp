#include "rfsym/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rfsym {

std::string kind_name(RootSystemKind k) {
  switch (k) {
    case RootSystemKind::A2: return "A2";
    case RootSystemKind::B2: return "B2";
    case RootSystemKind::BC2: return "BC2";
    case RootSystemKind::G2: return "G2";
  }
  throw std::logic_error("kind_name: bad kind");
}

RootSystemKind kind_from_name(const std::string& s) {
  if (s == "A2") return RootSystemKind::A2;
  if (s == "B2") return RootSystemKind::B2;
  if (s == "BC2") return RootSystemKind::BC2;
  if (s == "G2") return RootSystemKind::G2;
  throw std::invalid_argument("unknown root system kind: " + s);
}

RestrictedRootSystem build_system(RootSystemKind kind, const std::vector<long>& mults) {
  RestrictedRootSystem rs;
  rs.kind = kind;
  rs.orientation = 1;
  auto need = [&](size_t n) {
    if (mults.size() < n) throw std::invalid_argument("build_system: missing multiplicities");
  };
  for (long m : mults)
    if (m < 0) throw std::invalid_argument("build_system: negative multiplicity");

  switch (kind) {
    case RootSystemKind::A2: {
      need(1);
      long m = mults[0];
      if (m <= 0) throw std::invalid_argument("build_system: A2 needs m >= 1");
      rs.mult_params = {m};
      rs.gram = {{{Rational(1), Rational(-1, 2)}, {Rational(-1, 2), Rational(1)}}};
      rs.roots = {{1, 0, m, false}, {0, 1, m, false}, {1, 1, m, false}};
      break;
    }
    case RootSystemKind::B2:
    case RootSystemKind::BC2: {
      need(2);
      long m1 = mults[0], m2 = mults[1];
      long m3 = mults.size() > 2 ? mults[2] : 0;
      if (kind == RootSystemKind::B2 && m3 != 0)
        throw std::invalid_argument("build_system: B2 has no doubled roots");
      if (kind == RootSystemKind::BC2 && m3 <= 0)
        throw std::invalid_argument("build_system: BC2 needs m3 >= 1");
      if (m1 <= 0 || m2 <= 0) throw std::invalid_argument("build_system: need m1, m2 >= 1");
      rs.mult_params = {m1, m2, m3};
      rs.gram = {{{Rational(2), Rational(-1)}, {Rational(-1), Rational(1)}}};
      rs.roots = {{1, 0, m1, false}, {0, 1, m2, false}, {1, 1, m2, false}, {1, 2, m1, false}};
      if (m3 > 0) {
        rs.roots.push_back({0, 2, m3, true});
        rs.roots.push_back({2, 2, m3, true});
      }
      break;
    }
    case RootSystemKind::G2: {
      need(1);
      long m = mults[0];
      if (m <= 0) throw std::invalid_argument("build_system: G2 needs m >= 1");
      rs.mult_params = {m};
      rs.gram = {{{Rational(3), Rational(-3, 2)}, {Rational(-3, 2), Rational(1)}}};
      rs.roots = {{1, 0, m, false}, {0, 1, m, false}, {1, 1, m, false},
                  {1, 2, m, false}, {1, 3, m, false}, {2, 3, m, false}};
      break;
    }
  }
  return rs;
}

RestrictedRootSystem oriented(const RestrictedRootSystem& rs, int fiber) {
  if (fiber == 1) return rs;
  if (fiber != 2) throw std::invalid_argument("oriented: fiber must be 1 or 2");
  RestrictedRootSystem out = rs;
  out.orientation = (rs.orientation == 1) ? 2 : 1;
  out.gram[0][0] = rs.gram[1][1];
  out.gram[1][1] = rs.gram[0][0];
  for (auto& r : out.roots) std::swap(r.c1, r.c2);
  return out;
}

long dim_n(const RestrictedRootSystem& rs) {
  long n = 2;
  for (const auto& r : rs.roots) n += r.mult;
  return n;
}

Rational pair_rb(const RestrictedRootSystem& rs, const std::array<Rational, 2>& a,
                 const std::array<Rational, 2>& b) {
  Rational s(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += a[i] * rs.gram[i][j] * b[j];
  return s;
}

std::array<Rational, 2> varpi(const RestrictedRootSystem& rs) {
  Rational a(0), b(0);
  for (const auto& r : rs.roots) {
    a += Rational(r.mult) * Rational(r.c1);
    b += Rational(r.mult) * Rational(r.c2);
  }
  return {a / Rational(2), b / Rational(2)};
}

Rational dh_value(const RestrictedRootSystem& rs, const std::array<Rational, 2>& p) {
  Rational prod(1);
  for (const auto& r : rs.roots) {
    std::array<Rational, 2> a{Rational(r.c1), Rational(r.c2)};
    prod *= pair_rb(rs, a, p).pow(r.mult);
  }
  return prod;
}

std::array<Rational, 2> weyl_reflect_rb(const RestrictedRootSystem& rs, int i,
                                        const std::array<Rational, 2>& v) {
  if (i != 1 && i != 2) throw std::invalid_argument("weyl_reflect_rb: i must be 1 or 2");
  int idx = i - 1;
  std::array<Rational, 2> alpha{Rational(idx == 0 ? 1 : 0), Rational(idx == 0 ? 0 : 1)};
  Rational coef = Rational(2) * pair_rb(rs, alpha, v) / rs.gram[idx][idx];
  std::array<Rational, 2> out = v;
  out[idx] -= coef;
  return out;
}

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 identity_mat() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

// Simple reflection s_i acting on value coordinates (alpha1(x), alpha2(x)):
// p_j -> p_j - (2 p_i / g_ii) g_ji.
Mat2 reflection_values(const RestrictedRootSystem& rs, int i) {
  int idx = i - 1;
  Mat2 m = identity_mat();
  double gii = rs.gram[idx][idx].to_double();
  for (int j = 0; j < 2; ++j)
    m[j][idx] -= 2.0 * rs.gram[j][idx].to_double() / gii;
  return m;
}

}  // namespace

std::vector<Mat2> weyl_matrices_values(const RestrictedRootSystem& rs) {
  Mat2 s1 = reflection_values(rs, 1), s2 = reflection_values(rs, 2);
  std::vector<Mat2> group{identity_mat()};
  auto key = [](const Mat2& m) {
    return std::array<long long, 4>{llround(m[0][0] * 1024), llround(m[0][1] * 1024),
                                    llround(m[1][0] * 1024), llround(m[1][1] * 1024)};
  };
  std::set<std::array<long long, 4>> seen{key(group[0])};
  for (size_t i = 0; i < group.size(); ++i) {
    for (const Mat2& s : {s1, s2}) {
      Mat2 g = mat_mul(s, group[i]);
      if (seen.insert(key(g)).second) group.push_back(g);
    }
  }
  return group;
}

WeylReduction weyl_reduce(const RestrictedRootSystem& rs, const std::array<double, 2>& p) {
  WeylReduction red;
  red.p = p;
  red.map = identity_mat();
  Mat2 s[2] = {reflection_values(rs, 1), reflection_values(rs, 2)};
  const int max_steps = 64;
  for (int step = 0; step < max_steps; ++step) {
    int neg = -1;
    if (red.p[0] < 0 && red.p[0] <= red.p[1]) neg = 0;
    else if (red.p[1] < 0) neg = 1;
    else if (red.p[0] < 0) neg = 0;
    if (neg < 0) return red;
    double before = red.p[neg];
    std::array<double, 2> q{
        s[neg][0][0] * red.p[0] + s[neg][0][1] * red.p[1],
        s[neg][1][0] * red.p[0] + s[neg][1][1] * red.p[1]};
    red.p = q;
    red.map = mat_mul(s[neg], red.map);
    red.word.push_back(neg + 1);
    (void)before;
  }
  throw std::runtime_error("weyl_reduce: did not terminate");
}

std::vector<std::array<Rational, 2>> weyl_orbit_functional(
    const RestrictedRootSystem& rs, const std::array<Rational, 2>& xi) {
  // s_i on functional coefficients (simple-root basis):
  // xi -> xi - (2 <xi, alpha_i> / g_ii) e_i, with <xi, alpha_i> = sum_j xi_j g_ji.
  auto reflect = [&](const std::array<Rational, 2>& v, int idx) {
    Rational inner = v[0] * rs.gram[0][idx] + v[1] * rs.gram[1][idx];
    std::array<Rational, 2> out = v;
    out[idx] -= Rational(2) * inner / rs.gram[idx][idx];
    return out;
  };
  std::vector<std::array<Rational, 2>> orbit{xi};
  auto contains = [&](const std::array<Rational, 2>& v) {
    for (const auto& o : orbit)
      if (o[0] == v[0] && o[1] == v[1]) return true;
    return false;
  };
  for (size_t i = 0; i < orbit.size(); ++i) {
    for (int idx = 0; idx < 2; ++idx) {
      auto v = reflect(orbit[i], idx);
      if (!contains(v)) orbit.push_back(v);
    }
  }
  return orbit;
}

}  // namespace rfsym
