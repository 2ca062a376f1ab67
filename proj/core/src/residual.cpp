#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rfsym/ansatz.hpp"

namespace rfsym {

namespace {

// Noise floor for the decay fits: residuals at or below double-precision
// cancellation error carry no slope information.
constexpr double kFitFloor = 1e-12;

DecayFit fit_ray(const GluedPotential& p, bool along_alpha1, double C) {
  const double fixed = 2.0, lo = 8.0, hi = 16.0;
  const int n = 33;
  std::vector<std::pair<double, double>> pts;  // (coordinate, ln|residual|)
  std::vector<std::pair<double, double>> all;
  for (int i = 0; i < n; ++i) {
    double s = lo + (hi - lo) * i / (n - 1);
    std::array<double, 2> x =
        along_alpha1 ? std::array<double, 2>{s, fixed}
                     : std::array<double, 2>{fixed, s};
    double r = std::fabs(ma_residual(p, x, C));
    if (!std::isfinite(r) || r == 0) continue;
    all.push_back({s, std::log(r)});
    // Per-point noise floor: the residual goes through ln det(Hess), whose
    // relative rounding error is amplified by the cancellation factor kappa
    // when the Hessian is dominated by a rank-one part far out on a ray.
    EvalResult e = evaluate(p, x);
    double det = e.hess[0][0] * e.hess[1][1] - e.hess[0][1] * e.hess[1][0];
    double kappa = (std::fabs(e.hess[0][0] * e.hess[1][1]) +
                    std::fabs(e.hess[0][1] * e.hess[1][0])) /
                   std::fabs(det);
    double floor = std::max(kFitFloor, 50.0 * 2.2e-16 * kappa);
    if (r >= floor) pts.push_back({s, std::log(r)});
  }
  if (pts.size() < 5) {
    // Keep the largest residuals so the fit remains defined.
    auto by_mag = all;
    std::sort(by_mag.begin(), by_mag.end(),
              [](auto& a, auto& b) { return a.second > b.second; });
    by_mag.resize(std::min<size_t>(by_mag.size(), 8));
    std::sort(by_mag.begin(), by_mag.end());
    pts = by_mag;
  }
  DecayFit f;
  f.n_used = int(pts.size());
  if (pts.size() < 2) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = double(pts.size());
  f.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / m;
  return f;
}

}  // namespace

ResidualMapResult residual_map(const GluedPotential& p, double lo, double hi,
                               int n) {
  if (n < 2 || !(hi > lo))
    throw std::invalid_argument("residual_map: bad window");
  double C = p.c.geo.c_model.to_double();
  ResidualMapResult out;
  out.samples.reserve(size_t(n) * n);
  for (int i = 0; i < n; ++i) {
    double a1 = lo + (hi - lo) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      double a2 = lo + (hi - lo) * j / (n - 1);
      ResidualSample s;
      s.p = {a1, a2};
      EvalResult e = evaluate(p, s.p);
      s.rho = e.rho;
      s.beta = std::log(std::fabs(e.rho));
      s.residual = ma_residual(p, s.p, C);
      double tr = e.hess[0][0] + e.hess[1][1];
      double disc = std::sqrt(std::max(
          0.0, (e.hess[0][0] - e.hess[1][1]) * (e.hess[0][0] - e.hess[1][1]) +
                   4 * e.hess[0][1] * e.hess[1][0]));
      s.min_eig = (tr - disc) / 2;
      s.region = e.region;
      out.samples.push_back(s);
    }
  }
  out.ray_alpha1 = fit_ray(p, true, C);
  out.ray_alpha2 = fit_ray(p, false, C);
  return out;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_solution_csv(const std::string& path, const ODESolution& s,
                        double scale, double shift) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "x,u,du,ddu\n";
  for (size_t i = 0; i < s.grid.size(); ++i)
    f << fmt17(s.grid[i]) << ',' << fmt17((s.u[i] - shift) * scale) << ','
      << fmt17(s.du[i] * scale) << ',' << fmt17(s.ddu[i] * scale) << '\n';
}

}  // namespace

void write_bundle(const GluedPotential& p, const std::string& space,
                  const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  double n = double(p.c.geo.n);
  // psi.csv carries psi = (u - C_u)/n and its derivatives on the grid;
  // w.csv the aligned fiber profile (both in the odesolve solution format).
  write_solution_csv(dir + "/psi.csv", p.u_sol, 1.0 / n, p.c.C_u);
  write_solution_csv(dir + "/w.csv", p.w_sol, 1.0, 0.0);

  nlohmann::ordered_json cj;
  const auto& g = p.c.geo;
  cj["n"] = g.n;
  cj["n1"] = g.n1;
  cj["n2"] = g.n2;
  cj["k"] = g.k;
  cj["b"] = g.b.str();
  cj["b1"] = g.b1.str();
  cj["a0"] = g.a0.str();
  cj["a1"] = g.a1.str();
  cj["zeta"] = g.zeta.str();
  cj["eta_max"] = g.eta_max.str();
  cj["cu_arg"] = g.cu_arg.str();
  cj["c_model"] = g.c_model.str();
  cj["cw_rat"] = g.cw_rat.str();
  cj["g11"] = g.g11.str();
  cj["g12"] = g.g12.str();
  cj["g22"] = g.g22.str();
  cj["C_u"] = p.c.C_u;
  cj["K1"] = p.c.K1;
  cj["K2"] = p.c.K2;
  cj["a1_fit"] = p.c.a1_fit;
  cj["C_w"] = p.c.C_w;
  cj["K2_w"] = p.c.K2_w;
  cj["w_shift"] = p.c.w_shift;
  cj["eta"] = p.c.eta;
  cj["M"] = p.c.M;
  cj["k_trunc"] = p.c.k_trunc;
  std::ofstream cf(dir + "/constants.json");
  if (!cf) throw std::runtime_error("cannot write " + dir + "/constants.json");
  cf << cj.dump(2) << '\n';

  nlohmann::ordered_json mj;
  mj["space"] = space;
  mj["kind"] = kind_name(p.fd.sys.kind);
  mj["mults"] = p.fd.sys.mult_params;
  mj["fiber"] = p.fd.fiber;
  mj["eta"] = p.c.eta;
  mj["M"] = p.c.M;
  mj["blend_eps"] = p.c.blend_eps;
  mj["k_trunc"] = p.c.k_trunc;
  mj["injectivity_ok"] = p.injectivity_ok;
  mj["t_reached"] = p.u_sol.t_reached;
  mj["psi_grid"] = {{"x_max", p.u_sol.grid.back()},
                    {"points", p.u_sol.grid.size()}};
  mj["w_grid"] = {{"x_max", p.w_sol.grid.back()},
                  {"points", p.w_sol.grid.size()}};
  std::ofstream mf(dir + "/meta.json");
  if (!mf) throw std::runtime_error("cannot write " + dir + "/meta.json");
  mf << mj.dump(2) << '\n';
}

}  // namespace rfsym
