// rfsym: command-line surface over the exact criteria, the continuity-method
// solver and the glued asymptotic ansatz.
//
// Exit codes: 0 success, 1 internal failure, 2 usage error,
//             3 refusal (no solution exists for the requested facet),
//             4 solver stall (StallReport serialized to stderr as JSON).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfsym/ansatz.hpp"
#include "rfsym/catalog.hpp"
#include "rfsym/criterion.hpp"

using json = nlohmann::ordered_json;
using namespace rfsym;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRefusal = 3;
constexpr int kExitStall = 4;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CatalogEntry lookup_or_throw(const std::string& space) {
  auto e = catalog_lookup(space);
  if (!e)
    throw CLI::ValidationError("--space", "unknown symmetric space '" + space +
                                              "'");
  return *e;
}

json constants_row(const CatalogEntry& e, int fiber) {
  auto fd = facet(e.system(), fiber);
  auto c = ansatz_constants(fd);
  json row;
  row["space"] = e.name;
  row["family"] = e.family;
  row["facet"] = fiber;
  row["n"] = c.n;
  row["n1"] = c.n1;
  row["n2"] = c.n2;
  row["k"] = c.k;
  row["dim_fiber"] = c.k + 1;
  row["dim_base"] = c.n1 + c.n2 + 1;
  row["lambda"] = fd.lambda.str();
  row["delta"] = fd.delta.str();
  row["V"] = fd.V.str();
  row["barycenter"] = fd.bar_dh.str();
  row["b"] = c.b.str();
  row["b1"] = c.b1.str();
  row["a0"] = c.a0.str();
  row["a1"] = c.a1.str();
  row["zeta"] = c.zeta.str();
  row["eta_max"] = c.eta_max.str();
  row["cu_arg"] = c.cu_arg.str();
  row["c_model"] = c.c_model.str();
  row["cw_rat"] = c.cw_rat.str();
  row["gram"] = {c.g11.str(), c.g12.str(), c.g22.str()};
  row["margin"] = barycenter_margin(fd).str();
  row["ke_exists"] = ke_exists(fd);
  row["a1_le_a0"] = !(c.a1 > c.a0);
  return row;
}

// Sign of the closed-form (beta/moment-integral) margin for the same facet,
// used as an independent cross-check of the barycenter route.
bool closed_form_positive(const CatalogEntry& e, int fiber) {
  const auto& m = e.mults;
  switch (e.kind) {
    case RootSystemKind::A2:
      return condA_margin(m[0]) > Rational(0);
    case RootSystemKind::G2: {
      // First component is the short-root (facet 2) condition.
      auto pr = condG2_margins(m[0]);
      return (fiber == 1 ? pr.second : pr.first) > Rational(0);
    }
    default: {  // B2 / BC2
      auto pr = beta_condition_margins(m[0], m[1], m.size() > 2 ? m[2] : 0);
      return (fiber == 1 ? pr.first : pr.second) > Rational(0);
    }
  }
}

json criteria_row(const CatalogEntry& e, int fiber) {
  auto fd = facet(e.system(), fiber);
  Rational margin = barycenter_margin(fd);
  json row;
  row["space"] = e.name;
  row["facet"] = fiber;
  row["margin"] = margin.str();
  row["ke_exists"] = ke_exists(fd);
  {
    auto c = ansatz_constants(fd);
    row["a1_le_a0"] = !(c.a1 > c.a0);
  }
  row["method_agreement"] =
      (margin > Rational(0)) == closed_form_positive(e, fiber);
  return row;
}

void write_solution_csv(const std::string& path, const ODESolution& s) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "x,u,du,ddu\r\n";
  for (size_t i = 0; i < s.grid.size(); ++i)
    f << fmt17(s.grid[i]) << ',' << fmt17(s.u[i]) << ',' << fmt17(s.du[i])
      << ',' << fmt17(s.ddu[i]) << "\r\n";
}

json expansion_json(const std::vector<std::pair<double, double>>& exp) {
  json arr = json::array();
  for (const auto& [e, c] : exp) arr.push_back({{"exponent", e}, {"coefficient", c}});
  return arr;
}

int cmd_constants(const std::string& space, int facet_opt) {
  auto e = lookup_or_throw(space);
  if (facet_opt == 0) {
    json out = json::array();
    out.push_back(constants_row(e, 1));
    out.push_back(constants_row(e, 2));
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << constants_row(e, facet_opt).dump(2) << '\n';
  }
  return 0;
}

int cmd_criteria(const std::string& space, int facet_opt, bool all) {
  if (all) {
    json out = json::array();
    for (const auto& e : catalog_all())
      for (int f = 1; f <= 2; ++f) out.push_back(criteria_row(e, f));
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  auto e = lookup_or_throw(space);
  if (facet_opt == 0)
    throw CLI::RequiredError("--facet (or --all)");
  std::cout << criteria_row(e, facet_opt).dump(2) << '\n';
  return 0;
}

int cmd_solve_facet(const std::string& space, int fiber, double t, double xmax,
                    const std::string& out_dir) {
  auto e = lookup_or_throw(space);
  auto fd = facet(e.system(), fiber);
  GridSpec gs;
  gs.x_max = xmax;
  auto res = continuity_solve(fd, t, gs);
  if (!res.solution) {
    json sr;
    sr["t_achieved"] = res.stall->t_achieved;
    sr["t_bound"] = res.stall->t_bound;
    sr["t_bound_exact"] = res.stall->t_bound_exact.str();
    sr["message"] = res.stall->message;
    std::cerr << sr.dump(2) << '\n';
    return kExitStall;
  }
  const auto& s = *res.solution;
  std::filesystem::create_directories(out_dir);
  write_solution_csv(out_dir + "/solution.csv", s);

  json meta;
  meta["space"] = e.name;
  meta["facet"] = fiber;
  meta["t"] = s.t_reached;
  meta["lambda"] = fd.lambda.str();
  meta["delta"] = fd.delta.str();
  meta["V"] = fd.V.str();
  meta["barycenter"] = fd.bar_dh.str();
  meta["n1"] = fd.n1;
  meta["n2"] = fd.n2;
  meta["residual"] = ode_residual(s, fd, s.t_reached);
  auto ii = integral_identities(s, fd, s.t_reached);
  meta["mass"] = ii.first;
  meta["first_moment"] = ii.second;
  meta["expansion"] = expansion_json(s.expansion);
  meta["grid"] = {{"x_max", s.grid.back()}, {"points", s.grid.size()}};
  meta["iterations"] = s.diag.iterations;
  meta["t_steps"] = s.diag.t_steps;
  std::ofstream mf(out_dir + "/solution.json");
  if (!mf) throw std::runtime_error("cannot write " + out_dir + "/solution.json");
  mf << meta.dump(2) << '\n';
  return 0;
}

int cmd_stenzel(long m1, long m2, double C, double xmax) {
  GridSpec gs;
  gs.x_max = xmax;
  auto s = stenzel_solve(m1, m2, C, gs);
  std::cout << "x,u,du,ddu\r\n";
  for (size_t i = 0; i < s.grid.size(); ++i)
    std::cout << fmt17(s.grid[i]) << ',' << fmt17(s.u[i]) << ','
              << fmt17(s.du[i]) << ',' << fmt17(s.ddu[i]) << "\r\n";
  return 0;
}

int cmd_ansatz(const std::string& space, int fiber, double eta, int k_trunc,
               const std::string& out_dir) {
  auto e = lookup_or_throw(space);
  GluedOptions opt;
  opt.eta = eta;
  opt.k_trunc = k_trunc;
  auto p = build_glued(e.system(), fiber, opt);
  write_bundle(p, e.name, out_dir);
  return 0;
}

int cmd_residual_map(const std::string& bundle_dir, double lo, double hi,
                     int n) {
  std::ifstream mf(bundle_dir + "/meta.json");
  if (!mf)
    throw CLI::ValidationError("--potential",
                               "no meta.json in '" + bundle_dir + "'");
  json meta = json::parse(mf);
  auto e = lookup_or_throw(meta.at("space").get<std::string>());
  GluedOptions opt;
  opt.eta = meta.at("eta").get<double>();
  opt.k_trunc = meta.at("k_trunc").get<int>();
  opt.M = meta.at("M").get<double>();
  opt.blend_eps = meta.at("blend_eps").get<double>();
  auto p = build_glued(e.system(), meta.at("fiber").get<int>(), opt);

  auto rm = residual_map(p, lo, hi, n);
  std::ofstream cf(bundle_dir + "/residual_map.csv");
  if (!cf)
    throw std::runtime_error("cannot write " + bundle_dir + "/residual_map.csv");
  cf << "a1,a2,rho,beta,residual,min_eig,region\r\n";
  for (const auto& s : rm.samples)
    cf << fmt17(s.p[0]) << ',' << fmt17(s.p[1]) << ',' << fmt17(s.rho) << ','
       << fmt17(s.beta) << ',' << fmt17(s.residual) << ',' << fmt17(s.min_eig)
       << ',' << region_name(s.region) << "\r\n";

  json fit;
  fit["window"] = {lo, hi};
  fit["n"] = n;
  fit["ray_alpha1"] = {{"slope", rm.ray_alpha1.slope},
                       {"intercept", rm.ray_alpha1.intercept},
                       {"n_used", rm.ray_alpha1.n_used}};
  fit["ray_alpha2"] = {{"slope", rm.ray_alpha2.slope},
                       {"intercept", rm.ray_alpha2.intercept},
                       {"n_used", rm.ray_alpha2.n_used}};
  std::ofstream ff(bundle_dir + "/decay_fit.json");
  if (!ff)
    throw std::runtime_error("cannot write " + bundle_dir + "/decay_fit.json");
  ff << fit.dump(2) << '\n';
  std::cout << fit.dump(2) << '\n';
  return 0;
}

int cmd_expansion(const std::string& solution_path, int jmax) {
  std::ifstream cf(solution_path);
  if (!cf)
    throw CLI::ValidationError("--solution",
                               "cannot read '" + solution_path + "'");
  // Sidecar metadata (lambda, delta, Jacobian exponents) written by
  // solve-facet next to the csv.
  auto sidecar =
      std::filesystem::path(solution_path).replace_extension(".json");
  std::ifstream sf(sidecar);
  if (!sf)
    throw CLI::ValidationError(
        "--solution", "missing sidecar '" + sidecar.string() + "'");
  json meta = json::parse(sf);

  ODESolution s;
  std::string line;
  std::getline(cf, line);  // header
  while (std::getline(cf, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double x, u, du, ddu;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &u, &du, &ddu) != 4)
      throw CLI::ValidationError("--solution", "malformed csv row: " + line);
    s.grid.push_back(x);
    s.u.push_back(u);
    s.du.push_back(du);
    s.ddu.push_back(ddu);
  }
  s.lambda = Rational(meta.at("lambda").get<std::string>());
  s.delta = Rational(meta.at("delta").get<std::string>()).to_double();
  s.n1 = meta.at("n1").get<int>();
  s.n2 = meta.at("n2").get<int>();
  auto fit = expansion_fit(s, jmax);
  json out;
  out["jmax"] = jmax;
  out["delta"] = meta.at("delta");
  out["terms"] = expansion_json(fit);
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact KE criteria, reduced-equation solver and glued ansatz "
               "for rank-two symmetric spaces"};
  app.require_subcommand(1);

  std::string space, out_dir = ".", bundle_dir, solution_path;
  int facet_no = 0, n_grid = 64, k_trunc = 1, jmax = 4;
  bool all = false;
  double t_target = 1.0, xmax = 0.0, C = 0.0, eta = 0.0;
  long m1 = 0, m2 = 0;
  std::vector<double> window{4.0, 16.0};

  auto* c_const = app.add_subcommand("constants", "exact facet constants");
  c_const->add_option("--space", space)->required();
  c_const->add_option("--facet", facet_no)->check(CLI::Range(1, 2));

  auto* c_crit = app.add_subcommand("criteria", "existence margins & verdicts");
  c_crit->add_option("--space", space);
  c_crit->add_option("--facet", facet_no)->check(CLI::Range(1, 2));
  c_crit->add_flag("--all", all);

  auto* c_solve = app.add_subcommand("solve-facet", "continuity-method solve");
  c_solve->add_option("--space", space)->required();
  c_solve->add_option("--facet", facet_no)->required()->check(CLI::Range(1, 2));
  c_solve->add_option("--t", t_target);
  c_solve->add_option("--xmax", xmax);
  c_solve->add_option("--out", out_dir);

  auto* c_sten = app.add_subcommand("stenzel", "fiber profile closed form");
  c_sten->add_option("--m1", m1)->required();
  c_sten->add_option("--m2", m2)->required();
  c_sten->add_option("--C", C)->required();
  c_sten->add_option("--xmax", xmax);

  auto* c_ans = app.add_subcommand("ansatz", "build the glued potential");
  c_ans->add_option("--space", space)->required();
  c_ans->add_option("--facet", facet_no)->required()->check(CLI::Range(1, 2));
  c_ans->add_option("--eta", eta);
  c_ans->add_option("--k", k_trunc);
  c_ans->add_option("--out", out_dir);

  auto* c_map = app.add_subcommand("residual-map", "residual & metric grid");
  c_map->add_option("--potential", bundle_dir)->required();
  c_map->add_option("--window", window)->expected(2);
  c_map->add_option("--n", n_grid)->check(CLI::Range(2, 4096));

  auto* c_exp = app.add_subcommand("expansion", "tail expansion of a solution");
  c_exp->add_option("--solution", solution_path)->required();
  c_exp->add_option("--jmax", jmax)->check(CLI::Range(1, 16));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(c_const)) return cmd_constants(space, facet_no);
    if (app.got_subcommand(c_crit)) return cmd_criteria(space, facet_no, all);
    if (app.got_subcommand(c_solve))
      return cmd_solve_facet(space, facet_no, t_target, xmax, out_dir);
    if (app.got_subcommand(c_sten))
      return cmd_stenzel(m1, m2, C, xmax > 0 ? xmax : 15.0);
    if (app.got_subcommand(c_ans))
      return cmd_ansatz(space, facet_no, eta, k_trunc, out_dir);
    if (app.got_subcommand(c_map))
      return cmd_residual_map(bundle_dir, window[0], window[1], n_grid);
    if (app.got_subcommand(c_exp)) return cmd_expansion(solution_path, jmax);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const KeNonexistenceError& e) {
    std::cerr << e.what() << '\n';
    return kExitRefusal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
