#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfsym/criterion.hpp"
#include "rfsym/ode.hpp"

namespace rfsym {

/// Thrown when an ansatz is requested for a facet whose reduced solution does
/// not exist (the continuity method cannot reach t = 1).
struct KeNonexistenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Region { interior, blend, glue_band, model1, model2 };
const char* region_name(Region r);

/// Numeric constants attached to a built potential, alongside the exact
/// geometric constants from `ansatz_constants`.
struct GluedConstants {
  AnsatzConstants geo;
  double C_u = 0.0;     // u = n psi + C_u
  double K1 = 0.0;      // psi(x) - b1 x -> K1
  double K2 = 0.0;      // psi(x) - b1 x - K1 ~ K2 e^{-a1 x}
  double a1_fit = 0.0;  // tail log-slope of the reduced solution
  double C_w = 0.0;     // fiber equation: w'' (w')^k = (1/C_w) J2
  double K2_w = 0.0;    // fitted growth coefficient of w: w ~ K2_w e^{a1 zeta x}
  double w_shift = 0.0; // additive constant removed from the raw fiber profile
  double eta = 0.0;     // gluing slope, 0 < eta < eta_max
  double M = 0.0;       // interior extension level
  double blend_eps = 0.0;
  int k_trunc = 1;
};

struct GluedOptions {
  double eta = 0.0;  // 0 selects the default eta_max / 2
  int k_trunc = 1;
  double M = 1.0;
  double blend_eps = 0.1;
  GridSpec psi_grid{};  // x_max 0 selects the default
  GridSpec w_grid{};
};

/// The composite Weyl-invariant potential: exponential model near the alpha2
/// wall, fibered model near the alpha1 wall, smoothstep-glued on the band
/// 0 <= alpha1 - eta alpha2 <= 1, with a log-sum-exp interior extension.
/// Immutable after build; all evaluations are in the value coordinates
/// (alpha1(x), alpha2(x)) of the facet-oriented system.
struct GluedPotential {
  FacetData fd;
  GluedConstants c;
  ODESolution u_sol;  // reduced solution; psi = (u - C_u)/n
  ODESolution w_sol;  // fiber profile, additive constant already removed
  bool injectivity_ok = true;  // a1 <= a0
  // Weyl group in value coordinates, cached for the interior extension.
  std::vector<std::array<std::array<double, 2>, 2>> wmats;

  double psi(double x) const;
  double dpsi(double x) const;
  double ddpsi(double x) const;
  double w(double x) const;
  double dw(double x) const;
  double ddw(double x) const;
};

GluedPotential build_glued(const RestrictedRootSystem& rs, int fiber,
                           const GluedOptions& opt = {});

struct EvalResult {
  double rho = 0.0;
  std::array<double, 2> grad{};
  std::array<std::array<double, 2>, 2> hess{};
  Region region = Region::model2;
};

/// Value, gradient and Hessian of the potential in value coordinates.
/// Weyl-reduces internally; derivatives are transformed back to the input
/// point. Analytic in all regions; the interior blend carries the exact
/// chain-rule terms of the mollified max within each branch of its scale
/// factor.
EvalResult evaluate(const GluedPotential& p, const std::array<double, 2>& x);

/// ln det(d^2 rho) + sum_alpha m_alpha (ln<q(alpha), d rho> - ln sinh alpha(x))
/// - ln C, with the invariant determinant (simple-root Hessian times the Gram
/// determinant) and doubled roots paired through their primitive half.
/// Returns NaN when the potential is non-admissible at x (nonpositive pairing
/// or non-positive-definite Hessian).
double ma_residual(const GluedPotential& p, const std::array<double, 2>& x,
                   double C);

/// Closed-form variant: f(x) returns {rho, grad, hess} in value coordinates.
double ma_residual(const RestrictedRootSystem& rs,
                   const std::function<EvalResult(std::array<double, 2>)>& f,
                   const std::array<double, 2>& x, double C);

/// Rank-one analogue: ln(ddrho drho^{m1+m2}) - ln(C sinh^{m1} x sinh^{m2} 2x).
double ma_residual_1d(long m1, long m2, double C, double x, double drho,
                      double ddrho);

struct MetricSample {
  std::array<std::array<double, 2>, 2> hess{};
  // (root coordinates, weight): tanh(alpha(x)/2) <alpha, d rho> per positive
  // restricted root class.
  std::vector<std::pair<std::array<int, 2>, double>> weights;
  double beta = 0.0;  // ln rho
  double r = 0.0;     // 2 e^{beta/2}
};

MetricSample metric_sample(const GluedPotential& p,
                           const std::array<double, 2>& x);

struct ResidualSample {
  std::array<double, 2> p{};
  double rho = 0.0;
  double beta = 0.0;
  double residual = 0.0;
  double min_eig = 0.0;
  Region region = Region::model2;
};

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  int n_used = 0;
};

struct ResidualMapResult {
  std::vector<ResidualSample> samples;  // row-major: alpha1 outer, alpha2 inner
  DecayFit ray_alpha1;  // ln|residual| vs alpha1 along alpha2 = 2
  DecayFit ray_alpha2;  // ln|residual| vs alpha2 along alpha1 = 2
};

/// Residuals with the model constant C over an n x n grid on [lo, hi]^2, plus
/// least-squares decay fits along the two axis rays (fixed transverse
/// coordinate 2, running coordinate in [8, 16]). Samples below the double
/// precision noise floor are excluded from the fits.
ResidualMapResult residual_map(const GluedPotential& p, double lo, double hi,
                               int n);

/// Writes psi.csv, w.csv, constants.json and meta.json into dir.
void write_bundle(const GluedPotential& p, const std::string& space,
                  const std::string& dir);

}  // namespace rfsym
