#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rfsym/facet.hpp"

namespace rfsym {

// Sampling layout for one-sided (even) solutions on [0, x_max].
// A quadratically graded band covers [0, 1] (the Jacobian vanishes to high
// order at 0), followed by uniform spacing h up to x_max.
// x_max == 0 requests the default 20/delta for facet solves.
struct GridSpec {
  double x_max = 0.0;
  int n_graded = 160;
  double h = 0.02;
};

struct SolverDiag {
  double m_t = 0.0;             // min of nu_t over the positive grid
  double x_t = 0.0;             // argmin of nu_t
  double fixed_point_defect = 0.0;  // final Picard defect on u'
  int iterations = 0;           // Picard iterations at the final t
  int t_steps = 0;              // accepted continuity steps
};

struct ODESolution {
  std::vector<double> grid;  // x_0 = 0 < ... < x_N
  std::vector<double> u, du, ddu;
  Rational lambda{0};
  double t_reached = 0.0;
  // (exponent, coefficient) pairs, the constant term first.
  std::vector<std::pair<double, double>> expansion;
  int n1 = 0, n2 = 0;  // Jacobian exponents used by this solution
  double delta = 0.0;  // tail decay rate (0 when not applicable)
  SolverDiag diag;

  // Cubic Hermite interpolation (u with slope du; du with slope ddu).
  double eval_u(double x) const;
  double eval_du(double x) const;
};

struct StallReport {
  double t_achieved = 0.0;
  double t_bound = 0.0;
  Rational t_bound_exact{0};
  std::string message;
};

struct ContinuityResult {
  std::optional<ODESolution> solution;
  std::optional<StallReport> stall;
};

// Additive constant of the reference potential: the unique C such that
// int_0^inf J/(e^{lambda x}+e^{-lambda x}) e^{-C} dx equals int_0^lambda P.
double normalize_uref(const FacetData& f);

// Reference-density solution (t = 0 member of the continuity family).
ODESolution solve_t0(const FacetData& f, const GridSpec& gs = {});

// Continuity method from t = 0 toward t_target with step halving; returns the
// solution or a stall report carrying the largest achieved t and the exact
// barycenter bound (lambda - n1 - 2 n2)/(lambda - barDH).
ContinuityResult continuity_solve(const FacetData& f, double t_target,
                                  const GridSpec& gs = {});

// Fiber profile: rho''(x) rho'(x)^{m1+m2} = C sinh^{m1}(x) sinh^{m2}(2x),
// solved by the separable closed form, rho(0) = 0.
ODESolution stenzel_solve(long m1, long m2, double C, const GridSpec& gs);

// Pointwise defect of the continuity equation at parameter t.
double ode_residual(const ODESolution& sol, const FacetData& f, double t);

// Pointwise defect of the fiber equation for given (m1, m2, C).
double stenzel_residual(const ODESolution& sol, long m1, long m2, double C);

// Least-squares tail expansion of u - lambda x against exponentials
// e^{-(j delta + 2k) x} up to j_max * delta, constant term first.
std::vector<std::pair<double, double>> expansion_fit(const ODESolution& sol,
                                                     int j_max);

// (mass, first moment) of the solution density e^{-nu_t}; the exact values
// are V and V * barDH respectively.
std::pair<double, double> integral_identities(const ODESolution& sol,
                                              const FacetData& f, double t);

// Solve Delta_2 f = g for the radial fiber Laplacian
// Delta_2 f = f''/w'' + (d2 - 1) f'/w', normalized by f(0) = 0.
std::vector<double> solve_delta2(const ODESolution& w,
                                 const std::vector<double>& g, double d2);

// Legendre transform value v(y) = sup_x (x y - u(x)) for y in [0, sup u').
double legendre_value(const ODESolution& sol, double y);

// Fourth-order cumulative integral of samples y on the (non-uniform) grid x.
std::vector<double> integrate_samples_cum(const std::vector<double>& x,
                                          const std::vector<double>& y);

// log(sinh x) without overflow, valid for x > 0.
double lsinh(double x);

}  // namespace rfsym
