#pragma once

#include <cmath>
#include <vector>

#include "compacton_lab/grid.hpp"

namespace clab {

/// The seven scalar functionals at one field and one λ:
///   T = ∫|∇u|²,  A = ∫|u|^{α+1},  B = ∫|u|^{β+1},
///   E = T/2 - λB/(β+1) + A/(α+1),
///   Q = T - λB + A           (first fiber derivative at t = 1),
///   L = T - λβB + αA         (second fiber derivative at t = 1),
///   P = E - T/n              (Pohozaev functional, (n-2)/(2n) T - λB/(β+1) + A/(α+1)).
struct FunctionalValues {
  double T = 0.0;
  double A = 0.0;
  double B = 0.0;
  double E = 0.0;
  double Q = 0.0;
  double L = 0.0;
  double P = 0.0;
  double lambda = 0.0;
};

/// |u|^{p-1} u evaluated as sign(u)|u|^p; total and continuous at zero.
inline double signed_pow(double u, double p) {
  if (u == 0.0) return 0.0;
  const double m = std::pow(std::abs(u), p);
  return u < 0.0 ? -m : m;
}

/// Assembles E, Q, L, P from precomputed T, A, B.  P is formed as E - T/n so
/// the identity E - P = T/n holds in the discrete arithmetic.
FunctionalValues combine(const ParamSet& params, double lambda, double T, double A, double B);

/// Dirichlet energy of the piecewise-linear interpolant,
///   T = Σ_cells cell_moments ((u_{i+1}-u_i)/h)².
/// Its exact discrete gradient is the tridiagonal radial stiffness operator,
/// which keeps energy, gradient and linear solves one consistent family.
double dirichlet_energy(const RadialGrid& grid, const Field& field);

/// All seven functionals with the grid quadrature; T is dirichlet_energy.
FunctionalValues evaluate(const RadialGrid& grid, const ParamSet& params, double lambda,
                          const Field& field);

/// Gradient density of T/2 in the weighted inner product: (DᵀW D u)_i / w_i.
/// Pairing it with any v reproduces the exact directional derivative of the
/// discrete T/2.
std::vector<double> dirichlet_half_gradient(const RadialGrid& grid, const Field& field);

/// Exact discrete gradient density of E_λ: for any test field v,
///   weighted_dot(gradient, v) = d/ds E_λ(u + s v)|_{s=0}
/// up to roundoff; pairing with u itself returns Q_λ(u).  For smooth fields
/// it is the weak-form residual density -Δu - λ|u|^{β-1}u + |u|^{α-1}u up to
/// O(h²).  The boundary entry is zero.
std::vector<double> energy_gradient(const RadialGrid& grid, const ParamSet& params,
                                    double lambda, const Field& field);

/// Natural magnitude of the energy gradient, (T + |λ|B + A) / ||u||_w.
/// Used to form scale-free residual diagnostics; zero for the zero field.
double gradient_scale(const RadialGrid& grid, const FunctionalValues& vals, const Field& field);

/// Hölder margin (∫|u|^{2*})^{1/q} A^{1/p} - B; nonnegative up to quadrature
/// roundoff for every field.  Needs dim >= 3.
double holder_check(const RadialGrid& grid, const ParamSet& params, const Field& field);

}  // namespace clab
