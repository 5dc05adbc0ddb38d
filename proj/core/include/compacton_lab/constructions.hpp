#pragma once

#include <vector>

#include "compacton_lab/nehari.hpp"

namespace clab {

struct ProfileSample {
  double x = 0.0;
  double u = 0.0;
};

/// Compactly supported 1-D solution of -u'' = λ u^β - u^α reconstructed from
/// the zero-energy first integral (1/2) u'² = u^{α+1}/(α+1) - λ u^{β+1}/(β+1).
/// u_max is the zero of the right-hand side, half_width the time-map integral
/// ∫_0^{u_max} du / sqrt(2 G(u)); the profile runs from (0, u_max) down to
/// (half_width, 0) with vanishing endpoint slope.
struct Profile1D {
  double lambda = 0.0;
  double u_max = 0.0;
  double half_width = 0.0;
  std::vector<ProfileSample> profile;
};

/// Quadrature construction of the 1-D compacton (params.dim must be 1).
/// Both integrable endpoint singularities are removed by the substitution
/// u = u_max sin^{4/(1-α)} φ before the midpoint rule is applied on `panels`
/// uniform φ-panels.
Profile1D oracle_1d(const ParamSet& params, double lambda, int panels = 10000);

/// Samples the profile onto a radial grid by linear interpolation in x,
/// extending by zero beyond the support.
Field profile_to_field(const Profile1D& profile, const RadialGrid& grid);

/// Maps a compacton at λ0 to one at λ = σ^{2(β-α)/(1-α)} λ0 via
///   w(x) = σ^{-2/(1-α)} u(σ x),   support shrinking to R/σ,
/// with exact zero extension outside.  Requires the input to pass the
/// NonRegular flux test (NotCompactonError otherwise) and σ >= 1.
SolutionRecord scale_compacton(const RadialGrid& grid, const ParamSet& params,
                               const SolutionRecord& record, double sigma,
                               double tol_flux = 1e-3);

/// Torsion function of the ball: -Δe = 1, e = 0 on the boundary;
/// equals (R² - r²)/(2n) up to the discretization.
Field torsion_function(const RadialGrid& grid);

/// Super-solution amplitude M with M - λ M^β e_max^β > 0:
/// (λ e_max^β)^{1/(1-β)} times (1 + margin).
double supersolution_bound(const ParamSet& params, double lambda, double e_max,
                           double margin = 0.01);

/// sup of |λβ s^{β-1} - α s^{α-1}| over s in [1e-6 amplitude, amplitude];
/// the default linearization shift for monotone_iterate.  The nonlinearity is
/// non-Lipschitz at zero, so no finite shift covers [0, ·] — monotonicity is
/// monitored during the iteration rather than assumed.
double default_monotone_shift(const ParamSet& params, double lambda, double amplitude);

struct MonotoneOptions {
  long max_iters = 4000000;
  double tol_flux = 1e-3;
  double monotone_slack = 1.0;  ///< allowed pointwise rise, in units of tol
};

/// Sub/super-solution sweep at λ: starts from the super-solution M·e and
/// iterates u ← (-Δ + K)^{-1}(f(λ,u) + K u) downward.  Stops once successive
/// iterates differ by less than tol in the weighted norm and the strong-form
/// residual is below 10·tol.  A pointwise rise beyond tol·monotone_slack
/// raises MonotonicityLostError with the iteration index and violation.
SolutionRecord monotone_iterate(const RadialGrid& grid, const ParamSet& params, double lambda,
                                const Field& sub, double shift, double tol,
                                const MonotoneOptions& opts = {});

/// Weighted norm of the discrete strong-form residual
///   -Δu - λ|u|^{β-1}u + |u|^{α-1}u
/// under the grid quadrature (boundary row excluded).
double weak_residual(const RadialGrid& grid, const ParamSet& params, double lambda,
                     const Field& field);

}  // namespace clab
