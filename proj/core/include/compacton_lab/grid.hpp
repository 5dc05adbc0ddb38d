#pragma once

#include <vector>

#include "compacton_lab/params.hpp"

namespace clab {

/// Uniform radial grid on [0, R] for the ball B_R ⊂ R^n.
///
/// Quadrature weights realize ∫_Ω f(|x|) dx = ∫_0^R f(r) ω_{n-1} r^{n-1} dr
/// by integrating the piecewise-linear interpolant of the samples against the
/// exact radial measure, so constants and linear functions of r integrate
/// exactly (the weight sum is the ball volume ω_{n-1} R^n / n up to roundoff).
/// For n = 1 the measure is the even-symmetric interval (-R, R), total
/// weight 2R.
struct RadialGrid {
  ParamSet params;
  int n_nodes = 0;
  double spacing = 0.0;      ///< h = R/(N-1)
  double sphere_area = 0.0;  ///< ω_{n-1} = 2 π^{n/2} / Γ(n/2)
  std::vector<double> node_radii;
  std::vector<double> quad_weights;
  /// ω_{n-1} ∫_cell r^{n-1} dr per cell (N-1 entries): the exact moments
  /// behind the piecewise-linear Dirichlet form Σ cell_moments ((Δu)/h)².
  std::vector<double> cell_moments;
};

/// Nodal function on a RadialGrid.  values.back() is pinned to zero
/// (Dirichlet condition on ∂B_R); all values must be finite.
struct Field {
  const RadialGrid* grid = nullptr;
  std::vector<double> values;
};

/// Builds the grid; n_nodes must be at least 16 (GridTooCoarseError).
RadialGrid build_grid(const ParamSet& params, int n_nodes);

/// Wraps nodal values as a Field, forcing the boundary entry to zero.
/// Throws LengthMismatchError on wrong length, Error on non-finite input.
Field make_field(const RadialGrid& grid, std::vector<double> values);

Field zero_field(const RadialGrid& grid);

/// Σ_i w_i samples_i — the discrete ∫_Ω for radial integrands.
double integrate(const RadialGrid& grid, const std::vector<double>& samples);

/// Weighted inner product Σ_i w_i a_i b_i and the induced norm.
double weighted_dot(const RadialGrid& grid, const std::vector<double>& a,
                    const std::vector<double>& b);
double weighted_norm(const RadialGrid& grid, const std::vector<double>& a);

/// Second-order nodal derivative: central stencils inside, one-sided
/// three-point stencils at r = 0 and r = R.  The r = 0 stencil vanishes
/// identically on even quadratics, consistent with u'(0) = 0.
std::vector<double> radial_derivative(const RadialGrid& grid, const Field& field);

/// (1/2n) |u'(R)|^2 R^n ω_{n-1} — the boundary term of the Pohozaev identity
/// on the ball, evaluated with the one-sided boundary derivative.
double boundary_flux_term(const RadialGrid& grid, const Field& field);

/// Applies the discrete (-Δ + K) in radial form,
///   -u'' - ((n-1)/r) u' + K u,
/// with the even-extension limit n u''(0) at the origin.  The boundary row
/// (r = R) is reported as zero.
std::vector<double> apply_shifted_operator(const RadialGrid& grid, const Field& field,
                                           double shift);

/// Direct tridiagonal solve of (-Δ + K) u = rhs with u(R) = 0, u'(0) = 0.
/// K must be >= 0; a vanishing pivot raises SingularSystemError.
Field solve_shifted_poisson(const RadialGrid& grid, const std::vector<double>& rhs,
                            double shift);

/// Same solve with a per-node shift of either sign (the linearized operator
/// of the descent preconditioner and of the Newton stationarity polish).
Field solve_variable_shift(const RadialGrid& grid, const std::vector<double>& rhs,
                           const std::vector<double>& shift);

}  // namespace clab
