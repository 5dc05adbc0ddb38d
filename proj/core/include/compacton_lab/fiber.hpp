#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "compacton_lab/functionals.hpp"

namespace clab {

/// λ(u) = A^{(1-β)/(1-α)} T^{(β-α)/(1-α)} / B.  Zero-homogeneous along rays.
/// Throws DegenerateFieldError unless T, A, B > 0.
double lambda_of(double T, double A, double B, const ParamSet& params);

/// t0 = (2(β-α) A / ((1+α)(1-β) T))^{1/(1-α)} — the ray scale at which
/// {Q = 0, E = 0} is solved jointly with λ0(u).
double t_zero(double T, double A, const ParamSet& params);

double lambda0_of(double T, double A, double B, const ParamSet& params);  ///< c0 λ(u)
double lambda1_of(double T, double A, double B, const ParamSet& params);  ///< c1 λ(u)

/// ψ(t) = t^{1-α} T - λ t^{β-α} B + A; e'_λ(t) = t^α ψ(t), so positive
/// fiber critical points are exactly the roots of ψ.
double fiber_psi(double t, double T, double A, double B, double lambda,
                 const ParamSet& params);

/// Roots of the fiber map derivative along t ↦ E_λ(t u).
/// ψ has a single interior minimum t_min = (λ(β-α)B/((1-α)T))^{1/(1-β)};
/// no roots when ψ(t_min) > 0, a double root at degeneracy (λ = λ1(u)),
/// otherwise t1 < t_min < t2 found by bisection.
struct FiberRoots {
  std::optional<double> t1;
  std::optional<double> t2;
  double t_min = 0.0;
  double psi_min = 0.0;
  bool double_root = false;
};

FiberRoots fiber_roots(double T, double A, double B, double lambda, const ParamSet& params);

struct SpectralOptions {
  int starts = 8;  ///< seeded starts in addition to the deterministic bump
  std::uint64_t seed = 42;
  long max_iters = 60000;
  double tol_decrease = 1e-10;  ///< relative flatness over `flat_window` iterations
  int flat_window = 50;
  double tol_grad = 2e-6;  ///< projected-gradient norm, relative to 1 + |log λ|
  bool parallel = true;
};

/// Outcome of minimizing λ(u) over nonnegative directions.
/// Λ0 = c0 inf λ(u) and Λ1 = c1 inf λ(u) scale one infimum, so
/// Λ1/Λ0 = c1/c0 holds by construction.
struct SpectralResult {
  double inf_lambda = 0.0;
  double Lambda0 = 0.0;
  double Lambda1 = 0.0;
  Field argmin_field;
  long iterations = 0;
  bool converged = false;
  std::string note;  ///< warnings; always records the radial search class
};

/// Projected gradient descent on log λ(u) over the nonnegative cone
/// intersected with the unit Dirichlet sphere, multistart, best run wins.
SpectralResult minimize_spectral(const RadialGrid& grid, const ParamSet& params,
                                 const SpectralOptions& opts = {});

/// Descends log λ(v) from `start` just far enough that the feasibility
/// threshold λ1(v) = c1 λ(v) drops to `lambda_cap` or below.  Locates the
/// admissible cone of a constrained solve when the given start is outside it.
struct FeasibilityResult {
  Field v;
  bool reached = false;
};

FeasibilityResult descend_to_feasibility(const RadialGrid& grid, const ParamSet& params,
                                         Field start, double lambda_cap,
                                         long max_iters = 20000);

}  // namespace clab
