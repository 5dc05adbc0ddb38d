#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compacton_lab/fiber.hpp"

namespace clab {

enum class Classification { NonRegular, Regular, Indeterminate, Infeasible };

const char* to_string(Classification c);

/// Scale-free boundary test: flux <= tol_flux T/R is a compacton candidate
/// (NonRegular), flux >= 10 tol_flux T/R has genuine boundary slope
/// (Regular), the band between is Indeterminate.
Classification classify_flux(double flux, double T, double radius, double tol_flux);

/// A converged field with its diagnostics.
struct SolutionRecord {
  double lambda = 0.0;
  Field field;
  FunctionalValues vals;
  double flux = 0.0;
  double grad_residual = 0.0;      ///< weighted norm of the unconstrained energy gradient
  double grad_residual_rel = 0.0;  ///< grad_residual / gradient_scale
  double energy_hat = 0.0;         ///< E_λ at the field (the Ê_λ candidate)
  Classification classification = Classification::Indeterminate;
  bool converged = false;
  long iterations = 0;
  std::string note;
};

/// Evaluates every SolutionRecord diagnostic for a given field.
SolutionRecord make_record(const RadialGrid& grid, const ParamSet& params, double lambda,
                           Field field, bool converged = true, long iterations = 0,
                           double tol_flux = 1e-3);

/// Scales a field onto the constraint set {Q_λ = 0} by the larger fiber root.
/// Throws InfeasibleError when the fiber map has no roots (λ < λ1(field)).
Field project_to_nehari(const RadialGrid& grid, const ParamSet& params, double lambda,
                        const Field& field);

struct MinimizeOptions {
  long max_iters = 50000;
  double tol_grad = 2e-6;       ///< projected envelope gradient, scale-free (double-precision floor)
  double tol_decrease = 1e-11;  ///< relative flatness over `flat_window` iterations
  int flat_window = 50;
  int multistart = 4;  ///< bump + seeded starts when no init is given
  std::uint64_t seed = 42;
  double tol_flux = 1e-3;
  bool require_convergence = true;
  bool parallel = true;
  long feasibility_iters = 20000;
};

/// Minimizes E_λ over {Q_λ = 0, u >= 0}: projected descent of the reduced
/// functional v ↦ E_λ(t²(v) v) over unit-Dirichlet-norm directions, with the
/// envelope gradient t²∇E_λ(t²v).  Starts from `init` when given (warm
/// start), otherwise from the bump 1-(r/R)² plus seeded shaped starts; ties
/// resolve by smaller energy, then smaller gradient residual.
/// Throws InfeasibleError when no start can be brought into the admissible
/// cone and NotConvergedError (when require_convergence) on iteration cap.
SolutionRecord minimize_nehari(const RadialGrid& grid, const ParamSet& params, double lambda,
                               const std::optional<Field>& init = {},
                               const MinimizeOptions& opts = {});

enum class SolveStatus { Ok, Infeasible, NotConverged };

const char* to_string(SolveStatus s);

struct ScanEntry {
  double lambda = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<SolutionRecord> record;
};

/// Sequential continuation over ascending λ values, warm-starting each solve
/// from the previous minimizer.  Per-entry failures are recorded in the
/// entry's status without aborting the scan.
std::vector<ScanEntry> continuation_scan(const RadialGrid& grid, const ParamSet& params,
                                         const std::vector<double>& lambdas,
                                         const MinimizeOptions& opts = {});

}  // namespace clab
