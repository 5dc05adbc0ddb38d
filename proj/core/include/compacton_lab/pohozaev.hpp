#pragma once

#include <utility>
#include <vector>

#include "compacton_lab/nehari.hpp"

namespace clab {

/// Signed defect of the Pohozaev identity, P_λ(u) + boundary flux term.
/// Vanishes (at the discretization order) for weak solutions; gated on the
/// record's relative gradient residual because the identity carries no
/// information for non-solutions.  Throws NotASolutionError above the gate.
double pohozaev_residual(const RadialGrid& grid, const ParamSet& params,
                         const SolutionRecord& record, double grad_tol_rel = 1e-2);

/// Re-runs the flux band test of the record (see classify_flux).
Classification classify(const SolutionRecord& record, double tol_flux = 1e-3);

struct ZRow {
  double lambda = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  double E_hat = 0.0;
  double P = 0.0;
  double flux = 0.0;
  double L = 0.0;
  Classification classification = Classification::Infeasible;
  bool in_Z = false;  ///< P < 0 at the minimizer
};

/// Warm-started continuation over [lambda_min, lambda_max] with `steps`
/// equally spaced points; each row carries the Z-membership flag P < 0.
std::vector<ZRow> scan_Z(const RadialGrid& grid, const ParamSet& params, double lambda_min,
                         double lambda_max, int steps, const MinimizeOptions& opts = {});

/// Consecutive-row λ intervals on which P changes sign (all crossings are
/// reported; the bisection below locates one of them).
std::vector<std::pair<double, double>> pohozaev_sign_changes(const std::vector<ZRow>& rows);

struct BracketStep {
  double lo = 0.0;
  double hi = 0.0;
  double mid = 0.0;
  double P_mid = 0.0;
};

struct LambdaStarOptions {
  double tol_lambda = 1e-5;  ///< bracket width target, relative to Λ0
  double p_tol_rel = 1e-6;   ///< |P| target at the returned record, relative to T
  double lower_margin = 1e-3;  ///< bracket starts at Λ1 (1 + lower_margin)
  int max_steps = 80;
  SpectralOptions spectral;
  MinimizeOptions solve;
};

struct LambdaStarResult {
  double lambda_star = 0.0;
  SolutionRecord record_at_star;
  std::vector<BracketStep> bracket_history;
  double Lambda1 = 0.0;
  double Lambda0 = 0.0;
  double p_tol_declared = 0.0;  ///< absolute |P| tolerance met by record_at_star
  bool converged = false;
};

/// Finds the threshold λ* ∈ (Λ1, Λ0) where P_λ(u_λ) crosses zero along the
/// warm-started minimizer branch: computes Λ1, Λ0 by spectral minimization,
/// checks the bracket signs (NoSignChangeError otherwise) and bisects until
/// the bracket is below tol_lambda·Λ0 and |P| at the midpoint record is below
/// p_tol_rel·T.  Requires dim >= 3 and theta < 0 (HypothesesUnmetError).
LambdaStarResult find_lambda_star(const RadialGrid& grid, const ParamSet& params,
                                  const LambdaStarOptions& opts = {});

}  // namespace clab
