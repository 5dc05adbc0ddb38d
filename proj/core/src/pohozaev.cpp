#include "compacton_lab/pohozaev.hpp"

#include <cmath>
#include <sstream>

namespace clab {

double pohozaev_residual(const RadialGrid& grid, const ParamSet& params,
                         const SolutionRecord& record, double grad_tol_rel) {
  (void)params;
  if (record.grad_residual_rel > grad_tol_rel) {
    std::ostringstream os;
    os << "pohozaev_residual needs a converged solution: relative gradient residual "
       << record.grad_residual_rel << " exceeds gate " << grad_tol_rel;
    throw NotASolutionError(os.str());
  }
  return record.vals.P + boundary_flux_term(grid, record.field);
}

Classification classify(const SolutionRecord& record, double tol_flux) {
  const double R = record.field.grid ? record.field.grid->params.radius : 1.0;
  return classify_flux(record.flux, record.vals.T, R, tol_flux);
}

std::vector<ZRow> scan_Z(const RadialGrid& grid, const ParamSet& params, double lambda_min,
                         double lambda_max, int steps, const MinimizeOptions& opts) {
  if (steps < 1) throw Error("scan_Z needs at least one step");
  if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min)) {
    throw Error("scan_Z needs 0 < lambda_min <= lambda_max");
  }
  std::vector<double> lambdas(steps);
  for (int i = 0; i < steps; ++i) {
    lambdas[i] = steps == 1 ? lambda_min
                            : lambda_min + (lambda_max - lambda_min) * i / (steps - 1.0);
  }
  const auto entries = continuation_scan(grid, params, lambdas, opts);

  std::vector<ZRow> rows;
  rows.reserve(entries.size());
  for (const auto& e : entries) {
    ZRow row;
    row.lambda = e.lambda;
    row.status = e.status;
    if (e.record) {
      row.E_hat = e.record->energy_hat;
      row.P = e.record->vals.P;
      row.flux = e.record->flux;
      row.L = e.record->vals.L;
      row.classification = e.record->classification;
      row.in_Z = row.P < 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::pair<double, double>> pohozaev_sign_changes(const std::vector<ZRow>& rows) {
  std::vector<std::pair<double, double>> changes;
  const ZRow* prev = nullptr;
  for (const auto& row : rows) {
    if (row.status == SolveStatus::Infeasible) continue;
    if (prev && (prev->P < 0.0) != (row.P < 0.0)) {
      changes.emplace_back(prev->lambda, row.lambda);
    }
    prev = &row;
  }
  return changes;
}

LambdaStarResult find_lambda_star(const RadialGrid& grid, const ParamSet& params,
                                  const LambdaStarOptions& opts) {
  if (params.dim < 3 || theta(params) >= 0.0) {
    std::ostringstream os;
    os << "lambda* needs dim >= 3 and theta < 0 (dim=" << params.dim
       << ", theta=" << theta(params) << ")";
    throw HypothesesUnmetError(os.str());
  }

  LambdaStarResult res;
  const auto spectral = minimize_spectral(grid, params, opts.spectral);
  res.Lambda1 = spectral.Lambda1;
  res.Lambda0 = spectral.Lambda0;

  MinimizeOptions solve = opts.solve;
  solve.require_convergence = false;

  // Endpoint solves, warm-started from the spectral argmin direction.
  double lo = spectral.Lambda1 * (1.0 + opts.lower_margin);
  double hi = spectral.Lambda0;
  SolutionRecord rec_lo = minimize_nehari(grid, params, lo, spectral.argmin_field, solve);
  SolutionRecord rec_hi = minimize_nehari(grid, params, hi, rec_lo.field, solve);
  if (!(rec_lo.vals.P > 0.0) || !(rec_hi.vals.P < 0.0)) {
    std::ostringstream os;
    os << "P does not change sign on the bracket: P(" << lo << ")=" << rec_lo.vals.P << ", P("
       << hi << ")=" << rec_hi.vals.P;
    throw NoSignChangeError(os.str());
  }

  SolutionRecord best = rec_lo;
  double mid = lo;
  for (int step = 0; step < opts.max_steps; ++step) {
    mid = 0.5 * (lo + hi);

    // Solve the midpoint from both bracket branches; if they disagree the
    // bisection continues on the branch with the smaller energy.
    MinimizeOptions warm = solve;
    SolutionRecord cand = minimize_nehari(grid, params, mid, rec_lo.field, warm);
    SolutionRecord cand_hi = minimize_nehari(grid, params, mid, rec_hi.field, warm);
    if (cand_hi.energy_hat < cand.energy_hat - 1e-12 * std::abs(cand.energy_hat)) {
      cand = std::move(cand_hi);
    }

    res.bracket_history.push_back(BracketStep{lo, hi, mid, cand.vals.P});
    if (cand.vals.P > 0.0) {
      lo = mid;
      rec_lo = cand;
    } else {
      hi = mid;
      rec_hi = cand;
    }
    best = std::move(cand);

    const bool width_ok = (hi - lo) <= opts.tol_lambda * res.Lambda0;
    const bool p_ok = std::abs(best.vals.P) <= opts.p_tol_rel * best.vals.T;
    if (width_ok && p_ok) {
      res.converged = true;
      break;
    }
  }

  res.lambda_star = mid;
  res.record_at_star = std::move(best);
  res.p_tol_declared = opts.p_tol_rel * res.record_at_star.vals.T;
  return res;
}

}  // namespace clab
