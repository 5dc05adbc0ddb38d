#include "compacton_lab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace clab {

namespace {

double first_integral(const ParamSet& params, double lambda, double u) {
  const double a = params.alpha;
  const double b = params.beta;
  const double g = std::pow(u, 1.0 + a) / (1.0 + a) - lambda * std::pow(u, 1.0 + b) / (1.0 + b);
  return std::max(g, 0.0);
}

double nonlinearity(const ParamSet& params, double lambda, double u) {
  return lambda * signed_pow(u, params.beta) - signed_pow(u, params.alpha);
}

}  // namespace

Profile1D oracle_1d(const ParamSet& params, double lambda, int panels) {
  if (params.dim != 1) {
    throw InvalidDimensionError("oracle_1d is the interval construction; params.dim must be 1");
  }
  if (!(lambda > 0.0)) throw Error("oracle_1d needs lambda > 0");
  if (panels < 16) throw Error("oracle_1d needs at least 16 panels");

  const double a = params.alpha;
  const double b = params.beta;

  Profile1D out;
  out.lambda = lambda;
  out.u_max = std::pow((1.0 + b) / (lambda * (1.0 + a)), 1.0 / (b - a));

  const double k = 4.0 / (1.0 - a);
  const double dphi = 0.5 * M_PI / panels;

  // Midpoint contributions of dx = du / sqrt(2 G(u)) on each φ-panel.
  std::vector<double> cell(panels);
  for (int i = 0; i < panels; ++i) {
    const double phi = (i + 0.5) * dphi;
    const double sn = std::sin(phi);
    const double s = std::pow(sn, k);
    const double u = out.u_max * s;
    const double dens = out.u_max * k * std::pow(sn, k - 1.0) * std::cos(phi) /
                        std::sqrt(2.0 * first_integral(params, lambda, u));
    cell[i] = dens * dphi;
  }

  // x(φ_j) = distance from the peak; accumulate from the top so the peak is
  // exactly at x = 0.
  std::vector<double> xs(panels + 1, 0.0);
  for (int j = panels - 1; j >= 0; --j) xs[j] = xs[j + 1] + cell[j];
  out.half_width = xs[0];

  out.profile.reserve(panels + 1);
  for (int j = panels; j >= 0; --j) {
    const double phi = j * dphi;
    const double u = j == panels ? out.u_max : out.u_max * std::pow(std::sin(phi), k);
    out.profile.push_back(ProfileSample{xs[j], u});
  }
  out.profile.front().x = 0.0;
  out.profile.back().u = 0.0;
  return out;
}

Field profile_to_field(const Profile1D& profile, const RadialGrid& grid) {
  const auto& samples = profile.profile;
  std::vector<double> values(grid.n_nodes, 0.0);
  for (int i = 0; i < grid.n_nodes; ++i) {
    const double x = grid.node_radii[i];
    if (x >= profile.half_width) continue;
    auto it = std::lower_bound(samples.begin(), samples.end(), x,
                               [](const ProfileSample& s, double v) { return s.x < v; });
    if (it == samples.begin()) {
      values[i] = it->u;
      continue;
    }
    if (it == samples.end()) continue;
    const auto& right = *it;
    const auto& left = *(it - 1);
    const double span = right.x - left.x;
    const double f = span > 0.0 ? (x - left.x) / span : 0.0;
    values[i] = left.u + f * (right.u - left.u);
  }
  return make_field(grid, std::move(values));
}

SolutionRecord scale_compacton(const RadialGrid& grid, const ParamSet& params,
                               const SolutionRecord& record, double sigma, double tol_flux) {
  if (!(sigma >= 1.0)) throw Error("scale_compacton needs sigma >= 1");
  if (classify_flux(record.flux, record.vals.T, grid.params.radius, tol_flux) !=
      Classification::NonRegular) {
    std::ostringstream os;
    os << "input is not a compacton: boundary flux " << record.flux
       << " exceeds the NonRegular band (tol_flux=" << tol_flux << ")";
    throw NotCompactonError(os.str());
  }
  if (sigma == 1.0) return record;

  const double a = params.alpha;
  const double b = params.beta;
  const double amp = std::pow(sigma, -2.0 / (1.0 - a));
  const double lambda_new = std::pow(sigma, 2.0 * (b - a) / (1.0 - a)) * record.lambda;

  const auto& u = record.field.values;
  const int N = grid.n_nodes;
  const double R = grid.params.radius;
  const double h = grid.spacing;
  std::vector<double> w(N, 0.0);
  for (int i = 0; i < N; ++i) {
    const double x = sigma * grid.node_radii[i];
    if (x > R) continue;
    const double pos = x / h;
    int j = static_cast<int>(pos);
    if (j >= N - 1) j = N - 2;
    const double f = pos - j;
    w[i] = amp * ((1.0 - f) * u[j] + f * u[j + 1]);
  }
  return make_record(grid, params, lambda_new, make_field(grid, std::move(w)),
                     record.converged, 0, tol_flux);
}

Field torsion_function(const RadialGrid& grid) {
  return solve_shifted_poisson(grid, std::vector<double>(grid.n_nodes, 1.0), 0.0);
}

double supersolution_bound(const ParamSet& params, double lambda, double e_max, double margin) {
  if (!(lambda > 0.0) || !(e_max > 0.0)) throw Error("supersolution_bound needs lambda, e_max > 0");
  const double b = params.beta;
  return std::pow(lambda * std::pow(e_max, b), 1.0 / (1.0 - b)) * (1.0 + margin);
}

double default_monotone_shift(const ParamSet& params, double lambda, double amplitude) {
  if (!(amplitude > 0.0)) throw Error("default_monotone_shift needs a positive amplitude");
  const double a = params.alpha;
  const double b = params.beta;
  const auto fprime = [&](double s) {
    return lambda * b * std::pow(s, b - 1.0) - a * std::pow(s, a - 1.0);
  };
  const double lo = 1e-6 * amplitude;
  double K = std::max(std::abs(fprime(lo)), std::abs(fprime(amplitude)));
  // interior extremum of f' (zero of f'')
  const double sc = std::pow(a * (1.0 - a) / (lambda * b * (1.0 - b)), 1.0 / (b - a));
  if (sc > lo && sc < amplitude) K = std::max(K, std::abs(fprime(sc)));
  return K;
}

SolutionRecord monotone_iterate(const RadialGrid& grid, const ParamSet& params, double lambda,
                                const Field& sub, double shift, double tol,
                                const MonotoneOptions& opts) {
  if (!(lambda > 0.0)) throw Error("monotone_iterate needs lambda > 0");
  if (shift < 0.0) throw Error("monotone_iterate needs shift K >= 0");
  if (!(tol > 0.0)) throw Error("monotone_iterate needs tol > 0");
  if (static_cast<int>(sub.values.size()) != grid.n_nodes) {
    throw LengthMismatchError("sub-solution does not match grid");
  }

  const int N = grid.n_nodes;
  const Field e = torsion_function(grid);
  const double e_max = *std::max_element(e.values.begin(), e.values.end());
  double M = supersolution_bound(params, lambda, e_max);
  for (int i = 0; i < N; ++i) {
    if (e.values[i] > 0.0 && sub.values[i] > 0.0) {
      M = std::max(M, 1.05 * sub.values[i] / e.values[i]);
    }
  }

  Field u = e;
  for (auto& x : u.values) x *= M;

  std::vector<double> rhs(N, 0.0);
  long it = 0;
  for (; it < opts.max_iters; ++it) {
    for (int i = 0; i + 1 < N; ++i) {
      rhs[i] = nonlinearity(params, lambda, u.values[i]) + shift * u.values[i];
    }
    rhs[N - 1] = 0.0;
    Field next = solve_shifted_poisson(grid, rhs, shift);

    double rise = 0.0;
    for (int i = 0; i < N; ++i) rise = std::max(rise, next.values[i] - u.values[i]);
    if (rise > tol * opts.monotone_slack) {
      std::ostringstream os;
      os << "monotone iteration lost ordering at iteration " << it << ": pointwise rise " << rise
         << " exceeds tol " << tol * opts.monotone_slack;
      throw MonotonicityLostError(os.str(), it, rise);
    }

    std::vector<double> diff(N);
    for (int i = 0; i < N; ++i) diff[i] = next.values[i] - u.values[i];
    const double dn = weighted_norm(grid, diff);
    u = std::move(next);

    if (dn < tol && weak_residual(grid, params, lambda, u) <= 9.0 * tol) break;
  }
  if (it >= opts.max_iters) {
    std::ostringstream os;
    os << "monotone iteration did not reach tolerance " << tol << " within " << opts.max_iters
       << " iterations (K=" << shift << ")";
    throw NotConvergedError(os.str());
  }

  SolutionRecord rec = make_record(grid, params, lambda, std::move(u), true, it, opts.tol_flux);
  double worst = 0.0;
  for (int i = 0; i < N; ++i) worst = std::min(worst, rec.field.values[i] - sub.values[i]);
  std::ostringstream os;
  os << "monotone iterate: min(w - sub) = " << worst << ", K = " << shift;
  rec.note = os.str();
  return rec;
}

double weak_residual(const RadialGrid& grid, const ParamSet& params, double lambda,
                     const Field& field) {
  auto r = apply_shifted_operator(grid, field, 0.0);
  const int N = grid.n_nodes;
  for (int i = 0; i + 1 < N; ++i) r[i] -= nonlinearity(params, lambda, field.values[i]);
  r[N - 1] = 0.0;
  return weighted_norm(grid, r);
}

}  // namespace clab
