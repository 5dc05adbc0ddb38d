#include "compacton_lab/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "compacton_lab/parallel.hpp"
#include "compacton_lab/rng.hpp"
#include "quasi_newton.hpp"

namespace clab {

namespace {

void require_positive(double T, double A, double B) {
  if (!(T > 0.0) || !(A > 0.0) || !(B > 0.0)) {
    throw DegenerateFieldError("fiber analysis needs T, A, B > 0");
  }
}

}  // namespace

double lambda_of(double T, double A, double B, const ParamSet& params) {
  require_positive(T, A, B);
  const double a = params.alpha;
  const double b = params.beta;
  return std::pow(A, (1.0 - b) / (1.0 - a)) * std::pow(T, (b - a) / (1.0 - a)) / B;
}

double t_zero(double T, double A, const ParamSet& params) {
  if (!(T > 0.0) || !(A > 0.0)) {
    throw DegenerateFieldError("t_zero needs T, A > 0");
  }
  const double a = params.alpha;
  const double b = params.beta;
  return std::pow(2.0 * (b - a) * A / ((1.0 + a) * (1.0 - b) * T), 1.0 / (1.0 - a));
}

double lambda0_of(double T, double A, double B, const ParamSet& params) {
  return fiber_constants(params).c0 * lambda_of(T, A, B, params);
}

double lambda1_of(double T, double A, double B, const ParamSet& params) {
  return fiber_constants(params).c1 * lambda_of(T, A, B, params);
}

double fiber_psi(double t, double T, double A, double B, double lambda,
                 const ParamSet& params) {
  const double a = params.alpha;
  const double b = params.beta;
  return std::pow(t, 1.0 - a) * T - lambda * std::pow(t, b - a) * B + A;
}

namespace {

double bisect_psi(double lo, double hi, bool rising, double T, double A, double B,
                  double lambda, const ParamSet& params) {
  // rising: psi(lo) < 0 < psi(hi); otherwise psi(lo) > 0 > psi(hi).
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double pm = fiber_psi(mid, T, A, B, lambda, params);
    const bool positive = pm > 0.0;
    if (positive == rising) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= 1e-16 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FiberRoots fiber_roots(double T, double A, double B, double lambda, const ParamSet& params) {
  require_positive(T, A, B);
  if (!(lambda > 0.0)) {
    throw DegenerateFieldError("fiber_roots needs lambda > 0");
  }
  const double a = params.alpha;
  const double b = params.beta;

  FiberRoots out;
  out.t_min = std::pow(lambda * (b - a) * B / ((1.0 - a) * T), 1.0 / (1.0 - b));
  out.psi_min = fiber_psi(out.t_min, T, A, B, lambda, params);

  const double scale = T + lambda * B + A;
  const double tol_root = 1e-8 * scale;
  if (out.psi_min > tol_root) {
    return out;  // fiber map has no critical points
  }
  if (out.psi_min >= -tol_root) {
    out.t1 = out.t_min;
    out.t2 = out.t_min;
    out.double_root = true;
    return out;
  }

  double tl = out.t_min;
  while (tl > 1e-300 && fiber_psi(tl, T, A, B, lambda, params) <= 0.0) tl *= 0.5;
  out.t1 = bisect_psi(tl, out.t_min, /*rising=*/false, T, A, B, lambda, params);

  double th = out.t_min;
  while (th < 1e300 && fiber_psi(th, T, A, B, lambda, params) <= 0.0) th *= 2.0;
  out.t2 = bisect_psi(out.t_min, th, /*rising=*/true, T, A, B, lambda, params);
  return out;
}

// ---------------------------------------------------------------------------
// Spectral minimization of λ(u)
// ---------------------------------------------------------------------------

namespace {

struct RayScalars {
  double T = 0.0, A = 0.0, B = 0.0;
  double lam = 0.0;  // λ(u)
  double F = 0.0;    // log λ(u)
  std::vector<double> pa, pb;  // signed_pow(v, alpha), signed_pow(v, beta)
};

struct DescentState {
  Field v;
  RayScalars s;
  long iterations = 0;
  bool converged = false;
  bool cap_reached = false;
  bool valid = false;
};

bool normalize_cone(const RadialGrid& grid, Field& v) {
  auto& x = v.values;
  const int N = grid.n_nodes;
  for (int i = 0; i < N; ++i) {
    if (!std::isfinite(x[i])) return false;
    if (x[i] < 0.0) x[i] = 0.0;
  }
  x[N - 1] = 0.0;
  const auto du = radial_derivative(grid, v);
  double T = 0.0;
  for (int i = 0; i < N; ++i) T += grid.quad_weights[i] * du[i] * du[i];
  if (!(T > 0.0) || !std::isfinite(T)) return false;
  const double inv = 1.0 / std::sqrt(T);
  for (int i = 0; i < N; ++i) x[i] *= inv;
  return true;
}

bool ray_scalars(const RadialGrid& grid, const ParamSet& params, const Field& v, RayScalars& s) {
  const auto du = radial_derivative(grid, v);
  const int N = grid.n_nodes;
  s.pa.resize(N);
  s.pb.resize(N);
  double T = 0.0, A = 0.0, B = 0.0;
  for (int i = 0; i < N; ++i) {
    const double w = grid.quad_weights[i];
    const double u = v.values[i];
    s.pa[i] = signed_pow(u, params.alpha);
    s.pb[i] = signed_pow(u, params.beta);
    T += w * du[i] * du[i];
    A += w * s.pa[i] * u;
    B += w * s.pb[i] * u;
  }
  if (!(T > 0.0) || !(A > 0.0) || !(B > 0.0)) return false;
  s.T = T;
  s.A = A;
  s.B = B;
  s.lam = lambda_of(T, A, B, params);
  s.F = std::log(s.lam);
  return std::isfinite(s.F);
}

/// Gradient density of log λ(v) in the weighted inner product.
std::vector<double> log_lambda_gradient(const RadialGrid& grid, const ParamSet& params,
                                        const Field& v, const RayScalars& s,
                                        const std::vector<double>& dhg) {
  (void)v;
  const double a = params.alpha;
  const double b = params.beta;
  const double pA = (1.0 - b) / (1.0 - a);
  const double pT = (b - a) / (1.0 - a);
  const int N = grid.n_nodes;
  std::vector<double> g(N, 0.0);
  for (int i = 0; i + 1 < N; ++i) {
    g[i] = pA * (1.0 + a) * s.pa[i] / s.A + pT * 2.0 * dhg[i] / s.T -
           (1.0 + b) * s.pb[i] / s.B;
  }
  return g;
}

double projected_gradient_norm(const RadialGrid& grid, const Field& v,
                               const std::vector<double>& g, const std::vector<double>& normal) {
  const int N = grid.n_nodes;
  const double gn = weighted_dot(grid, g, normal);
  const double nn = weighted_dot(grid, normal, normal);
  const double coef = nn > 0.0 ? gn / nn : 0.0;
  double acc = 0.0;
  for (int i = 0; i + 1 < N; ++i) {
    double pg = g[i] - coef * normal[i];
    if (v.values[i] == 0.0 && pg > 0.0) pg = 0.0;  // active nonnegativity bound
    acc += grid.quad_weights[i] * pg * pg;
  }
  return std::sqrt(acc);
}

/// Shared projected-descent loop on log λ(v).  When `cap` is finite the run
/// stops as soon as λ1(v) = c1 λ(v) drops to `cap` or below.
///
/// Steps follow the Sobolev gradient (-Δ + 1/R²)⁻¹ g instead of the raw
/// density g: the raw direction makes the iteration count grow like the
/// square of the mesh resolution, the preconditioned one is mesh-independent.
/// Convergence is still declared on the raw projected gradient norm.
DescentState descend_log_lambda(const RadialGrid& grid, const ParamSet& params, Field start,
                                const SpectralOptions& opts, double cap) {
  DescentState st;
  st.v = std::move(start);
  if (!normalize_cone(grid, st.v) || !ray_scalars(grid, params, st.v, st.s)) {
    return st;  // valid stays false
  }
  st.valid = true;

  const double c1 = fiber_constants(params).c1;
  const bool has_cap = std::isfinite(cap);
  const int N = grid.n_nodes;
  const double a = params.alpha;
  const double b = params.beta;
  const double pA = (1.0 - b) / (1.0 - a);
  const double pT = (b - a) / (1.0 - a);
  const double shift_floor = 1.0 / (grid.params.radius * grid.params.radius);
  const double shift_cap = 1e14;

  double window_F = st.s.F;
  bool flat = false;

  // Limited-memory BFGS over the preconditioner M = (2 pT/T)(-Δ) + clamped
  // diagonal of the Hessian of log λ, safeguarded by backtracking on F
  // decrease.
  detail::LbfgsMemory lbfgs(10);
  std::vector<double> prev_v, prev_grad;
  std::vector<double> shift(N, 0.0), scaled_g(N, 0.0);

  for (long it = 0; it < opts.max_iters; ++it) {
    st.iterations = it;
    if (has_cap && c1 * st.s.lam <= cap) {
      st.cap_reached = true;
      return st;
    }

    auto dhg = dirichlet_half_gradient(grid, st.v);
    dhg[N - 1] = 0.0;
    auto g = log_lambda_gradient(grid, params, st.v, st.s, dhg);
    std::vector<double> normal(N, 0.0);
    for (int i = 0; i + 1 < N; ++i) normal[i] = 2.0 * dhg[i];

    const double pg_norm = projected_gradient_norm(grid, st.v, g, normal);
    if (it > 0 && it % opts.flat_window == 0) {
      flat = (window_F - st.s.F) < opts.tol_decrease * std::max(1.0, std::abs(st.s.F));
      window_F = st.s.F;
    }
    if (flat && pg_norm <= opts.tol_grad * (1.0 + std::abs(st.s.F))) {
      st.converged = true;
      return st;
    }

    const double cT = 2.0 * pT / st.s.T;
    for (int i = 0; i + 1 < N; ++i) {
      const double vi = st.v.values[i];
      double d = shift_cap;
      if (vi > 0.0) {
        d = (pA * (1.0 + a) * a * st.s.pa[i] / vi / st.s.A -
             (1.0 + b) * b * st.s.pb[i] / vi / st.s.B) /
            cT;
      }
      shift[i] = std::clamp(d, shift_floor, shift_cap);
    }
    shift[N - 1] = shift_floor;
    const auto apply_h0 = [&](std::vector<double> q) {
      for (int i = 0; i < N; ++i) scaled_g[i] = q[i] / cT;
      scaled_g[N - 1] = 0.0;
      return solve_variable_shift(grid, scaled_g, shift).values;
    };

    if (!prev_v.empty()) {
      std::vector<double> s(N), y(N);
      for (int i = 0; i < N; ++i) {
        s[i] = st.v.values[i] - prev_v[i];
        y[i] = g[i] - prev_grad[i];
      }
      lbfgs.push(grid, std::move(s), std::move(y));
    }
    prev_v = st.v.values;
    prev_grad = g;

    auto dir = lbfgs.direction(grid, g, apply_h0);
    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      double step = 1.0;
      for (int half = 0; half < 60; ++half) {
        Field trial = st.v;
        for (int i = 0; i + 1 < N; ++i) trial.values[i] -= step * dir[i];
        RayScalars ts;
        if (normalize_cone(grid, trial) && ray_scalars(grid, params, trial, ts) &&
            ts.F < st.s.F) {
          st.v = std::move(trial);
          st.s = std::move(ts);
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted && attempt == 0 && !lbfgs.empty()) {
        lbfgs.clear();  // retry once along the plain preconditioned gradient
        dir = apply_h0(g);
      }
    }
    if (!accepted) {
      st.converged = pg_norm <= opts.tol_grad * (1.0 + std::abs(st.s.F));
      return st;
    }
  }
  return st;  // max_iters exhausted, converged stays false
}

}  // namespace

FeasibilityResult descend_to_feasibility(const RadialGrid& grid, const ParamSet& params,
                                         Field start, double lambda_cap, long max_iters) {
  SpectralOptions opts;
  opts.max_iters = max_iters;
  DescentState st = descend_log_lambda(grid, params, std::move(start), opts, lambda_cap);
  FeasibilityResult out;
  out.reached = st.valid && st.cap_reached;
  if (st.valid) out.v = std::move(st.v);
  return out;
}

SpectralResult minimize_spectral(const RadialGrid& grid, const ParamSet& params,
                                 const SpectralOptions& opts) {
  std::vector<Field> starts;
  starts.push_back(bump_field(grid));
  Lcg rng(opts.seed);
  for (int k = 0; k < opts.starts; ++k) starts.push_back(shaped_field(grid, rng));

  std::vector<DescentState> runs(starts.size());
  parallel_for_index(
      starts.size(),
      [&](std::size_t i) {
        runs[i] = descend_log_lambda(grid, params, std::move(starts[i]), opts,
                                     std::numeric_limits<double>::quiet_NaN());
      },
      opts.parallel ? 0 : 1);

  int best = -1;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i].valid) continue;
    if (best < 0 || runs[i].s.F < runs[best].s.F) best = static_cast<int>(i);
  }
  if (best < 0) {
    throw DegenerateFieldError("all spectral starts degenerate");
  }

  const auto fc = fiber_constants(params);
  SpectralResult res;
  res.inf_lambda = runs[best].s.lam;
  res.Lambda0 = fc.c0 * res.inf_lambda;
  res.Lambda1 = fc.c1 * res.inf_lambda;
  res.argmin_field = std::move(runs[best].v);
  res.iterations = runs[best].iterations;
  res.converged = runs[best].converged;
  res.note = "search restricted to radial nonnegative profiles";
  if (params.dim < 3) {
    res.note += "; dim < 3: positivity of the spectral points is outside the proven range";
  }
  return res;
}

}  // namespace clab
