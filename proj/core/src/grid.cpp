#include "compacton_lab/grid.hpp"

#include <cmath>
#include <string>

namespace clab {

namespace {

double ipow(double x, int k) {
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= x;
  return acc;
}

}  // namespace

RadialGrid build_grid(const ParamSet& params, int n_nodes) {
  if (n_nodes < 16) {
    throw GridTooCoarseError("need at least 16 radial nodes, got " + std::to_string(n_nodes));
  }
  RadialGrid g;
  g.params = params;
  g.n_nodes = n_nodes;
  const int n = params.dim;
  const double R = params.radius;
  g.spacing = R / (n_nodes - 1);
  g.sphere_area = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);

  g.node_radii.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) g.node_radii[i] = (i * R) / (n_nodes - 1);

  // Hat-function moments of r^{n-1} dr over each cell: exact for piecewise
  // linear integrands, so the weights sum to the ball volume exactly.
  g.quad_weights.assign(n_nodes, 0.0);
  g.cell_moments.assign(n_nodes - 1, 0.0);
  for (int i = 0; i + 1 < n_nodes; ++i) {
    const double rl = g.node_radii[i];
    const double rr = g.node_radii[i + 1];
    const double dr = rr - rl;
    const double m0 = (ipow(rr, n) - ipow(rl, n)) / n;
    const double m1 = (ipow(rr, n + 1) - ipow(rl, n + 1)) / (n + 1);
    g.cell_moments[i] = g.sphere_area * m0;
    g.quad_weights[i] += g.sphere_area * (rr * m0 - m1) / dr;
    g.quad_weights[i + 1] += g.sphere_area * (m1 - rl * m0) / dr;
  }
  return g;
}

Field make_field(const RadialGrid& grid, std::vector<double> values) {
  if (static_cast<int>(values.size()) != grid.n_nodes) {
    throw LengthMismatchError("field length " + std::to_string(values.size()) +
                              " does not match grid with " + std::to_string(grid.n_nodes) +
                              " nodes");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("field contains a non-finite value");
  }
  values.back() = 0.0;
  return Field{&grid, std::move(values)};
}

Field zero_field(const RadialGrid& grid) {
  return Field{&grid, std::vector<double>(grid.n_nodes, 0.0)};
}

double integrate(const RadialGrid& grid, const std::vector<double>& samples) {
  if (samples.size() != grid.quad_weights.size()) {
    throw LengthMismatchError("integrand length " + std::to_string(samples.size()) +
                              " does not match grid with " + std::to_string(grid.n_nodes) +
                              " nodes");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) acc += grid.quad_weights[i] * samples[i];
  return acc;
}

double weighted_dot(const RadialGrid& grid, const std::vector<double>& a,
                    const std::vector<double>& b) {
  if (a.size() != grid.quad_weights.size() || b.size() != grid.quad_weights.size()) {
    throw LengthMismatchError("weighted_dot operand length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += grid.quad_weights[i] * a[i] * b[i];
  return acc;
}

double weighted_norm(const RadialGrid& grid, const std::vector<double>& a) {
  return std::sqrt(weighted_dot(grid, a, a));
}

std::vector<double> radial_derivative(const RadialGrid& grid, const Field& field) {
  const auto& u = field.values;
  if (static_cast<int>(u.size()) != grid.n_nodes) {
    throw LengthMismatchError("field does not match grid");
  }
  const int N = grid.n_nodes;
  const double h = grid.spacing;
  std::vector<double> du(N);
  du[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  for (int i = 1; i + 1 < N; ++i) du[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  du[N - 1] = (3.0 * u[N - 1] - 4.0 * u[N - 2] + u[N - 3]) / (2.0 * h);
  return du;
}

double boundary_flux_term(const RadialGrid& grid, const Field& field) {
  const int N = grid.n_nodes;
  const double h = grid.spacing;
  const auto& u = field.values;
  const double duR = (3.0 * u[N - 1] - 4.0 * u[N - 2] + u[N - 3]) / (2.0 * h);
  const int n = grid.params.dim;
  const double R = grid.params.radius;
  return duR * duR * ipow(R, n) * grid.sphere_area / (2.0 * n);
}

std::vector<double> apply_shifted_operator(const RadialGrid& grid, const Field& field,
                                           double shift) {
  const auto& u = field.values;
  if (static_cast<int>(u.size()) != grid.n_nodes) {
    throw LengthMismatchError("field does not match grid");
  }
  const int N = grid.n_nodes;
  const double h2 = grid.spacing * grid.spacing;
  const auto& cm = grid.cell_moments;
  const auto& w = grid.quad_weights;
  std::vector<double> out(N, 0.0);
  out[0] = cm[0] * (u[0] - u[1]) / (h2 * w[0]) + shift * u[0];
  for (int i = 1; i + 1 < N; ++i) {
    out[i] = (cm[i - 1] * (u[i] - u[i - 1]) + cm[i] * (u[i] - u[i + 1])) / (h2 * w[i]) +
             shift * u[i];
  }
  return out;
}

namespace {

Field solve_tridiagonal_shift(const RadialGrid& grid, const std::vector<double>& rhs,
                              const double* shift_scalar,
                              const std::vector<double>* shift_nodes) {
  const int N = grid.n_nodes;
  const double h2 = grid.spacing * grid.spacing;
  const auto& cm = grid.cell_moments;
  const auto& w = grid.quad_weights;
  const int m = N - 1;  // unknowns u_0 .. u_{N-2}; u_{N-1} = 0
  const auto shift_at = [&](int i) { return shift_scalar ? *shift_scalar : (*shift_nodes)[i]; };

  std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), b(m, 0.0);
  diag[0] = cm[0] / (h2 * w[0]) + shift_at(0);
  sup[0] = -cm[0] / (h2 * w[0]);
  b[0] = rhs[0];
  for (int i = 1; i < m; ++i) {
    sub[i] = -cm[i - 1] / (h2 * w[i]);
    diag[i] = (cm[i - 1] + cm[i]) / (h2 * w[i]) + shift_at(i);
    sup[i] = -cm[i] / (h2 * w[i]);
    b[i] = rhs[i];
  }

  // Thomas sweep
  const double tiny = 1e-300;
  std::vector<double> c(m, 0.0), d(m, 0.0);
  if (std::abs(diag[0]) < tiny) throw SingularSystemError("zero pivot in tridiagonal solve");
  c[0] = sup[0] / diag[0];
  d[0] = b[0] / diag[0];
  for (int i = 1; i < m; ++i) {
    const double piv = diag[i] - sub[i] * c[i - 1];
    if (std::abs(piv) < tiny) throw SingularSystemError("zero pivot in tridiagonal solve");
    c[i] = sup[i] / piv;
    d[i] = (b[i] - sub[i] * d[i - 1]) / piv;
  }

  std::vector<double> u(N, 0.0);
  u[m - 1] = d[m - 1];
  for (int i = m - 2; i >= 0; --i) u[i] = d[i] - c[i] * u[i + 1];
  u[N - 1] = 0.0;
  return Field{&grid, std::move(u)};
}

}  // namespace

Field solve_shifted_poisson(const RadialGrid& grid, const std::vector<double>& rhs,
                            double shift) {
  if (static_cast<int>(rhs.size()) != grid.n_nodes) {
    throw LengthMismatchError("rhs length does not match grid");
  }
  if (shift < 0.0) throw Error("shift K must be nonnegative");
  return solve_tridiagonal_shift(grid, rhs, &shift, nullptr);
}

Field solve_variable_shift(const RadialGrid& grid, const std::vector<double>& rhs,
                           const std::vector<double>& shift) {
  if (static_cast<int>(rhs.size()) != grid.n_nodes ||
      static_cast<int>(shift.size()) != grid.n_nodes) {
    throw LengthMismatchError("rhs/shift length does not match grid");
  }
  return solve_tridiagonal_shift(grid, rhs, nullptr, &shift);
}

}  // namespace clab
