#include "compacton_lab/functionals.hpp"

#include <cmath>

namespace clab {

FunctionalValues combine(const ParamSet& params, double lambda, double T, double A, double B) {
  FunctionalValues f;
  f.T = T;
  f.A = A;
  f.B = B;
  f.lambda = lambda;
  f.E = 0.5 * T - lambda * B / (1.0 + params.beta) + A / (1.0 + params.alpha);
  f.Q = T - lambda * B + A;
  f.L = T - lambda * params.beta * B + params.alpha * A;
  f.P = f.E - T / params.dim;
  return f;
}

double dirichlet_energy(const RadialGrid& grid, const Field& field) {
  const int N = grid.n_nodes;
  const double h2 = grid.spacing * grid.spacing;
  double T = 0.0;
  for (int i = 0; i + 1 < N; ++i) {
    const double d = field.values[i + 1] - field.values[i];
    T += grid.cell_moments[i] * d * d;
  }
  return T / h2;
}

FunctionalValues evaluate(const RadialGrid& grid, const ParamSet& params, double lambda,
                          const Field& field) {
  const int N = grid.n_nodes;
  double A = 0.0, B = 0.0;
  for (int i = 0; i < N; ++i) {
    const double w = grid.quad_weights[i];
    const double au = std::abs(field.values[i]);
    if (au > 0.0) {
      A += w * std::pow(au, 1.0 + params.alpha);
      B += w * std::pow(au, 1.0 + params.beta);
    }
  }
  return combine(params, lambda, dirichlet_energy(grid, field), A, B);
}

std::vector<double> dirichlet_half_gradient(const RadialGrid& grid, const Field& field) {
  const auto& u = field.values;
  const int N = grid.n_nodes;
  const double h2 = grid.spacing * grid.spacing;
  const auto& cm = grid.cell_moments;
  std::vector<double> g(N, 0.0);
  g[0] = cm[0] * (u[0] - u[1]) / (h2 * grid.quad_weights[0]);
  for (int i = 1; i + 1 < N; ++i) {
    g[i] = (cm[i - 1] * (u[i] - u[i - 1]) + cm[i] * (u[i] - u[i + 1])) /
           (h2 * grid.quad_weights[i]);
  }
  g[N - 1] = cm[N - 2] * (u[N - 1] - u[N - 2]) / (h2 * grid.quad_weights[N - 1]);
  return g;
}

std::vector<double> energy_gradient(const RadialGrid& grid, const ParamSet& params,
                                    double lambda, const Field& field) {
  auto g = dirichlet_half_gradient(grid, field);
  const int N = grid.n_nodes;
  for (int i = 0; i + 1 < N; ++i) {
    const double u = field.values[i];
    g[i] += signed_pow(u, params.alpha) - lambda * signed_pow(u, params.beta);
  }
  g[N - 1] = 0.0;
  return g;
}

double gradient_scale(const RadialGrid& grid, const FunctionalValues& vals, const Field& field) {
  const double mass = weighted_norm(grid, field.values);
  if (mass == 0.0) return 0.0;
  return (vals.T + std::abs(vals.lambda) * vals.B + vals.A) / mass;
}

double holder_check(const RadialGrid& grid, const ParamSet& params, const Field& field) {
  const auto he = holder_exponents(params);  // throws DimensionTooLowError for dim < 3
  const double ts = critical_exponent(params);
  const int N = grid.n_nodes;
  double A = 0.0, B = 0.0, S = 0.0;
  for (int i = 0; i < N; ++i) {
    const double w = grid.quad_weights[i];
    const double au = std::abs(field.values[i]);
    if (au > 0.0) {
      A += w * std::pow(au, 1.0 + params.alpha);
      B += w * std::pow(au, 1.0 + params.beta);
      S += w * std::pow(au, ts);
    }
  }
  return std::pow(S, 1.0 / he.q) * std::pow(A, 1.0 / he.p) - B;
}

}  // namespace clab
