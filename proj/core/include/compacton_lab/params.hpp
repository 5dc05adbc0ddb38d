#pragma once

#include "compacton_lab/errors.hpp"

namespace clab {

/// Problem parameters for  -Δu = λ|u|^{β-1}u - |u|^{α-1}u  on the ball of
/// radius `radius` in R^dim with zero Dirichlet data.  The exponents must
/// satisfy 0 < alpha < beta < 1; λ is carried per operation, not here.
struct ParamSet {
  double alpha = 0.1;
  double beta = 0.2;
  int dim = 4;
  double radius = 1.0;
};

/// Checks 0 < alpha < beta < 1, dim >= 1, radius > 0 and returns the set.
/// Throws InvalidExponentsError / InvalidDimensionError / InvalidRadiusError.
ParamSet validate_params(double alpha, double beta, int dim, double radius = 1.0);

/// theta = 2(1+α)(1+β) - n(1-α)(1-β).  theta < 0 is the dimension condition
/// under which the (Q, L, P) system is overdetermined and compactons can be
/// detected through the Pohozaev functional.
double theta(const ParamSet& p);

/// Real dimension at which theta crosses zero: 2(1+α)(1+β)/((1-α)(1-β)).
double theta_zero_dim(const ParamSet& p);

/// Closed-form constants of the fiber spectral points:
///   λ0(u) = c0 λ(u)  solves  {Q=0, E=0}  along the ray t·u,
///   λ1(u) = c1 λ(u)  solves  {Q=0, L=0}  (double fiber root).
/// Always c1 < c0, so the feasibility threshold sits below the zero-energy
/// threshold.
struct FiberConstants {
  double c0;
  double c1;
};

FiberConstants fiber_constants(const ParamSet& p);

/// 2* = 2n/(n-2).  Throws DimensionTooLowError for dim < 3.
double critical_exponent(const ParamSet& p);

/// Conjugate exponents used in the interpolation bound
///   B(u) <= (∫|u|^{2*})^{1/q} A(u)^{1/p}:
///   gamma = (1+α)(2*-1-β)/(2*-1-α),  p = (1+α)/gamma,  q = 2*/(1+β-gamma).
/// 1/p + 1/q = 1 holds identically.
struct HolderExponents {
  double gamma;
  double p;
  double q;
};

HolderExponents holder_exponents(const ParamSet& p);

}  // namespace clab
