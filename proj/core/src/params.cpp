#include "compacton_lab/params.hpp"

#include <cmath>
#include <string>

namespace clab {

ParamSet validate_params(double alpha, double beta, int dim, double radius) {
  if (!(alpha > 0.0) || !(beta < 1.0) || !(alpha < beta)) {
    throw InvalidExponentsError("exponents must satisfy 0 < alpha < beta < 1, got alpha=" +
                                std::to_string(alpha) + " beta=" + std::to_string(beta));
  }
  if (dim < 1) {
    throw InvalidDimensionError("dimension must be >= 1, got " + std::to_string(dim));
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidRadiusError("radius must be positive, got " + std::to_string(radius));
  }
  return ParamSet{alpha, beta, dim, radius};
}

double theta(const ParamSet& p) {
  return 2.0 * (1.0 + p.alpha) * (1.0 + p.beta) -
         static_cast<double>(p.dim) * (1.0 - p.alpha) * (1.0 - p.beta);
}

double theta_zero_dim(const ParamSet& p) {
  return 2.0 * (1.0 + p.alpha) * (1.0 + p.beta) / ((1.0 - p.alpha) * (1.0 - p.beta));
}

FiberConstants fiber_constants(const ParamSet& p) {
  const double a = p.alpha;
  const double b = p.beta;
  const double expo = (b - a) / (1.0 - a);
  const double c0 = (1.0 - a) * (1.0 + b) / ((1.0 - b) * (1.0 + a)) *
                    std::pow((1.0 + a) * (1.0 - b) / (2.0 * (b - a)), expo);
  const double c1 = (1.0 - a) / (1.0 - b) * std::pow((1.0 - b) / (b - a), expo);
  return FiberConstants{c0, c1};
}

double critical_exponent(const ParamSet& p) {
  if (p.dim < 3) {
    throw DimensionTooLowError("critical exponent 2n/(n-2) needs dim >= 3, got " +
                               std::to_string(p.dim));
  }
  return 2.0 * p.dim / (p.dim - 2.0);
}

HolderExponents holder_exponents(const ParamSet& p) {
  const double ts = critical_exponent(p);
  const double a = p.alpha;
  const double b = p.beta;
  const double gamma = (1.0 + a) * (ts - 1.0 - b) / (ts - 1.0 - a);
  return HolderExponents{gamma, (1.0 + a) / gamma, ts / (1.0 + b - gamma)};
}

}  // namespace clab
