#pragma once

#include <cstdint>
#include <vector>

#include "compacton_lab/grid.hpp"

namespace clab {

/// 64-bit linear congruential generator,
///   state <- state * 6364136223846793005 + 1442695040888963407  (mod 2^64),
/// uniform doubles taken as (state >> 11) * 2^-53.  The recurrence is fixed
/// so seeded test fields are reproducible across implementations.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Rough nodal field: independent uniforms in [0,1) at nodes 0..N-2 in
/// ascending order, zero at the boundary node.
inline Field random_field(const RadialGrid& grid, Lcg& rng) {
  std::vector<double> v(grid.n_nodes);
  for (int i = 0; i + 1 < grid.n_nodes; ++i) v[i] = rng.next_unit();
  v.back() = 0.0;
  return Field{&grid, std::move(v)};
}

/// Smooth nonnegative start for descent runs: bump times a squared cubic
/// with seeded coefficients.  Draws exactly four uniforms.
inline Field shaped_field(const RadialGrid& grid, Lcg& rng) {
  const double q0 = 0.3 + rng.next_unit();
  const double q1 = 1.5 * (rng.next_unit() - 0.5);
  const double q2 = 1.5 * (rng.next_unit() - 0.5);
  const double q3 = 1.5 * (rng.next_unit() - 0.5);
  const double R = grid.params.radius;
  std::vector<double> v(grid.n_nodes);
  for (int i = 0; i < grid.n_nodes; ++i) {
    const double x = grid.node_radii[i] / R;
    const double poly = q0 + x * (q1 + x * (q2 + x * q3));
    v[i] = (1.0 - x * x) * poly * poly;
  }
  v.back() = 0.0;
  return Field{&grid, std::move(v)};
}

/// The deterministic default start 1 - (r/R)^2.
inline Field bump_field(const RadialGrid& grid) {
  const double R = grid.params.radius;
  std::vector<double> v(grid.n_nodes);
  for (int i = 0; i < grid.n_nodes; ++i) {
    const double x = grid.node_radii[i] / R;
    v[i] = 1.0 - x * x;
  }
  v.back() = 0.0;
  return Field{&grid, std::move(v)};
}

}  // namespace clab
