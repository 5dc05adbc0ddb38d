#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "compacton_lab/grid.hpp"

namespace clab::detail {

/// Limited-memory BFGS history over the grid's weighted inner product.
/// Curvature pairs that fail the positivity guard are dropped.
class LbfgsMemory {
 public:
  explicit LbfgsMemory(int capacity = 10) : cap_(capacity) {}

  void clear() {
    s_.clear();
    y_.clear();
    rho_.clear();
  }

  bool empty() const { return s_.empty(); }

  void push(const RadialGrid& grid, std::vector<double> s, std::vector<double> y) {
    const double sy = weighted_dot(grid, s, y);
    const double ss = weighted_dot(grid, s, s);
    const double yy = weighted_dot(grid, y, y);
    if (!(sy > 1e-12 * std::sqrt(ss * yy))) return;
    if (static_cast<int>(s_.size()) == cap_) {
      s_.erase(s_.begin());
      y_.erase(y_.begin());
      rho_.erase(rho_.begin());
    }
    rho_.push_back(1.0 / sy);
    s_.push_back(std::move(s));
    y_.push_back(std::move(y));
  }

  /// Two-loop recursion; apply_h0 realizes the base preconditioner.
  template <class ApplyH0>
  std::vector<double> direction(const RadialGrid& grid, std::vector<double> g,
                                ApplyH0&& apply_h0) const {
    const int k = static_cast<int>(s_.size());
    std::vector<double> alpha(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      alpha[i] = rho_[i] * weighted_dot(grid, s_[i], g);
      for (std::size_t j = 0; j < g.size(); ++j) g[j] -= alpha[i] * y_[i][j];
    }
    std::vector<double> r = apply_h0(std::move(g));
    for (int i = 0; i < k; ++i) {
      const double beta = rho_[i] * weighted_dot(grid, y_[i], r);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] += (alpha[i] - beta) * s_[i][j];
    }
    return r;
  }

 private:
  int cap_;
  std::vector<std::vector<double>> s_, y_;
  std::vector<double> rho_;
};

}  // namespace clab::detail
