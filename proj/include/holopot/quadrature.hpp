#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "holopot/error.hpp"

namespace holopot {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendreRule compute_gauss_legendre(unsigned k) {
  GaussLegendreRule rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  for (unsigned i = 0; i < (k + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Three-term recurrence for P_k(x) and its derivative.
      double p0 = 1.0, p1 = x;
      for (unsigned j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Refresh derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (unsigned j = 2; j <= k; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = k * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[k - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[k - 1 - i] = w;
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.0;
  return rule;
}

}  // namespace detail

/// k-point Gauss-Legendre rule, exact for polynomials of degree <= 2k-1.
/// Rules are cached per process.
inline const GaussLegendreRule& gauss_legendre(unsigned k) {
  if (k < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[k];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(detail::compute_gauss_legendre(k));
  return *slot;
}

/// Pairwise (cascade) summation; the result depends only on the order of `xs`.
template <class T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.empty()) return T{};
  if (xs.size() <= 8) {
    T s = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) s += xs[i];
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace holopot
