#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holopot/domain.hpp"
#include "holopot/quadrature.hpp"

namespace holopot {

using ScalarCallback = std::function<cdouble(std::span<const cdouble>)>;
using FieldCallback = std::function<FloatPoint(std::span<const cdouble>)>;

/// A holomorphic field known only through evaluation. Holomorphy on the
/// open domain is the caller's promise; nothing here can prove it.
struct BlackBoxField {
  std::size_t dimension = 1;
  FieldCallback eval;
  BallDomain domain = BallDomain::unit(1);
};

template <Coefficient C>
BlackBoxField wrap_field(const PolyField<C>& F, std::optional<BallDomain> domain = std::nullopt) {
  auto G = std::make_shared<const FloatField>(to_float(F));
  BlackBoxField out;
  out.dimension = F.dimension();
  out.domain = domain.value_or(BallDomain::unit(F.dimension()));
  out.eval = [G](std::span<const cdouble> z) { return eval_numeric(*G, z); };
  return out;
}

template <Coefficient C>
ScalarCallback wrap_scalar(const Poly<C>& p) {
  auto q = std::make_shared<const FloatPoly>(to_float(p));
  return [q](std::span<const cdouble> z) { return eval_numeric(*q, z); };
}

struct QuadratureConfig {
  unsigned initial_nodes = 32;
  unsigned max_doublings = 6;
  double tolerance = 1e-10;

  void validate() const {
    if (initial_nodes < 2) throw InvalidArgument("quadrature needs at least 2 initial nodes");
    if (!(tolerance > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  }
};

class NoConvergence : public Error {
 public:
  NoConvergence(cdouble previous, cdouble last)
      : Error("quadrature did not converge: last two estimates differ by " +
              std::to_string(std::abs(last - previous))),
        previous_(previous),
        last_(last) {}

  cdouble previous() const { return previous_; }
  cdouble last() const { return last_; }

 private:
  cdouble previous_;
  cdouble last_;
};

namespace detail {

inline void check_point(const BlackBoxField& F, std::span<const cdouble> z, const char* what) {
  if (z.size() != F.dimension) throw DimensionMismatch(std::string(what) + " has wrong length");
  if (!F.domain.contains(z)) throw DomainViolation(std::string(what) + " lies outside the open domain");
}

}  // namespace detail

/// g(z) = int_0^1 sum_j F_j(a + t(z - a)) (z_j - a_j) dt by Gauss-Legendre,
/// doubling the node count until two successive estimates agree to within
/// tolerance * max(1, |estimate|).
inline cdouble quad_reconstruct(const BlackBoxField& F, std::span<const cdouble> a,
                                std::span<const cdouble> z, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  detail::check_point(F, a, "star center");
  detail::check_point(F, z, "evaluation point");
  const std::size_t n = F.dimension;
  FloatPoint w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = z[k] - a[k];

  auto estimate = [&](unsigned nodes) {
    const GaussLegendreRule& rule = gauss_legendre(nodes);
    std::vector<cdouble> terms(nodes);
    FloatPoint x(n);
    for (unsigned i = 0; i < nodes; ++i) {
      const double t = 0.5 * (rule.nodes[i] + 1.0);
      for (std::size_t k = 0; k < n; ++k) x[k] = a[k] + t * w[k];
      const FloatPoint Fx = F.eval(x);
      if (Fx.size() != n) throw DimensionMismatch("black-box field returned wrong length");
      cdouble s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += Fx[k] * w[k];
      terms[i] = 0.5 * rule.weights[i] * s;
    }
    return pairwise_sum<cdouble>(terms);
  };

  unsigned nodes = cfg.initial_nodes;
  cdouble previous = estimate(nodes);
  for (unsigned d = 0; d < cfg.max_doublings; ++d) {
    nodes *= 2;
    const cdouble last = estimate(nodes);
    if (std::abs(last - previous) < cfg.tolerance * std::max(1.0, std::abs(last))) return last;
    if (d + 1 == cfg.max_doublings) throw NoConvergence(previous, last);
    previous = last;
  }
  return previous;
}

enum class DerivativeScheme { central_difference, cauchy_circle };

namespace detail {

// Largest power of two <= h, so that the stencil offsets z +- h, z +- 2h are
// exact and linear functions differentiate without rounding error.
inline double stencil_step(double h) { return std::ldexp(1.0, std::ilogb(h)); }

template <class V>
V central_difference(const V& p2, const V& p1, const V& m1, const V& m2, double h) {
  return (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
}

}  // namespace detail

/// Fourth-order central difference along the real axis of z_{k+1}:
///   (8 (f(z+h) - f(z-h)) - (f(z+2h) - f(z-2h))) / (12 h),   error O(h^4).
/// The step is rounded down to a power of two.
inline cdouble numeric_partial(const ScalarCallback& f, std::span<const cdouble> z, std::size_t k, double h) {
  if (k >= z.size()) throw IndexOutOfRange("numeric_partial: variable index out of range");
  if (!(h > 0.0)) throw InvalidArgument("numeric_partial: step must be positive");
  h = detail::stencil_step(h);
  FloatPoint x(z.begin(), z.end());
  auto at = [&](double s) {
    x[k] = z[k] + s;
    return f(x);
  };
  return detail::central_difference(at(2 * h), at(h), at(-h), at(-2 * h), h);
}

/// Eight-point trapezoid rule for the Cauchy integral on a circle of radius
/// rho around z in the z_{k+1} plane. Exact for polynomials of degree <= 8 in
/// that variable.
inline cdouble cauchy_partial(const ScalarCallback& f, std::span<const cdouble> z, std::size_t k, double rho) {
  if (k >= z.size()) throw IndexOutOfRange("cauchy_partial: variable index out of range");
  if (!(rho > 0.0)) throw InvalidArgument("cauchy_partial: radius must be positive");
  constexpr int kPoints = 8;
  FloatPoint x(z.begin(), z.end());
  cdouble s = 0.0;
  for (int j = 0; j < kPoints; ++j) {
    const cdouble omega = std::polar(1.0, 2.0 * std::numbers::pi * j / kPoints);
    x[k] = z[k] + rho * omega;
    s += f(x) / omega;
  }
  return s / (kPoints * rho);
}

inline constexpr double kStepPerMargin = 1e-4;
inline constexpr double kCauchyRadiusPerMargin = 0.25;

/// Partial derivative with the step chosen from the distance to the boundary
/// (h = 1e-4 * margin, or a Cauchy circle of radius margin/4).
inline cdouble numeric_partial(const ScalarCallback& f, std::span<const cdouble> z, std::size_t k,
                               const BallDomain& domain,
                               DerivativeScheme scheme = DerivativeScheme::central_difference) {
  const double margin = domain.margin(z);
  if (!(margin > 0.0)) throw MarginViolation("numeric_partial: point is not interior");
  if (scheme == DerivativeScheme::cauchy_circle) {
    return cauchy_partial(f, z, k, kCauchyRadiusPerMargin * margin);
  }
  return numeric_partial(f, z, k, kStepPerMargin * margin);
}

/// Central difference with an explicit step; the stencil must fit in the domain.
inline cdouble numeric_partial(const ScalarCallback& f, std::span<const cdouble> z, std::size_t k,
                               const BallDomain& domain, double h) {
  if (!(domain.margin(z) > 2.0 * h)) throw MarginViolation("numeric_partial: stencil leaves the domain");
  return numeric_partial(f, z, k, h);
}

/// Column k of the numeric Jacobian: dF_j/dz_k for all j.
inline FloatPoint numeric_jacobian_column(const BlackBoxField& F, std::span<const cdouble> z, std::size_t k,
                                          DerivativeScheme scheme = DerivativeScheme::central_difference) {
  const std::size_t n = F.dimension;
  const double margin = F.domain.margin(z);
  if (!(margin > 0.0)) throw MarginViolation("numeric_jacobian_column: point is not interior");
  FloatPoint x(z.begin(), z.end());
  auto at = [&](cdouble shift) {
    x[k] = z[k] + shift;
    FloatPoint v = F.eval(x);
    if (v.size() != n) throw DimensionMismatch("black-box field returned wrong length");
    return v;
  };
  FloatPoint col(n);
  if (scheme == DerivativeScheme::cauchy_circle) {
    const double rho = kCauchyRadiusPerMargin * margin;
    for (int i = 0; i < 8; ++i) {
      const cdouble omega = std::polar(1.0, 2.0 * std::numbers::pi * i / 8);
      const FloatPoint v = at(rho * omega);
      for (std::size_t j = 0; j < n; ++j) col[j] += v[j] / omega;
    }
    for (auto& c : col) c /= 8.0 * rho;
  } else {
    const double h = detail::stencil_step(kStepPerMargin * margin);
    const FloatPoint p2 = at(2 * h), p1 = at(h), m1 = at(-h), m2 = at(-2 * h);
    for (std::size_t j = 0; j < n; ++j) col[j] = detail::central_difference(p2[j], p1[j], m1[j], m2[j], h);
  }
  return col;
}

struct NumericExactnessReport {
  static constexpr double kTolerance = 1e-6;

  bool exact = true;  // exact at tolerance
  double max_residual = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  FloatPoint witness;
  std::size_t pairs = 0;
  SampleConfig samples;
  DerivativeScheme scheme = DerivativeScheme::central_difference;
};

/// Max over sample points and pairs j < k of |dF_j/dz_k - dF_k/dz_j|, with
/// derivatives from finite differences (or Cauchy circles).
inline NumericExactnessReport numeric_check_exact(const BlackBoxField& F, const SampleConfig& cfg = {},
                                                  DerivativeScheme scheme = DerivativeScheme::central_difference) {
  NumericExactnessReport rep;
  rep.samples = cfg;
  rep.scheme = scheme;
  const std::size_t n = F.dimension;
  rep.pairs = n * (n - 1) / 2;
  if (rep.pairs == 0) return rep;
  if (F.domain.dimension != n) throw DimensionMismatch("black-box field and domain dimensions differ");

  for (const auto& z : sample_points(F.domain, cfg)) {
    std::vector<FloatPoint> jac;  // jac[k][j] = dF_j/dz_k
    jac.reserve(n);
    for (std::size_t k = 0; k < n; ++k) jac.push_back(numeric_jacobian_column(F, z, k, scheme));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const double r = std::abs(jac[k][j] - jac[j][k]);
        if (!rep.worst_pair || r > rep.max_residual) {
          rep.max_residual = r;
          rep.worst_pair = {j, k};
          rep.witness = z;
        }
      }
    }
  }
  rep.exact = rep.max_residual < NumericExactnessReport::kTolerance;
  return rep;
}

struct LipnormEstimate {
  double pair_quotient_sup = 0.0;
  double grad_dualnorm_sup = 0.0;
  SampleConfig samples;
  NormKind norm = NormKind::sup;

  double ratio() const { return grad_dualnorm_sup > 0.0 ? pair_quotient_sup / grad_dualnorm_sup : 0.0; }
};

inline constexpr std::size_t kLocalPairsPerPoint = 4;
inline constexpr double kLocalStepPerMargin = 1e-5;

/// Two lower estimates of the Lipschitz constant L(f) on the ball:
/// the largest difference quotient |f(x) - f(y)| / ||x - y|| over sampled
/// pairs, and the largest dual norm of the numeric gradient over the sampled
/// points. Pairs are consecutive sample points plus short steps in random
/// directions from each sample point; gradients are taken at every point
/// that appears in a pair.
inline LipnormEstimate lipnorm_estimate(const ScalarCallback& f, const BallDomain& domain,
                                        const SampleConfig& cfg = {}) {
  LipnormEstimate est;
  est.samples = cfg;
  est.norm = domain.norm;
  const std::size_t n = domain.dimension;
  const auto pts = sample_points(domain, cfg);

  auto grad_dual = [&](const FloatPoint& x) {
    FloatPoint g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = numeric_partial(f, x, k, domain);
    return dual_norm(domain.norm, g);
  };
  auto quotient = [&](const FloatPoint& x, cdouble fx, const FloatPoint& y) {
    FloatPoint d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = x[k] - y[k];
    const double dist = vector_norm(domain.norm, d);
    return dist > 0.0 ? std::abs(fx - f(y)) / dist : 0.0;
  };

  SphereSampler directions(cfg.seed ^ 0xa0761d6478bd642fULL);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const FloatPoint& x = pts[i];
    const cdouble fx = f(x);
    est.grad_dualnorm_sup = std::max(est.grad_dualnorm_sup, grad_dual(x));
    if (pts.size() > 1) {
      est.pair_quotient_sup = std::max(est.pair_quotient_sup, quotient(x, fx, pts[(i + 1) % pts.size()]));
    }
    const double step = kLocalStepPerMargin * domain.margin(x);
    for (std::size_t r = 0; r < kLocalPairsPerPoint; ++r) {
      const FloatPoint v = directions.next(n, domain.norm);
      FloatPoint y = x;
      for (std::size_t k = 0; k < n; ++k) y[k] += step * v[k];
      est.pair_quotient_sup = std::max(est.pair_quotient_sup, quotient(x, fx, y));
      est.grad_dualnorm_sup = std::max(est.grad_dualnorm_sup, grad_dual(y));
    }
  }
  return est;
}

// The counterexample on the bidisk uses h = 0, l = 0 and
// g(w) = (1 - w) log(1 - w): bounded on the unit disc, with
// g'(w) = -log(1 - w) - 1 unbounded near w = 1. Principal branch throughout.
inline cdouble bidisk_g(cdouble w) { return (1.0 - w) * std::log(1.0 - w); }
inline cdouble bidisk_g_prime(cdouble w) { return -std::log(1.0 - w) - 1.0; }

/// F = (F_1, F_2) with F_1(z) = g(z_2) and the forced completion
/// F_2(z) = z_1 g'(z_2). Symmetric, hence exact on every bidisk of radius < 1,
/// but F_2 is unbounded on the unit bidisk.
inline BlackBoxField bidisk_field(double radius = 1.0) {
  BlackBoxField F;
  F.dimension = 2;
  F.domain = BallDomain{2, NormKind::sup, radius, FloatPoint(2)};
  F.eval = [](std::span<const cdouble> z) {
    return FloatPoint{bidisk_g(z[1]), z[0] * bidisk_g_prime(z[1])};
  };
  return F;
}

struct BidiskProbeReport {
  double radius = 0.0;
  double f1_sup = 0.0;
  double f2_sup = 0.0;
  double f2_corner = 0.0;  // |F_2(r, r)| in closed form
  std::size_t samples = 0;
};

/// Sampled sup of |F_1| and |F_2| over the closed bidisk of the given radius:
/// a phase grid on the torus |z_1| = |z_2| = radius (phase 0 included) plus
/// interior sample points.
inline BidiskProbeReport bidisk_counterexample_probe(double radius, const SampleConfig& cfg = {},
                                                     unsigned z1_phases = 32, unsigned z2_phases = 512) {
  if (!(radius > 0.0 && radius < 1.0)) throw InvalidArgument("bidisk probe radius must lie in (0, 1)");
  BidiskProbeReport rep;
  rep.radius = radius;
  rep.f2_corner = std::abs(radius * bidisk_g_prime(radius));

  std::vector<FloatPoint> pts;
  for (unsigned a = 0; a < z1_phases; ++a) {
    for (unsigned b = 0; b < z2_phases; ++b) {
      pts.push_back({std::polar(radius, 2.0 * std::numbers::pi * a / z1_phases),
                     std::polar(radius, 2.0 * std::numbers::pi * b / z2_phases)});
    }
  }
  const auto interior = sample_points(BallDomain{2, NormKind::sup, radius, FloatPoint(2)}, cfg);
  pts.insert(pts.end(), interior.begin(), interior.end());

  const BlackBoxField F = bidisk_field();
  for (const auto& z : pts) {
    const FloatPoint v = F.eval(z);
    rep.f1_sup = std::max(rep.f1_sup, std::abs(v[0]));
    rep.f2_sup = std::max(rep.f2_sup, std::abs(v[1]));
  }
  rep.samples = pts.size();
  return rep;
}

}  // namespace holopot
