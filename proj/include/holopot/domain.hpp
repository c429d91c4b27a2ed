#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "holopot/poly_field.hpp"

namespace holopot {

enum class NormKind { sup, euclidean };

inline const char* to_string(NormKind k) { return k == NormKind::sup ? "sup" : "euclidean"; }

inline double vector_norm(NormKind kind, std::span<const cdouble> z) {
  double acc = 0.0;
  for (const auto& v : z) {
    acc = kind == NormKind::sup ? std::max(acc, std::abs(v)) : std::hypot(acc, std::abs(v));
  }
  return acc;
}

// Norm of the functional w -> sum_k g_k w_k: the 1-norm for the sup ball,
// the 2-norm for the euclidean ball.
inline double dual_norm(NormKind kind, std::span<const cdouble> g) {
  if (kind == NormKind::euclidean) return vector_norm(NormKind::euclidean, g);
  double acc = 0.0;
  for (const auto& v : g) acc += std::abs(v);
  return acc;
}

/// Open ball {z : ||z - center|| < radius} in C^n. Defaults to the unit
/// polydisc centred at the origin.
struct BallDomain {
  std::size_t dimension = 1;
  NormKind norm = NormKind::sup;
  double radius = 1.0;
  FloatPoint center;

  static BallDomain unit(std::size_t n, NormKind kind = NormKind::sup) {
    return BallDomain{n, kind, 1.0, FloatPoint(n)};
  }

  void validate() const {
    if (dimension == 0) throw InvalidArgument("domain dimension must be positive");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("domain radius must be positive");
    if (!center.empty() && center.size() != dimension) throw DimensionMismatch("domain center has wrong length");
  }

  cdouble center_at(std::size_t k) const { return center.empty() ? cdouble{} : center[k]; }

  double distance_from_center(std::span<const cdouble> z) const {
    if (z.size() != dimension) throw DimensionMismatch("point has wrong length for domain");
    FloatPoint d(z.begin(), z.end());
    for (std::size_t k = 0; k < dimension; ++k) d[k] -= center_at(k);
    return vector_norm(norm, d);
  }

  // Distance to the boundary; negative outside.
  double margin(std::span<const cdouble> z) const { return radius - distance_from_center(z); }

  bool contains(std::span<const cdouble> z) const { return margin(z) > 0.0; }
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

inline std::vector<double> default_radial_schedule() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999};
}

/// Deterministic sampling plan. Radii are fractions of the domain radius.
struct SampleConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 4096;
  std::vector<double> radial_schedule = default_radial_schedule();

  void validate() const {
    if (count == 0) throw InvalidArgument("sample count must be positive");
    if (radial_schedule.empty()) throw InvalidArgument("radial schedule must not be empty");
    for (double r : radial_schedule) {
      if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("schedule radii must lie strictly inside (0, 1)");
    }
  }
};

/// Draws unit vectors of a given norm. Sup-norm draws are boundary biased:
/// half land on the distinguished boundary (every |u_k| = 1), the rest have
/// one coordinate on the unit circle and the others uniform in the disc.
class SphereSampler {
 public:
  explicit SphereSampler(std::uint64_t seed) : rng_(seed) {}

  FloatPoint next(std::size_t n, NormKind kind) {
    FloatPoint u(n);
    if (kind == NormKind::euclidean) {
      std::normal_distribution<double> gauss;
      double norm = 0.0;
      do {
        for (auto& v : u) v = {gauss(rng_), gauss(rng_)};
        norm = vector_norm(NormKind::euclidean, u);
      } while (norm == 0.0);
      for (auto& v : u) v /= norm;
      return u;
    }
    const bool torus = unit_(rng_) < 0.5;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t fixed = pick(rng_);
    for (std::size_t k = 0; k < n; ++k) {
      const double phase = 2.0 * std::numbers::pi * unit_(rng_);
      const double r = (torus || k == fixed) ? 1.0 : std::sqrt(unit_(rng_));
      u[k] = std::polar(r, phase);
    }
    return u;
  }

  double uniform() { return unit_(rng_); }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

/// Sample points for the domain. Point i sits at radius
/// schedule[i % size] * domain.radius in a random direction; the sequence for
/// count N is a prefix of the sequence for any larger count.
inline std::vector<FloatPoint> sample_points(const BallDomain& domain, const SampleConfig& cfg) {
  domain.validate();
  cfg.validate();
  SphereSampler sampler(cfg.seed);
  std::vector<FloatPoint> pts;
  pts.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const double r = cfg.radial_schedule[i % cfg.radial_schedule.size()] * domain.radius;
    FloatPoint u = sampler.next(domain.dimension, domain.norm);
    for (std::size_t k = 0; k < domain.dimension; ++k) u[k] = domain.center_at(k) + r * u[k];
    pts.push_back(std::move(u));
  }
  return pts;
}

struct SupSample {
  double value = 0.0;
  FloatPoint where;
};

/// Largest |f| over the sample set, with its location. A lower estimate of
/// the true supremum.
template <class F>
SupSample sampled_sup_of(F&& f, const std::vector<FloatPoint>& points) {
  SupSample best;
  for (const auto& z : points) {
    const double v = std::abs(f(std::span<const cdouble>(z)));
    if (best.where.empty() || v > best.value) {
      best.value = v;
      best.where = z;
    }
  }
  return best;
}

template <Coefficient C>
SupSample sampled_sup_at(const Poly<C>& p, const BallDomain& domain, const SampleConfig& cfg = {}) {
  if (domain.dimension != p.dimension()) throw DimensionMismatch("domain and polynomial dimensions differ");
  if (p.is_zero()) return {0.0, domain.center.empty() ? FloatPoint(domain.dimension) : domain.center};
  const FloatPoly q = to_float(p);
  return sampled_sup_of([&](std::span<const cdouble> z) { return eval_numeric(q, z); },
                        sample_points(domain, cfg));
}

template <Coefficient C>
double sampled_sup(const Poly<C>& p, const BallDomain& domain, const SampleConfig& cfg = {}) {
  return sampled_sup_at(p, domain, cfg).value;
}

/// Largest dual norm of F(z) over the sample set (the field's sup norm as a
/// map into the dual space), a lower estimate.
template <Coefficient C>
double sampled_field_sup(const PolyField<C>& F, const BallDomain& domain, const SampleConfig& cfg = {}) {
  if (domain.dimension != F.dimension()) throw DimensionMismatch("domain and field dimensions differ");
  if (F.is_zero()) return 0.0;
  const FloatField G = to_float(F);
  double best = 0.0;
  for (const auto& z : sample_points(domain, cfg)) {
    best = std::max(best, dual_norm(domain.norm, eval_numeric(G, z)));
  }
  return best;
}

}  // namespace holopot
