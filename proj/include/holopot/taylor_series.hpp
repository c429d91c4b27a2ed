#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "holopot/exact_core.hpp"

namespace holopot {

inline constexpr unsigned kDefaultTruncation = 16;

/// g = sum_{m=1}^{M} Q_m with Q_m a field of (m-1)-homogeneous components.
/// Q_1 is a constant field.
template <Coefficient C>
class TruncatedSeriesField {
 public:
  explicit TruncatedSeriesField(std::size_t dimension, unsigned truncation_order = kDefaultTruncation)
      : dimension_(dimension), truncation_(truncation_order) {
    if (dimension == 0) throw InvalidArgument("series dimension must be positive");
    if (truncation_order == 0) throw InvalidArgument("truncation order must be positive");
  }

  void set_degree(unsigned m, PolyField<C> Q) {
    if (m < 1 || m > truncation_) {
      throw IndexOutOfRange("series degree " + std::to_string(m) + " outside 1.." + std::to_string(truncation_));
    }
    if (Q.dimension() != dimension_) throw DimensionMismatch("series term has wrong dimension");
    if (!Q.is_homogeneous(m - 1)) {
      throw NonHomogeneous("series term Q_" + std::to_string(m) + " must be homogeneous of degree " +
                           std::to_string(m - 1));
    }
    if (Q.is_zero()) {
      degrees_.erase(m);
    } else {
      degrees_.insert_or_assign(m, std::move(Q));
    }
  }

  /// Splits an arbitrary polynomial field into its degree parts; the
  /// truncation order defaults to one more than the field's degree.
  static TruncatedSeriesField from_field(const PolyField<C>& F, std::optional<unsigned> order = std::nullopt) {
    const std::size_t n = F.dimension();
    const unsigned M = order.value_or(static_cast<unsigned>(std::max(F.degree(), 0)) + 1);
    TruncatedSeriesField g(n, M);
    std::map<unsigned, std::vector<Poly<C>>> parts;
    for (std::size_t j = 0; j < n; ++j) {
      for (auto& [d, part] : homogeneous_components(F[j])) {
        auto [it, inserted] = parts.try_emplace(d + 1, std::vector<Poly<C>>(n, Poly<C>(n)));
        it->second[j] = std::move(part);
      }
    }
    for (auto& [m, comps] : parts) g.set_degree(m, PolyField<C>(std::move(comps)));
    return g;
  }

  std::size_t dimension() const { return dimension_; }
  unsigned truncation_order() const { return truncation_; }
  const std::map<unsigned, PolyField<C>>& degrees() const { return degrees_; }

  PolyField<C> flatten() const {
    PolyField<C> out(dimension_);
    for (const auto& [m, Q] : degrees_) out += Q;
    return out;
  }

  friend TruncatedSeriesField operator+(const TruncatedSeriesField& a, const TruncatedSeriesField& b) {
    if (a.dimension_ != b.dimension_) throw DimensionMismatch("series dimensions differ");
    TruncatedSeriesField out(a.dimension_, std::max(a.truncation_, b.truncation_));
    for (const auto& [m, Q] : a.degrees_) out.set_degree(m, Q);
    for (const auto& [m, Q] : b.degrees_) {
      auto it = out.degrees_.find(m);
      out.set_degree(m, it == out.degrees_.end() ? Q : it->second + Q);
    }
    return out;
  }

 private:
  std::size_t dimension_;
  unsigned truncation_;
  std::map<unsigned, PolyField<C>> degrees_;
};

/// f = sum_{m=1}^{M} P_m with P_m m-homogeneous; f(0) = 0 by construction.
template <Coefficient C>
class TruncatedSeriesFunction {
 public:
  explicit TruncatedSeriesFunction(std::size_t dimension, unsigned truncation_order = kDefaultTruncation)
      : dimension_(dimension), truncation_(truncation_order) {
    if (dimension == 0) throw InvalidArgument("series dimension must be positive");
  }

  void set_part(unsigned m, Poly<C> P) {
    if (m < 1 || m > truncation_) {
      throw IndexOutOfRange("series degree " + std::to_string(m) + " outside 1.." + std::to_string(truncation_));
    }
    if (P.dimension() != dimension_) throw DimensionMismatch("series part has wrong dimension");
    if (!P.is_homogeneous(m)) throw NonHomogeneous("series part P_" + std::to_string(m) + " is not homogeneous");
    if (P.is_zero()) {
      parts_.erase(m);
    } else {
      parts_.insert_or_assign(m, std::move(P));
    }
  }

  std::size_t dimension() const { return dimension_; }
  unsigned truncation_order() const { return truncation_; }
  const std::map<unsigned, Poly<C>>& parts() const { return parts_; }

  Poly<C> to_poly() const {
    Poly<C> out(dimension_);
    for (const auto& [m, P] : parts_) out += P;
    return out;
  }

  C eval(std::type_identity_t<std::span<const C>> z) const { return holopot::eval(to_poly(), z); }

  friend bool operator==(const TruncatedSeriesFunction& a, const TruncatedSeriesFunction& b) {
    return a.dimension_ == b.dimension_ && a.parts_ == b.parts_;
  }

  friend TruncatedSeriesFunction operator+(const TruncatedSeriesFunction& a, const TruncatedSeriesFunction& b) {
    if (a.dimension_ != b.dimension_) throw DimensionMismatch("series dimensions differ");
    TruncatedSeriesFunction out(a.dimension_, std::max(a.truncation_, b.truncation_));
    for (const auto& [m, P] : a.parts_) out.set_part(m, P);
    for (const auto& [m, P] : b.parts_) {
      auto it = out.parts_.find(m);
      out.set_part(m, it == out.parts_.end() ? P : it->second + P);
    }
    return out;
  }

 private:
  std::size_t dimension_;
  unsigned truncation_;
  std::map<unsigned, Poly<C>> parts_;
};

template <Coefficient C>
struct DegreeVerdict {
  unsigned m = 0;
  ExactnessReport<C> report;
};

template <Coefficient C>
struct SeriesVerdict {
  bool exact = true;
  std::optional<unsigned> first_failing_degree;
  std::vector<DegreeVerdict<C>> degrees;
};

/// Checks each Q_m on its own; by uniqueness of the expansion, g is exact iff
/// every degree is.
template <Coefficient C>
SeriesVerdict<C> series_check_exact(const TruncatedSeriesField<C>& g, const SampleConfig& cfg = {}) {
  SeriesVerdict<C> out;
  for (const auto& [m, Q] : g.degrees()) {
    auto report = check_exact(Q, cfg);
    if (!report.exact && !out.first_failing_degree) {
      out.exact = false;
      out.first_failing_degree = m;
    }
    out.degrees.push_back({m, std::move(report)});
  }
  return out;
}

class SeriesNotExact : public Error {
 public:
  explicit SeriesNotExact(unsigned degree, std::size_t x_index, std::size_t y_index)
      : Error("series term Q_" + std::to_string(degree) + " is not a differential (e" +
              std::to_string(y_index + 1) + ".d(e" + std::to_string(x_index + 1) + ".Q) != e" +
              std::to_string(x_index + 1) + ".d(e" + std::to_string(y_index + 1) + ".Q))"),
        degree_(degree),
        x_index_(x_index),
        y_index_(y_index) {}

  unsigned degree() const { return degree_; }
  std::size_t x_index() const { return x_index_; }
  std::size_t y_index() const { return y_index_; }

 private:
  unsigned degree_;
  std::size_t x_index_;
  std::size_t y_index_;
};

/// Term-wise antiderivative: P_m from the homogeneous criterion for m >= 2,
/// and P_1(z) = <Q_1, z> for the constant term.
template <Coefficient C>
TruncatedSeriesFunction<C> series_reconstruct(const TruncatedSeriesField<C>& g,
                                              PolarizationOptions opts = {kDefaultTruncation}) {
  const std::size_t n = g.dimension();
  TruncatedSeriesFunction<C> f(n, g.truncation_order());
  for (const auto& [m, Q] : g.degrees()) {
    if (m == 1) {
      Poly<C> P1(n);
      for (std::size_t j = 0; j < n; ++j) {
        P1.add_term(MultiIndex::unit(n, j), Q[j].coefficient(MultiIndex(n)));
      }
      f.set_part(1, std::move(P1));
      continue;
    }
    HomogeneousExactness h = homogeneous_exactness(Q, opts);
    if (!h.exact()) throw SeriesNotExact(m, h.failure->x_index, h.failure->y_index);
    f.set_part(m, convert<C>(*h.potential));
  }
  return f;
}

struct DegreeNorms {
  unsigned m = 0;
  double p_lower = 0.0;  // sampled ||P_m||
  double q_lower = 0.0;  // sampled ||Q_m||
  double q_upper = 0.0;  // sum_j coeff_sum_bound(Q_{m,j}) >= ||Q_m||
  bool holds = true;     // p_lower <= q_upper
};

/// Per-degree check of ||P_m|| <= ||Q_m|| in its sound form: a sampled
/// lower estimate of the left side against a certified upper bound of the
/// right side.
template <Coefficient C>
std::vector<DegreeNorms> series_norm_diagnostic(const TruncatedSeriesField<C>& g,
                                                const TruncatedSeriesFunction<C>& f,
                                                const SampleConfig& cfg = {},
                                                NormKind norm = NormKind::sup) {
  const std::size_t n = g.dimension();
  const BallDomain domain = BallDomain::unit(n, norm);
  std::vector<DegreeNorms> out;
  for (unsigned m = 1; m <= std::max(g.truncation_order(), f.truncation_order()); ++m) {
    auto qit = g.degrees().find(m);
    auto pit = f.parts().find(m);
    if (qit == g.degrees().end() && pit == f.parts().end()) continue;
    DegreeNorms d;
    d.m = m;
    if (pit != f.parts().end()) d.p_lower = sampled_sup(pit->second, domain, cfg);
    if (qit != g.degrees().end()) {
      d.q_lower = sampled_field_sup(qit->second, domain, cfg);
      for (const auto& c : qit->second.components()) d.q_upper += coeff_sum_bound(c);
    }
    d.holds = d.p_lower <= d.q_upper * (1.0 + 1e-12);
    out.push_back(d);
  }
  return out;
}

struct BasisPairVerdict {
  bool pass = true;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;  // (n, k), n < k, 0-based
};

/// Symmetry tested only on coordinate basis pairs:
/// e_k . d(e_n . g) == e_n . d(e_k . g) for n < k.
template <Coefficient C>
BasisPairVerdict basis_pair_check(const PolyField<C>& g) {
  const std::size_t dim = g.dimension();
  BasisPairVerdict out;
  auto basis = [dim](std::size_t i) {
    Point<C> e(dim, C(0));
    e[i] = coeff_traits<C>::from_int(1);
    return e;
  };
  for (std::size_t n = 0; n < dim; ++n) {
    for (std::size_t k = n + 1; k < dim; ++k) {
      const Point<C> en = basis(n), ek = basis(k);
      if (!(pair_derivative(g, en, ek) == pair_derivative(g, ek, en))) {
        out.pass = false;
        out.failing_pair = {n, k};
        return out;
      }
    }
  }
  return out;
}

template <Coefficient C>
BasisPairVerdict basis_pair_check(const TruncatedSeriesField<C>& g) {
  for (const auto& [m, Q] : g.degrees()) {
    BasisPairVerdict v = basis_pair_check(Q);
    if (!v.pass) return v;
  }
  return {};
}

/// Randomized full bilinear test: y.d(x.g) == x.d(y.g) for `trials` random
/// pairs (x, y) with small rational complex entries. Exact mode only.
inline bool bilinear_symmetry_check(const ExactField& g, std::size_t trials = 100, std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-97, 97);
  std::uniform_int_distribution<long> den(1, 13);
  auto random_point = [&] {
    ExactPoint p;
    for (std::size_t k = 0; k < g.dimension(); ++k) {
      const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
      p.emplace_back(mpq_class(mpz_class(a), mpz_class(b)), mpq_class(mpz_class(c), mpz_class(d)));
    }
    return p;
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const ExactPoint x = random_point(), y = random_point();
    if (!(pair_derivative(g, x, y) == pair_derivative(g, y, x))) return false;
  }
  return true;
}

}  // namespace holopot
