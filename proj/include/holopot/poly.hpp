#pragma once

#include <algorithm>
#include <compare>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "holopot/error.hpp"
#include "holopot/exact_complex.hpp"

namespace holopot {

// Coefficient rings. Float mode is std::complex<double>; exact mode is
// ExactComplex. Everything polynomial is templated over one of the two.
template <class C>
struct coeff_traits;

template <>
struct coeff_traits<cdouble> {
  static constexpr bool exact = false;
  static double abs(const cdouble& c) { return std::abs(c); }
  static cdouble to_cdouble(const cdouble& c) { return c; }
  static cdouble from_cdouble(const cdouble& c) { return c; }
  static cdouble from_exact(const ExactComplex& c) { return c.to_cdouble(); }
  static cdouble from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static cdouble div(const cdouble& c, long d) { return c / static_cast<double>(d); }
  static bool is_zero(const cdouble& c) { return c.real() == 0.0 && c.imag() == 0.0; }
};

template <>
struct coeff_traits<ExactComplex> {
  static constexpr bool exact = true;
  static double abs(const ExactComplex& c) { return c.abs(); }
  static cdouble to_cdouble(const ExactComplex& c) { return c.to_cdouble(); }
  static ExactComplex from_cdouble(const cdouble& c) { return ExactComplex::from_cdouble(c); }
  static ExactComplex from_exact(const ExactComplex& c) { return c; }
  static ExactComplex from_int(long v) { return ExactComplex(v); }
  static ExactComplex div(const ExactComplex& c, long d) {
    if (d == 0) throw InvalidArgument("exact division by zero");
    return {c.re / d, c.im / d};
  }
  static bool is_zero(const ExactComplex& c) { return c.is_zero(); }
};

template <class C>
concept Coefficient = requires(C a, C b) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { -a } -> std::convertible_to<C>;
  { coeff_traits<C>::exact } -> std::convertible_to<bool>;
};

template <class C>
using Point = std::vector<C>;

using ExactPoint = Point<ExactComplex>;
using FloatPoint = Point<cdouble>;

/// Exponent vector of a monomial z^alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dimension) : exps_(dimension, 0) {}
  MultiIndex(std::initializer_list<unsigned> exps) : exps_(exps) {}
  explicit MultiIndex(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

  std::size_t size() const { return exps_.size(); }
  unsigned operator[](std::size_t k) const { return exps_[k]; }
  unsigned& operator[](std::size_t k) { return exps_[k]; }
  const std::vector<unsigned>& exponents() const { return exps_; }

  unsigned degree() const {
    unsigned d = 0;
    for (unsigned e : exps_) d += e;
    return d;
  }

  static MultiIndex unit(std::size_t dimension, std::size_t k) {
    MultiIndex m(dimension);
    m.exps_[k] = 1;
    return m;
  }

  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a.exps_[k] += b.exps_[k];
    return a;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  // Graded lexicographic: total degree first, then z1 most significant.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (auto c = a.exps_[k] <=> b.exps_[k]; c != 0) return c;
    }
    return a.size() <=> b.size();
  }

 private:
  std::vector<unsigned> exps_;
};

struct GrlexDescending {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return a > b; }
};

/// All exponent vectors of total degree `degree` in `dimension` variables,
/// in descending grlex order.
inline std::vector<MultiIndex> monomials_of_degree(std::size_t dimension, unsigned degree) {
  std::vector<MultiIndex> out;
  MultiIndex current(dimension);
  auto rec = [&](auto&& self, std::size_t k, unsigned remaining) -> void {
    if (k + 1 == dimension) {
      current[k] = remaining;
      out.push_back(current);
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      current[k] = e;
      self(self, k + 1, remaining - e);
    }
    current[k] = 0;
  };
  if (dimension > 0) rec(rec, 0, degree);
  return out;
}

/// Sparse multivariate polynomial in z_1..z_n with coefficients in C.
///
/// Terms are kept in descending graded-lex order and never store a zero
/// coefficient. In float mode, arithmetic drops coefficients whose magnitude
/// falls below 1e-14 times the largest operand coefficient.
template <Coefficient C>
class Poly {
 public:
  using coefficient_type = C;
  using traits = coeff_traits<C>;
  using Terms = std::map<MultiIndex, C, GrlexDescending>;

  static constexpr double kScrubRelative = 1e-14;

  explicit Poly(std::size_t dimension = 1) : dimension_(dimension) {
    if (dimension == 0) throw InvalidArgument("polynomial dimension must be positive");
  }

  Poly(std::size_t dimension, const Terms& terms) : Poly(dimension) {
    for (const auto& [idx, c] : terms) add_term(idx, c);
  }

  static Poly constant(std::size_t dimension, const C& c) {
    Poly p(dimension);
    p.add_term(MultiIndex(dimension), c);
    return p;
  }

  // 0-based variable index.
  static Poly variable(std::size_t dimension, std::size_t k) {
    if (k >= dimension) throw IndexOutOfRange("variable index out of range");
    Poly p(dimension);
    p.add_term(MultiIndex::unit(dimension, k), traits::from_int(1));
    return p;
  }

  static Poly monomial(const MultiIndex& idx, const C& c) {
    Poly p(idx.size());
    p.add_term(idx, c);
    return p;
  }

  std::size_t dimension() const { return dimension_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [idx, c] : terms_) d = std::max(d, static_cast<int>(idx.degree()));
    return d;
  }

  // The zero polynomial counts as homogeneous of every degree.
  bool is_homogeneous(unsigned m) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [m](const auto& t) { return t.first.degree() == m; });
  }

  std::optional<unsigned> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const unsigned m = terms_.begin()->first.degree();
    if (!is_homogeneous(m)) return std::nullopt;
    return m;
  }

  C coefficient(const MultiIndex& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? C{} : it->second;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [idx, c] : terms_) m = std::max(m, traits::abs(c));
    return m;
  }

  /// Accumulates c into the coefficient of z^idx. Exact zeros are erased.
  void add_term(const MultiIndex& idx, const C& c) {
    if (idx.size() != dimension_) throw DimensionMismatch("monomial length differs from dimension");
    if (traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
      it->second = it->second + c;
      if (traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_same_dimension(o);
    const double scale = std::max(max_abs_coefficient(), o.max_abs_coefficient());
    for (const auto& [idx, c] : o.terms_) add_term(idx, c);
    scrub(scale);
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    check_same_dimension(o);
    const double scale = std::max(max_abs_coefficient(), o.max_abs_coefficient());
    for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
    scrub(scale);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_dimension(b);
    Poly out(a.dimension_);
    for (const auto& [ia, ca] : a.terms_) {
      for (const auto& [ib, cb] : b.terms_) out.add_term(ia + ib, ca * cb);
    }
    out.scrub(a.max_abs_coefficient() * b.max_abs_coefficient());
    return out;
  }

  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator-(const Poly& a) {
    Poly out(a.dimension_);
    for (const auto& [idx, c] : a.terms_) out.terms_.emplace(idx, -c);
    return out;
  }

  Poly scaled(const C& s) const {
    Poly out(dimension_);
    for (const auto& [idx, c] : terms_) out.add_term(idx, c * s);
    return out;
  }

  Poly divided_by(long d) const {
    Poly out(dimension_);
    for (const auto& [idx, c] : terms_) out.add_term(idx, traits::div(c, d));
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
  }

 private:
  void check_same_dimension(const Poly& o) const {
    if (o.dimension_ != dimension_) throw DimensionMismatch("polynomial dimensions differ");
  }

  void scrub(double scale) {
    if constexpr (!traits::exact) {
      const double threshold = kScrubRelative * scale;
      std::erase_if(terms_, [threshold](const auto& t) { return traits::abs(t.second) <= threshold; });
    }
  }

  std::size_t dimension_;
  Terms terms_;
};

using ExactPoly = Poly<ExactComplex>;
using FloatPoly = Poly<cdouble>;

namespace detail {

template <Coefficient C, class V, class Convert>
V evaluate(const Poly<C>& p, std::span<const V> z, Convert&& convert) {
  if (z.size() != p.dimension()) throw DimensionMismatch("evaluation point has wrong length");
  // Per-variable power tables up to the largest exponent in use.
  std::vector<std::vector<V>> powers(p.dimension());
  for (const auto& [idx, c] : p.terms()) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      auto& table = powers[k];
      if (table.empty()) table.push_back(V(1));
      while (table.size() <= idx[k]) table.push_back(table.back() * z[k]);
    }
  }
  V sum(0);
  for (const auto& [idx, c] : p.terms()) {
    V term = convert(c);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] != 0) term = term * powers[k][idx[k]];
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace detail

/// p(z). Exact in exact mode.
template <Coefficient C>
C eval(const Poly<C>& p, std::type_identity_t<std::span<const C>> z) {
  return detail::evaluate<C, C>(p, z, [](const C& c) { return c; });
}

/// p(z) in double precision, for either coefficient ring.
template <Coefficient C>
cdouble eval_numeric(const Poly<C>& p, std::span<const cdouble> z) {
  return detail::evaluate<C, cdouble>(p, z, [](const C& c) { return coeff_traits<C>::to_cdouble(c); });
}

/// Exact symbolic derivative with respect to z_{k+1} (k is 0-based).
template <Coefficient C>
Poly<C> partial_derivative(const Poly<C>& p, std::size_t k) {
  if (k >= p.dimension()) throw IndexOutOfRange("partial derivative index out of range");
  Poly<C> out(p.dimension());
  for (const auto& [idx, c] : p.terms()) {
    if (idx[k] == 0) continue;
    MultiIndex lowered = idx;
    lowered[k] -= 1;
    out.add_term(lowered, c * coeff_traits<C>::from_int(static_cast<long>(idx[k])));
  }
  return out;
}

/// Splits p into its homogeneous parts, keyed by degree. Zero parts are omitted.
template <Coefficient C>
std::map<unsigned, Poly<C>> homogeneous_components(const Poly<C>& p) {
  std::map<unsigned, Poly<C>> parts;
  for (const auto& [idx, c] : p.terms()) {
    auto [it, inserted] = parts.try_emplace(idx.degree(), p.dimension());
    it->second.add_term(idx, c);
  }
  return parts;
}

/// Sum of coefficient moduli: a certified upper bound for sup |p| on the
/// closed unit polydisc (and hence on the euclidean unit ball).
template <Coefficient C>
double coeff_sum_bound(const Poly<C>& p) {
  double s = 0.0;
  for (const auto& [idx, c] : p.terms()) s += coeff_traits<C>::abs(c);
  return s;
}

/// Returns q with q(w) = p(a + w), expanded exactly (binomially) in w.
template <Coefficient C>
Poly<C> recenter(const Poly<C>& p, std::type_identity_t<std::span<const C>> a) {
  const std::size_t n = p.dimension();
  if (a.size() != n) throw DimensionMismatch("recenter point has wrong length");
  // shifted[k][e] = (a_k + w_k)^e
  std::vector<std::vector<Poly<C>>> shifted(n);
  for (std::size_t k = 0; k < n; ++k) {
    shifted[k].push_back(Poly<C>::constant(n, coeff_traits<C>::from_int(1)));
  }
  Poly<C> out(n);
  for (const auto& [idx, c] : p.terms()) {
    Poly<C> term = Poly<C>::constant(n, c);
    for (std::size_t k = 0; k < n; ++k) {
      auto& table = shifted[k];
      if (idx[k] == 0) continue;
      const Poly<C> linear = Poly<C>::constant(n, a[k]) + Poly<C>::variable(n, k);
      while (table.size() <= idx[k]) table.push_back(table.back() * linear);
      term = term * table[idx[k]];
    }
    out += term;
  }
  return out;
}

template <Coefficient To, Coefficient From>
Poly<To> convert(const Poly<From>& p) {
  Poly<To> out(p.dimension());
  for (const auto& [idx, c] : p.terms()) {
    if constexpr (std::is_same_v<To, From>) {
      out.add_term(idx, c);
    } else if constexpr (coeff_traits<To>::exact) {
      out.add_term(idx, coeff_traits<To>::from_cdouble(coeff_traits<From>::to_cdouble(c)));
    } else {
      out.add_term(idx, coeff_traits<From>::to_cdouble(c));
    }
  }
  return out;
}

template <Coefficient C>
ExactPoly to_exact(const Poly<C>& p) {
  return convert<ExactComplex>(p);
}

template <Coefficient C>
FloatPoly to_float(const Poly<C>& p) {
  return convert<cdouble>(p);
}

template <Coefficient To, Coefficient From>
Point<To> convert_point(const Point<From>& z) {
  Point<To> out;
  out.reserve(z.size());
  for (const auto& v : z) {
    if constexpr (std::is_same_v<To, From>) {
      out.push_back(v);
    } else if constexpr (coeff_traits<To>::exact) {
      out.push_back(coeff_traits<To>::from_cdouble(coeff_traits<From>::to_cdouble(v)));
    } else {
      out.push_back(coeff_traits<From>::to_cdouble(v));
    }
  }
  return out;
}

}  // namespace holopot
