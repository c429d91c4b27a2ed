#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "holopot/poly.hpp"

namespace holopot {

/// Holomorphic polynomial field F = (F_1, ..., F_n) on C^n. Component j is
/// read as the coefficient of the j-th coordinate functional, so F(z) is an
/// element of the dual of C^n written in the coordinate dual basis.
template <Coefficient C>
class PolyField {
 public:
  explicit PolyField(std::size_t dimension) {
    components_.reserve(dimension);
    for (std::size_t j = 0; j < dimension; ++j) components_.emplace_back(dimension);
    if (dimension == 0) throw InvalidArgument("field dimension must be positive");
  }

  explicit PolyField(std::vector<Poly<C>> components) : components_(std::move(components)) {
    if (components_.empty()) throw InvalidArgument("field dimension must be positive");
    for (const auto& c : components_) {
      if (c.dimension() != components_.size()) {
        throw DimensionMismatch("field component dimension must equal the number of components");
      }
    }
  }

  std::size_t dimension() const { return components_.size(); }
  const std::vector<Poly<C>>& components() const { return components_; }
  const Poly<C>& operator[](std::size_t j) const { return components_[j]; }
  Poly<C>& operator[](std::size_t j) { return components_[j]; }

  bool is_zero() const {
    for (const auto& c : components_)
      if (!c.is_zero()) return false;
    return true;
  }

  int degree() const {
    int d = -1;
    for (const auto& c : components_) d = std::max(d, c.degree());
    return d;
  }

  bool is_homogeneous(unsigned m) const {
    for (const auto& c : components_)
      if (!c.is_homogeneous(m)) return false;
    return true;
  }

  // Common degree of the nonzero components; nullopt for mixed degrees or the zero field.
  std::optional<unsigned> homogeneous_degree() const {
    std::optional<unsigned> m;
    for (const auto& c : components_) {
      if (c.is_zero()) continue;
      auto d = c.homogeneous_degree();
      if (!d || (m && *m != *d)) return std::nullopt;
      m = d;
    }
    return m;
  }

  PolyField& operator+=(const PolyField& o) {
    check_same_dimension(o);
    for (std::size_t j = 0; j < dimension(); ++j) components_[j] += o.components_[j];
    return *this;
  }
  PolyField& operator-=(const PolyField& o) {
    check_same_dimension(o);
    for (std::size_t j = 0; j < dimension(); ++j) components_[j] -= o.components_[j];
    return *this;
  }
  friend PolyField operator+(PolyField a, const PolyField& b) { return a += b; }
  friend PolyField operator-(PolyField a, const PolyField& b) { return a -= b; }

  PolyField scaled(const C& s) const {
    PolyField out = *this;
    for (auto& c : out.components_) c = c.scaled(s);
    return out;
  }

  friend bool operator==(const PolyField&, const PolyField&) = default;

 private:
  void check_same_dimension(const PolyField& o) const {
    if (o.dimension() != dimension()) throw DimensionMismatch("field dimensions differ");
  }

  std::vector<Poly<C>> components_;
};

using ExactField = PolyField<ExactComplex>;
using FloatField = PolyField<cdouble>;

template <Coefficient C>
Point<C> eval(const PolyField<C>& F, std::type_identity_t<std::span<const C>> z) {
  Point<C> out;
  out.reserve(F.dimension());
  for (const auto& c : F.components()) out.push_back(eval(c, z));
  return out;
}

template <Coefficient C>
FloatPoint eval_numeric(const PolyField<C>& F, std::span<const cdouble> z) {
  FloatPoint out;
  out.reserve(F.dimension());
  for (const auto& c : F.components()) out.push_back(eval_numeric(c, z));
  return out;
}

template <Coefficient To, Coefficient From>
PolyField<To> convert(const PolyField<From>& F) {
  std::vector<Poly<To>> comps;
  comps.reserve(F.dimension());
  for (const auto& c : F.components()) comps.push_back(convert<To>(c));
  return PolyField<To>(std::move(comps));
}

template <Coefficient C>
ExactField to_exact(const PolyField<C>& F) {
  return convert<ExactComplex>(F);
}

template <Coefficient C>
FloatField to_float(const PolyField<C>& F) {
  return convert<cdouble>(F);
}

template <Coefficient C>
PolyField<C> recenter(const PolyField<C>& F, std::type_identity_t<std::span<const C>> a) {
  std::vector<Poly<C>> comps;
  comps.reserve(F.dimension());
  for (const auto& c : F.components()) comps.push_back(recenter(c, a));
  return PolyField<C>(std::move(comps));
}

}  // namespace holopot
