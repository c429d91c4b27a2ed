#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "holopot/poly_field.hpp"

namespace holopot {

struct PolarizationOptions {
  // The signed sum costs 2^(m-1) evaluations.
  unsigned max_arity = 12;
};

/// Symmetric m-linear form associated with an m-homogeneous polynomial P,
/// i.e. the unique symmetric form with form(u, ..., u) = P(u).
///
/// This is a view: it refers to `base`, which must outlive it.
template <Coefficient C>
class SymmetricFormView {
 public:
  SymmetricFormView(const Poly<C>& base, unsigned arity, PolarizationOptions opts = {})
      : base_(&base), arity_(arity) {
    if (!base.is_homogeneous(arity)) {
      throw NonHomogeneous("symmetric form needs a polynomial homogeneous of degree " +
                           std::to_string(arity));
    }
    if (arity > opts.max_arity) {
      throw InvalidArgument("polarization arity " + std::to_string(arity) + " exceeds the cap " +
                            std::to_string(opts.max_arity));
    }
  }

  const Poly<C>& base() const { return *base_; }
  unsigned arity() const { return arity_; }

 private:
  const Poly<C>* base_;
  unsigned arity_;
};

namespace detail {

template <Coefficient C>
void check_form_args(const SymmetricFormView<C>& form, std::span<const Point<C>> args) {
  if (args.size() != form.arity()) {
    throw ArityMismatch("form of arity " + std::to_string(form.arity()) + " given " +
                        std::to_string(args.size()) + " arguments");
  }
  for (const auto& a : args) {
    if (a.size() != form.base().dimension()) throw DimensionMismatch("form argument has wrong length");
  }
}

}  // namespace detail

/// Evaluates the symmetric form by the polarization identity
///   form(x_1..x_m) = 1/(2^m m!) * sum_{eps in {+-1}^m} eps_1..eps_m P(sum eps_i x_i).
/// Patterns come in +- pairs with equal contributions, so only eps_1 = +1 is
/// summed.
template <Coefficient C>
C polarize_eval(const SymmetricFormView<C>& form, std::type_identity_t<std::span<const Point<C>>> args) {
  using traits = coeff_traits<C>;
  detail::check_form_args(form, args);
  const unsigned m = form.arity();
  const std::size_t n = form.base().dimension();
  if (m == 0) return form.base().coefficient(MultiIndex(n));

  C acc(0);
  Point<C> v(n);
  const std::size_t patterns = std::size_t{1} << (m - 1);
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    std::fill(v.begin(), v.end(), C(0));
    bool negative = false;
    for (unsigned i = 0; i < m; ++i) {
      const bool minus = i > 0 && ((mask >> (i - 1)) & 1u);
      negative ^= minus;
      for (std::size_t k = 0; k < n; ++k) v[k] = minus ? v[k] - args[i][k] : v[k] + args[i][k];
    }
    const C value = eval(form.base(), v);
    acc = negative ? acc - value : acc + value;
  }
  acc = traits::div(acc, static_cast<long>(patterns));
  for (unsigned i = 2; i <= m; ++i) acc = traits::div(acc, static_cast<long>(i));
  return acc;
}

/// Independent route to the same value from the monomial coefficients:
/// the form of z^alpha is (alpha!/m!) times the sum over all slot assignments
/// w (slot i -> variable w_i, variable k used alpha_k times) of prod_i x_i[w_i].
template <Coefficient C>
C polarize_eval_by_coefficients(const SymmetricFormView<C>& form,
                                std::type_identity_t<std::span<const Point<C>>> args) {
  using traits = coeff_traits<C>;
  detail::check_form_args(form, args);
  const unsigned m = form.arity();
  const std::size_t n = form.base().dimension();

  C total(0);
  for (const auto& [alpha, coeff] : form.base().terms()) {
    std::vector<unsigned> remaining = alpha.exponents();
    C assignments(0);
    auto rec = [&](auto&& self, unsigned slot, C product) -> void {
      if (slot == m) {
        assignments = assignments + product;
        return;
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (remaining[k] == 0) continue;
        --remaining[k];
        self(self, slot + 1, product * args[slot][k]);
        ++remaining[k];
      }
    };
    rec(rec, 0, C(1));
    // alpha!/m!
    C weight = coeff;
    for (unsigned e : alpha.exponents())
      for (unsigned f = 2; f <= e; ++f) weight = weight * traits::from_int(f);
    for (unsigned f = 2; f <= m; ++f) weight = traits::div(weight, f);
    total = total + weight * assignments;
  }
  return total;
}

/// The polynomial u -> Q(u)(x) = sum_j x_j Q_j(u).
template <Coefficient C>
Poly<C> compose_point(const PolyField<C>& Q, std::type_identity_t<std::span<const C>> x) {
  if (x.size() != Q.dimension()) throw DimensionMismatch("compose_point: vector has wrong length");
  Poly<C> out(Q.dimension());
  for (std::size_t j = 0; j < Q.dimension(); ++j) {
    if (coeff_traits<C>::is_zero(x[j])) continue;
    out += Q[j].scaled(x[j]);
  }
  return out;
}

/// Symmetric (m-1)-linear form of dP applied to x:
///   dP_form(u_1..u_{m-1})(x) = m * Pcheck(u_1..u_{m-1}, x),
/// where m = us.size() + 1 must be the degree of P.
template <Coefficient C>
C dP_form_eval(const Poly<C>& P, std::type_identity_t<std::span<const Point<C>>> us,
               std::type_identity_t<std::span<const C>> x, PolarizationOptions opts = {}) {
  const auto m = static_cast<unsigned>(us.size() + 1);
  if (!P.is_homogeneous(m)) {
    throw NonHomogeneous("dP_form_eval: polynomial must be homogeneous of degree " + std::to_string(m));
  }
  std::vector<Point<C>> args(us.begin(), us.end());
  args.emplace_back(x.begin(), x.end());
  const SymmetricFormView<C> form(P, m, opts);
  return polarize_eval(form, args) * coeff_traits<C>::from_int(m);
}

}  // namespace holopot
