#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holopot/domain.hpp"
#include "holopot/multilinear.hpp"

namespace holopot {

/// dp = (dp/dz_1, ..., dp/dz_n).
template <Coefficient C>
PolyField<C> differential(const Poly<C>& p) {
  std::vector<Poly<C>> comps;
  comps.reserve(p.dimension());
  for (std::size_t k = 0; k < p.dimension(); ++k) comps.push_back(partial_derivative(p, k));
  return PolyField<C>(std::move(comps));
}

/// Residual dF_j/dz_k - dF_k/dz_j for one pair j < k (0-based).
template <Coefficient C>
struct PairResidual {
  std::size_t j = 0;
  std::size_t k = 0;
  Poly<C> residual;
  double sampled_sup = 0.0;
};

struct Witness {
  FloatPoint z;
  double value = 0.0;
};

template <Coefficient C>
struct ExactnessReport {
  bool exact = true;
  std::vector<PairResidual<C>> residuals;
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  Witness witness;
  std::uint64_t seed = kDefaultSeed;
};

template <Coefficient C>
class NotExact : public Error {
 public:
  explicit NotExact(ExactnessReport<C> report)
      : Error(describe(report)), report_(std::move(report)) {}

  const ExactnessReport<C>& report() const { return report_; }

 private:
  static std::string describe(const ExactnessReport<C>& r) {
    std::string msg = "field is not exact";
    if (r.worst_pair) {
      msg += ": dF" + std::to_string(r.worst_pair->first + 1) + "/dz" +
             std::to_string(r.worst_pair->second + 1) + " != dF" +
             std::to_string(r.worst_pair->second + 1) + "/dz" + std::to_string(r.worst_pair->first + 1);
    }
    return msg;
  }

  ExactnessReport<C> report_;
};

/// Jacobian symmetry test. The verdict is exact iff every residual polynomial
/// vanishes identically. For not-exact fields the witness is the sample point
/// where the largest residual is largest (first pair wins ties).
template <Coefficient C>
ExactnessReport<C> check_exact(const PolyField<C>& F, const SampleConfig& cfg = {},
                               NormKind norm = NormKind::sup) {
  const std::size_t n = F.dimension();
  const BallDomain domain = BallDomain::unit(n, norm);
  ExactnessReport<C> report;
  report.seed = cfg.seed;
  report.witness.z = FloatPoint(n);

  std::optional<std::vector<FloatPoint>> points;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      PairResidual<C> r{j, k, partial_derivative(F[j], k) - partial_derivative(F[k], j), 0.0};
      if (!r.residual.is_zero()) {
        report.exact = false;
        if (!points) points = sample_points(domain, cfg);
        const FloatPoly q = to_float(r.residual);
        const SupSample s =
            sampled_sup_of([&](std::span<const cdouble> z) { return eval_numeric(q, z); }, *points);
        r.sampled_sup = s.value;
        if (!report.worst_pair || s.value > report.witness.value) {
          report.worst_pair = {j, k};
          report.witness = {s.where, s.value};
        }
      }
      report.residuals.push_back(std::move(r));
    }
  }
  return report;
}

/// Potential g with dg = F and g(a) = 0.
///
/// The line integral g(z) = int_0^1 sum_j F_j(a + t(z-a)) (z_j - a_j) dt is
/// evaluated in closed form: after recentring at a, a degree-d homogeneous
/// part Q_d of F contributes (1/(d+1)) sum_j w_j Q_{d,j}(w).
template <Coefficient C>
Poly<C> reconstruct_potential(const PolyField<C>& F, std::type_identity_t<std::span<const C>> a,
                              const SampleConfig& cfg = {}) {
  const std::size_t n = F.dimension();
  if (a.size() != n) throw DimensionMismatch("star center has wrong length");
  auto report = check_exact(F, cfg);
  if (!report.exact) throw NotExact<C>(std::move(report));

  const PolyField<C> G = recenter(F, a);
  Poly<C> centered(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Poly<C> wj = Poly<C>::variable(n, j);
    for (const auto& [d, part] : homogeneous_components(G[j])) {
      centered += (wj * part).divided_by(static_cast<long>(d) + 1);
    }
  }
  Point<C> minus_a;
  for (const auto& v : a) minus_a.push_back(-v);
  return recenter(centered, minus_a);
}

template <Coefficient C>
Poly<C> reconstruct_potential(const PolyField<C>& F) {
  return reconstruct_potential(F, Point<C>(F.dimension(), C(0)));
}

/// The polynomial u -> y . d(x . F)(u) = sum_k y_k d/dz_k (sum_j x_j F_j)(u),
/// defined for any polynomial field.
template <Coefficient C>
Poly<C> pair_derivative(const PolyField<C>& F, std::type_identity_t<std::span<const C>> x,
                        std::type_identity_t<std::span<const C>> y) {
  if (y.size() != F.dimension()) throw DimensionMismatch("pair_derivative: vector has wrong length");
  const Poly<C> xQ = compose_point(F, x);
  Poly<C> out(F.dimension());
  for (std::size_t k = 0; k < F.dimension(); ++k) {
    if (coeff_traits<C>::is_zero(y[k])) continue;
    out += partial_derivative(xQ, k).scaled(y[k]);
  }
  return out;
}

namespace detail {

template <Coefficient C>
unsigned field_degree_plus_one(const PolyField<C>& Q, const char* what) {
  const auto d = Q.homogeneous_degree();
  if (!d) {
    if (Q.is_zero()) return 0;
    throw NonHomogeneous(std::string(what) + ": components must be homogeneous of one common degree");
  }
  if (*d == 0) throw NonHomogeneous(std::string(what) + ": needs components of degree m-1 >= 1");
  return *d + 1;
}

}  // namespace detail

/// B_Q(x, y) = y . d(x . Q) for Q with (m-1)-homogeneous components, m >= 2.
/// The result is (m-2)-homogeneous and bilinear in (x, y).
template <Coefficient C>
Poly<C> bq_eval(const PolyField<C>& Q, std::type_identity_t<std::span<const C>> x,
                std::type_identity_t<std::span<const C>> y) {
  (void)detail::field_degree_plus_one(Q, "bq_eval");
  return pair_derivative(Q, x, y);
}

struct HomogeneousFailure {
  std::size_t x_index = 0;  // witness x = e_{x_index}
  std::size_t y_index = 0;  // witness y = e_{y_index}
  // y.d(x.Q) - x.d(y.Q)
  ExactPoly difference{1};
};

struct HomogeneousExactness {
  unsigned m = 0;
  std::optional<ExactPoly> potential;
  std::optional<HomogeneousFailure> failure;

  bool exact() const { return potential.has_value(); }
};

namespace detail {

inline std::vector<ExactPoint> basis_tuple(const MultiIndex& counts) {
  std::vector<ExactPoint> args;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    for (unsigned r = 0; r < counts[k]; ++r) {
      ExactPoint e(counts.size());
      e[k] = ExactComplex(1);
      args.push_back(std::move(e));
    }
  }
  return args;
}

inline mpz_class factorial(unsigned k) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

inline mpz_class multi_factorial(const MultiIndex& a) {
  mpz_class f = 1;
  for (unsigned e : a.exponents()) f *= factorial(e);
  return f;
}

}  // namespace detail

/// Decides whether Q (components (m-1)-homogeneous, m >= 2) is the
/// differential of an m-homogeneous polynomial, using only values of the
/// symmetric forms of the components obtained by polarization.
///
/// With A(u_1..u_m) = Qcheck(u_1..u_{m-1})(u_m), Q = dP iff A is symmetric,
/// which for a multilinear form reduces to basis tuples. On success the
/// potential is the polynomial of A/m. Float inputs are promoted exactly.
template <Coefficient C>
HomogeneousExactness homogeneous_exactness(const PolyField<C>& Qin, PolarizationOptions opts = {}) {
  const ExactField Q = to_exact(Qin);
  const std::size_t n = Q.dimension();
  HomogeneousExactness out;
  out.m = detail::field_degree_plus_one(Q, "homogeneous_exactness");
  if (out.m == 0) {
    out.potential = ExactPoly(n);
    return out;
  }
  const unsigned m = out.m;
  const unsigned arity = m - 1;

  // forms[k][gamma] = Qcheck_k(e^gamma) for |gamma| = m - 1.
  std::vector<std::map<MultiIndex, ExactComplex>> forms(n);
  const auto gammas = monomials_of_degree(n, arity);
  for (std::size_t k = 0; k < n; ++k) {
    const SymmetricFormView<ExactComplex> form(Q[k], arity, opts);
    for (const auto& gamma : gammas) {
      forms[k].emplace(gamma, polarize_eval(form, detail::basis_tuple(gamma)));
    }
  }

  // y.d(x.Q)(u) = (m-1) Qcheck_x(u, ..., u, y): its u^beta coefficient is
  // (m-1) (m-2)!/beta! Qcheck_x(e^beta, y).
  const mpz_class m1_fact = detail::factorial(m - 1);
  for (std::size_t j = 0; j < n && !out.failure; ++j) {
    for (std::size_t k = j + 1; k < n && !out.failure; ++k) {
      ExactPoly diff(n);
      for (const auto& beta : monomials_of_degree(n, m - 2)) {
        const ExactComplex delta = forms[j].at(beta + MultiIndex::unit(n, k)) -
                                   forms[k].at(beta + MultiIndex::unit(n, j));
        if (delta.is_zero()) continue;
        const mpq_class w(m1_fact, detail::multi_factorial(beta));
        diff.add_term(beta, delta * ExactComplex(w, 0));
      }
      if (!diff.is_zero()) out.failure = HomogeneousFailure{j, k, std::move(diff)};
    }
  }
  if (out.failure) return out;

  // P = (1/m) A(u, ..., u): coefficient of u^alpha is (m-1)!/alpha! Qcheck_j(e^{alpha - e_j})
  // for any j with alpha_j > 0.
  ExactPoly P(n);
  for (const auto& alpha : monomials_of_degree(n, m)) {
    std::size_t j = 0;
    while (alpha[j] == 0) ++j;
    MultiIndex rest = alpha;
    rest[j] -= 1;
    const ExactComplex& value = forms[j].at(rest);
    if (value.is_zero()) continue;
    const mpq_class w(m1_fact, detail::multi_factorial(alpha));
    P.add_term(alpha, value * ExactComplex(w, 0));
  }
  out.potential = std::move(P);
  return out;
}

/// A(u_1..u_m) = Qcheck(u_1..u_{m-1})(u_m) = sum_j (u_m)_j Qcheck_j(u_1..u_{m-1}).
template <Coefficient C>
C form_A_eval(const PolyField<C>& Q, std::type_identity_t<std::span<const Point<C>>> args,
              PolarizationOptions opts = {}) {
  const unsigned m = detail::field_degree_plus_one(Q, "form_A_eval");
  if (m == 0) return C(0);
  if (args.size() != m) throw ArityMismatch("form_A_eval needs m arguments");
  const std::span<const Point<C>> head = args.first(m - 1);
  const Point<C>& last = args[m - 1];
  C acc(0);
  for (std::size_t j = 0; j < Q.dimension(); ++j) {
    if (coeff_traits<C>::is_zero(last[j])) continue;
    const SymmetricFormView<C> form(Q[j], m - 1, opts);
    acc = acc + last[j] * polarize_eval(form, head);
  }
  return acc;
}

struct BqBoundReport {
  unsigned m = 0;
  double norm_upper_bound = 0.0;  // U(Q) = sum_j coeff_sum_bound(Q_j)
  double max_ratio = 0.0;
  std::size_t violations = 0;
  std::size_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
};

/// Samples |B_Q(x, y)(u)| / ((m-1) e U(Q) ||x|| ||y||) with x, y on the unit
/// sup-sphere and u in the unit polydisc. U(Q) bounds ||Q|| from above, so a
/// ratio above 1 would contradict the bound ||B_Q|| <= (m-1) e ||Q||.
template <Coefficient C>
BqBoundReport bq_bound_check(const PolyField<C>& Q, const SampleConfig& cfg = {}) {
  const std::size_t n = Q.dimension();
  BqBoundReport rep;
  rep.seed = cfg.seed;
  rep.m = detail::field_degree_plus_one(Q, "bq_bound_check");
  if (rep.m == 0) return rep;
  for (const auto& c : Q.components()) rep.norm_upper_bound += coeff_sum_bound(c);

  // partials[j][k] = d Q_j / d z_k
  const FloatField G = to_float(Q);
  std::vector<std::vector<FloatPoly>> partials(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) partials[j].push_back(partial_derivative(G[j], k));

  const double bound_scale = (rep.m - 1) * std::numbers::e * rep.norm_upper_bound;
  const auto us = sample_points(BallDomain::unit(n), cfg);
  SphereSampler sphere(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  for (const auto& u : us) {
    const FloatPoint x = sphere.next(n, NormKind::sup);
    const FloatPoint y = sphere.next(n, NormKind::sup);
    cdouble lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) lhs += x[j] * y[k] * eval_numeric(partials[j][k], u);
    const double rhs = bound_scale * vector_norm(NormKind::sup, x) * vector_norm(NormKind::sup, y);
    const double ratio = rhs > 0.0 ? std::abs(lhs) / rhs : 0.0;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0) ++rep.violations;
    ++rep.trials;
  }
  return rep;
}

}  // namespace holopot
