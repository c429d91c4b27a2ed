#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace holopot;
using namespace holopot::testing;

namespace {

ExactComplex q(long re, long im = 0) { return ExactComplex(mpq_class(re), mpq_class(im)); }

ExactPoly mono(std::initializer_list<unsigned> e, ExactComplex c = q(1)) { return ExactPoly::monomial(MultiIndex(e), c); }

}  // namespace

TEST(MultiIndex, DegreeAndGrlexOrder) {
  const MultiIndex a{2, 1}, b{0, 3}, c{1, 0};
  EXPECT_EQ(a.degree(), 3u);
  EXPECT_TRUE(a > b);  // same degree, lex on first exponent
  EXPECT_TRUE(b > c);  // higher degree first
  EXPECT_EQ(MultiIndex::unit(3, 1), (MultiIndex{0, 1, 0}));
  EXPECT_EQ(monomials_of_degree(2, 3).size(), 4u);
  EXPECT_EQ(monomials_of_degree(3, 2).size(), 6u);
}

TEST(Poly, TermsStayCanonical) {
  ExactPoly p(2);
  p.add_term(MultiIndex{1, 0}, q(2));
  p.add_term(MultiIndex{1, 0}, q(-2));
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.degree(), -1);
  EXPECT_THROW(p.add_term(MultiIndex{1, 0, 0}, q(1)), DimensionMismatch);
  const ExactPoly s = mono({0, 1}) + mono({2, 0}) + mono({1, 1});
  std::vector<MultiIndex> order;
  for (const auto& [idx, c] : s.terms()) order.push_back(idx);
  EXPECT_EQ(order, (std::vector<MultiIndex>{{2, 0}, {1, 1}, {0, 1}}));
}

TEST(PolyEval, Examples) {
  const ExactPoint z{q(2), q(0, 3)};
  EXPECT_EQ(eval(mono({1, 1}), z), q(0, 6));
  EXPECT_EQ(eval(ExactPoly(2), z), q(0));
  const ExactPoly p = mono({2, 0}) + mono({0, 1}, q(0, 1));
  const ExactPoint w{q(1, 1), q(2)};
  EXPECT_EQ(eval(p, w), q(0, 4));
  EXPECT_EQ(naive_eval(p, w), q(0, 4));
  EXPECT_THROW(eval(p, ExactPoint{q(1)}), DimensionMismatch);
}

TEST(PolyEval, MatchesNaiveEvaluator) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const ExactPoly p = random_poly(rng, n, 6, 12);
    const ExactPoint z = random_exact_point(rng, n);
    EXPECT_EQ(eval(p, z), naive_eval(p, z));
  }
}

TEST(PartialDerivative, Examples) {
  EXPECT_EQ(partial_derivative(mono({2, 1}), 0), mono({1, 1}, q(2)));
  EXPECT_TRUE(partial_derivative(ExactPoly::constant(2, q(5, 1)), 1).is_zero());
  EXPECT_TRUE(partial_derivative(mono({0, 3}), 0).is_zero());
  EXPECT_THROW(partial_derivative(mono({0, 3}), 2), IndexOutOfRange);
}

TEST(PartialDerivative, AgreesWithNaiveAndCommutes) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const ExactPoly p = random_poly(rng, n, 6, 12);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(partial_derivative(p, j), naive_partial(p, j));
      for (std::size_t k = 0; k < n; ++k) {
        EXPECT_EQ(partial_derivative(partial_derivative(p, j), k), partial_derivative(partial_derivative(p, k), j));
      }
    }
  }
}

TEST(HomogeneousComponents, Examples) {
  const auto parts = homogeneous_components(mono({1, 0}) + mono({1, 1}));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts.at(1), mono({1, 0}));
  EXPECT_EQ(parts.at(2), mono({1, 1}));
  EXPECT_TRUE(homogeneous_components(ExactPoly(2)).empty());
  const ExactPoly s = mono({1, 0}) + mono({0, 1});
  const auto sq = homogeneous_components(s * s);
  ASSERT_EQ(sq.size(), 1u);
  EXPECT_EQ(sq.at(2), mono({2, 0}) + mono({1, 1}, q(2)) + mono({0, 2}));
}

TEST(HomogeneousComponents, PartsSumToPolynomial) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const ExactPoly p = random_poly(rng, n, 6, 12);
    ExactPoly sum(n);
    for (const auto& [d, part] : homogeneous_components(p)) {
      EXPECT_TRUE(part.is_homogeneous(d));
      sum += part;
    }
    EXPECT_EQ(sum, p);
  }
}

TEST(CoeffSumBound, Examples) {
  EXPECT_DOUBLE_EQ(coeff_sum_bound(mono({1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(coeff_sum_bound(mono({1, 0}, q(2)) + mono({0, 1}, q(0, -3))), 5.0);
  const ExactPoly s = mono({1, 0}) + mono({0, 1});
  EXPECT_DOUBLE_EQ(coeff_sum_bound(s * s), 4.0);
}

TEST(SampledSup, Examples) {
  const BallDomain disc = BallDomain::unit(2);
  const double s1 = sampled_sup(mono({1, 0}), disc);
  EXPECT_GT(s1, 0.99);
  EXPECT_LE(s1, 1.0);
  EXPECT_EQ(sampled_sup(ExactPoly(2), disc), 0.0);
  const double s2 = sampled_sup(mono({1, 1}), disc);
  EXPECT_GT(s2, 0.99);
  EXPECT_LE(s2, 1.0);
}

TEST(SampledSup, BoundedByCoefficientSumAndMonotoneInCount) {
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const ExactPoly p = random_poly(rng, n, 5, 8);
    const BallDomain disc = BallDomain::unit(n);
    SampleConfig small;
    small.count = 256;
    const double a = sampled_sup(p, disc, small);
    const double b = sampled_sup(p, disc);
    EXPECT_LE(a, b);
    EXPECT_LE(b, coeff_sum_bound(p) * (1 + 1e-12));
  }
}

TEST(SampledSup, SamplesStayInsideDomain) {
  for (NormKind kind : {NormKind::sup, NormKind::euclidean}) {
    BallDomain d{3, kind, 0.7, FloatPoint{{0.1, 0.0}, {0.0, -0.1}, {0.0, 0.0}}};
    for (const auto& z : sample_points(d, {})) EXPECT_TRUE(d.contains(z));
  }
}

TEST(PolyArithmetic, ProductEvaluatesToProductOfValues) {
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const ExactPoly p = random_poly(rng, n, 6, 12), r = random_poly(rng, n, 6, 12);
    const ExactPoint z = random_exact_point(rng, n);
    EXPECT_EQ(eval(p * r, z), eval(p, z) * eval(r, z));

    const FloatPoly pf = to_float(p), rf = to_float(r);
    const FloatPoint zf = convert_point<cdouble>(z);
    const cdouble lhs = eval(pf * rf, zf), rhs = eval(pf, zf) * eval(rf, zf);
    const double scale = std::max(1.0, coeff_sum_bound(pf) * coeff_sum_bound(rf) *
                                           std::pow(std::max(1.0, vector_norm(NormKind::sup, zf)), 12));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * scale);
  }
}

TEST(PolyArithmetic, FloatScrubbingDropsCancellationNoise) {
  FloatPoly a(1), b(1);
  a.add_term(MultiIndex{1}, {1.0, 0.0});
  b.add_term(MultiIndex{1}, {1.0 + 1e-16, 0.0});
  EXPECT_TRUE((a - b).is_zero());
}

TEST(Recenter, RoundTripsExactly) {
  Rng rng(16);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const ExactPoly p = random_poly(rng, n, 6, 12);
    const ExactPoint a = random_exact_point(rng, n);
    ExactPoint minus_a;
    for (const auto& v : a) minus_a.push_back(-v);
    const ExactPoly shifted = recenter(p, a);
    EXPECT_EQ(recenter(shifted, minus_a), p);
    const ExactPoint w = random_exact_point(rng, n);
    ExactPoint aw;
    for (std::size_t k = 0; k < n; ++k) aw.push_back(a[k] + w[k]);
    EXPECT_EQ(eval(shifted, w), naive_eval(p, aw));
  }
}

TEST(ExactComplex, FromDoubleIsExact) {
  const ExactComplex c = ExactComplex::from_double(0.1);
  EXPECT_EQ(c.re, mpq_class(0.1));
  EXPECT_EQ(c.to_cdouble(), cdouble(0.1, 0.0));
  EXPECT_EQ(ExactComplex::imaginary_unit() * ExactComplex::imaginary_unit(), q(-1));
  EXPECT_THROW(q(1) / q(0), InvalidArgument);
}

TEST(PolyField, DimensionChecks) {
  EXPECT_THROW(ExactField(std::vector<ExactPoly>{ExactPoly(2)}), DimensionMismatch);
  const ExactField F(std::vector<ExactPoly>{mono({0, 1}), mono({1, 0})});
  EXPECT_EQ(F.homogeneous_degree(), 1u);
  EXPECT_EQ(eval(F, ExactPoint{q(2), q(3)}), (ExactPoint{q(3), q(2)}));
}
