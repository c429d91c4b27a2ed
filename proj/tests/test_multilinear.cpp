#include <algorithm>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace holopot;
using namespace holopot::testing;

namespace {

ExactComplex q(long re, long im = 0) { return ExactComplex(mpq_class(re), mpq_class(im)); }
ExactPoint e1() { return {q(1), q(0)}; }
ExactPoint e2() { return {q(0), q(1)}; }

}  // namespace

TEST(PolarizeEval, Examples) {
  const ExactPoly z1z2 = parse_poly("z1*z2", 2);
  const SymmetricFormView<ExactComplex> f(z1z2, 2);
  const std::vector<ExactPoint> args{e1(), e2()};
  const ExactComplex half(mpq_class(1, 2), 0);
  EXPECT_EQ(polarize_eval(f, args), half);
  EXPECT_EQ(brute_polarization(z1z2, args), half);

  const ExactPoly z1sq = parse_poly("z1^2", 2);
  const SymmetricFormView<ExactComplex> g(z1sq, 2);
  EXPECT_EQ(polarize_eval(g, args), q(0));
  EXPECT_EQ(brute_polarization(z1sq, args), q(0));
}

TEST(PolarizeEval, Errors) {
  const ExactPoly p = parse_poly("z1*z2 + z1", 2);
  EXPECT_THROW(SymmetricFormView<ExactComplex>(p, 2), NonHomogeneous);
  const ExactPoly h = parse_poly("z1*z2", 2);
  const SymmetricFormView<ExactComplex> f(h, 2);
  EXPECT_THROW(polarize_eval(f, std::vector<ExactPoint>{e1()}), ArityMismatch);
  EXPECT_THROW(polarize_eval(f, std::vector<ExactPoint>{e1(), ExactPoint{q(1)}}), DimensionMismatch);
  const ExactPoly big = parse_poly("z1^13", 1);
  EXPECT_THROW(SymmetricFormView<ExactComplex>(big, 13), InvalidArgument);
  EXPECT_NO_THROW(SymmetricFormView<ExactComplex>(big, 13, PolarizationOptions{13}));
}

TEST(PolarizeEval, AgreesWithBruteForceAndCoefficientRoute) {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const unsigned m = static_cast<unsigned>(uniform_int(rng, 0, 5));
    const ExactPoly P = random_homogeneous(rng, n, m, 6);
    const SymmetricFormView<ExactComplex> f(P, m);
    std::vector<ExactPoint> args;
    for (unsigned i = 0; i < m; ++i) args.push_back(random_exact_point(rng, n));
    const ExactComplex v = polarize_eval(f, args);
    EXPECT_EQ(v, polarize_eval_by_coefficients(f, args));
    if (m > 0) EXPECT_EQ(v, brute_polarization(P, args));
  }
}

TEST(PolarizeEval, DiagonalReproducesPolynomial) {
  Rng rng(22);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const unsigned m = static_cast<unsigned>(uniform_int(rng, 1, 6));
    const ExactPoly P = random_homogeneous(rng, n, m, 8);
    const ExactPoint u = random_exact_point(rng, n);
    const SymmetricFormView<ExactComplex> f(P, m);
    EXPECT_EQ(polarize_eval(f, std::vector<ExactPoint>(m, u)), eval(P, u));
  }
}

TEST(PolarizeEval, SymmetricUnderPermutations) {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 3));
    const unsigned m = static_cast<unsigned>(uniform_int(rng, 2, 5));
    const ExactPoly P = random_homogeneous(rng, n, m, 6);
    const SymmetricFormView<ExactComplex> f(P, m);
    std::vector<ExactPoint> args;
    for (unsigned i = 0; i < m; ++i) args.push_back(random_exact_point(rng, n));
    const ExactComplex base = polarize_eval(f, args);
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (int r = 0; r < 20; ++r) {
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<ExactPoint> permuted;
      for (auto i : perm) permuted.push_back(args[i]);
      EXPECT_EQ(polarize_eval(f, permuted), base);
    }
  }
}

TEST(PolarizeEval, LinearInEachSlot) {
  Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const unsigned m = static_cast<unsigned>(uniform_int(rng, 1, 4));
    const ExactPoly P = random_homogeneous(rng, n, m, 6);
    const SymmetricFormView<ExactComplex> f(P, m);
    std::vector<ExactPoint> args;
    for (unsigned i = 0; i < m; ++i) args.push_back(random_exact_point(rng, n));
    const auto slot = static_cast<std::size_t>(uniform_int(rng, 0, m - 1));
    const ExactPoint v = random_exact_point(rng, n);
    const ExactComplex a = random_coefficient(rng), b = random_coefficient(rng);

    std::vector<ExactPoint> mixed = args, with_v = args;
    with_v[slot] = v;
    for (std::size_t k = 0; k < n; ++k) mixed[slot][k] = a * args[slot][k] + b * v[k];
    EXPECT_EQ(polarize_eval(f, mixed), a * polarize_eval(f, args) + b * polarize_eval(f, with_v));
  }
}

TEST(ComposePoint, Examples) {
  const ExactField Q = parse_field("z2; z1");
  EXPECT_EQ(compose_point(Q, e1()), parse_poly("z2", 2));
  EXPECT_EQ(compose_point(Q, ExactPoint{q(1), q(1)}), parse_poly("z1 + z2", 2));
  EXPECT_EQ(compose_point(parse_field("0; z1^2"), e2()), parse_poly("z1^2", 2));
  EXPECT_THROW(compose_point(Q, ExactPoint{q(1)}), DimensionMismatch);
}

TEST(DPFormEval, Examples) {
  const ExactPoly z1z2 = parse_poly("z1*z2", 2);
  EXPECT_EQ(dP_form_eval(z1z2, std::vector<ExactPoint>{e1()}, e2()), q(1));
  const ExactPoly z1sq = parse_poly("z1^2", 2);
  EXPECT_EQ(dP_form_eval(z1sq, std::vector<ExactPoint>{e1()}, e1()), q(2));
  const ExactPoly cubic = parse_poly("z1^2*z2 - 3*z2^3", 2);
  EXPECT_EQ(dP_form_eval(cubic, std::vector<ExactPoint>{ExactPoint(2), ExactPoint(2)}, e1()), q(0));
  EXPECT_THROW(dP_form_eval(cubic, std::vector<ExactPoint>{e1()}, e1()), NonHomogeneous);
}

TEST(DPFormEval, MatchesDirectionalDerivativeOnDiagonal) {
  // dP(u)(x) = sum_k x_k dP/dz_k(u) = m Pcheck(u, ..., u, x)
  Rng rng(25);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const unsigned m = static_cast<unsigned>(uniform_int(rng, 1, 5));
    const ExactPoly P = random_homogeneous(rng, n, m, 6);
    const ExactPoint u = random_exact_point(rng, n), x = random_exact_point(rng, n);
    ExactComplex expected(0);
    for (std::size_t k = 0; k < n; ++k) expected = expected + x[k] * naive_eval(naive_partial(P, k), u);
    EXPECT_EQ(dP_form_eval(P, std::vector<ExactPoint>(m - 1, u), x), expected);
  }
}

TEST(DPFormEval, FormOfPairedDifferential) {
  // The (m-1)-form of x.dP at (u_1..u_{m-1}) is m Pcheck(u_1..u_{m-1}, x).
  Rng rng(26);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const unsigned m = static_cast<unsigned>(uniform_int(rng, 2, 5));
    const ExactPoly P = random_homogeneous(rng, n, m, 6);
    const ExactPoint x = random_exact_point(rng, n);
    std::vector<ExactPoint> us;
    for (unsigned i = 0; i + 1 < m; ++i) us.push_back(random_exact_point(rng, n));
    const ExactPoly xdP = compose_point(differential(P), x);
    const SymmetricFormView<ExactComplex> f(xdP, m - 1);
    EXPECT_EQ(polarize_eval(f, us), dP_form_eval(P, us, x));
  }
}

TEST(PolarizeEval, FloatModeMatchesExact) {
  Rng rng(27);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2;
    const unsigned m = 4;
    const ExactPoly P = random_homogeneous(rng, n, m, 6);
    std::vector<ExactPoint> args;
    for (unsigned i = 0; i < m; ++i) args.push_back(random_exact_point(rng, n));
    const FloatPoly Pf = to_float(P);
    std::vector<FloatPoint> fargs;
    for (const auto& a : args) fargs.push_back(convert_point<cdouble>(a));
    const cdouble approx = polarize_eval(SymmetricFormView<cdouble>(Pf, m), fargs);
    const cdouble exact = polarize_eval(SymmetricFormView<ExactComplex>(P, m), args).to_cdouble();
    EXPECT_LE(std::abs(approx - exact), 1e-9 * std::max(1.0, std::abs(exact)));
  }
}
