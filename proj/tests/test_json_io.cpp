#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace holopot;
using namespace holopot::testing;

TEST(JsonPoly, CanonicalShape) {
  const json j = to_json(parse_poly("z1*z2 + 2 - 0.5i*z1^2", 2));
  EXPECT_EQ(j.at("dimension"), 2);
  const auto& terms = j.at("terms");
  ASSERT_EQ(terms.size(), 3u);
  EXPECT_EQ(terms[0].at("exp"), json::array({2, 0}));
  EXPECT_EQ(terms[0].at("re"), 0.0);
  EXPECT_EQ(terms[0].at("im"), -0.5);
  EXPECT_EQ(terms[1].at("exp"), json::array({1, 1}));
  EXPECT_EQ(terms[2].at("exp"), json::array({0, 0}));
  EXPECT_EQ(terms[2].at("q"), json::array({"2", "0"}));
}

TEST(JsonPoly, RoundTripsExactlyAndByteStably) {
  Rng rng(71);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const ExactPoly p = random_poly(rng, n, 6, 10);
    const std::string text = to_json(p).dump();
    const ExactPoly back = poly_from_json<ExactComplex>(json::parse(text));
    EXPECT_EQ(back, p);
    EXPECT_EQ(to_json(back).dump(), text);

    const FloatPoly f = to_float(p);
    EXPECT_EQ(poly_from_json<cdouble>(to_json(f)), f);
  }
}

TEST(JsonPoly, FloatOnlyTermsAreReadExactly) {
  const json j = json::parse(R"({"dimension": 1, "terms": [{"exp": [1], "re": 0.1, "im": 0.0}]})");
  const ExactPoly p = poly_from_json<ExactComplex>(j);
  EXPECT_EQ(p.coefficient(MultiIndex{1}), ExactComplex::from_double(0.1));
}

TEST(JsonField, RoundTripAndShape) {
  const ExactField F = parse_field("z2; (1+2i)*z1");
  const json j = to_json(F);
  EXPECT_EQ(j.at("dimension"), 2);
  EXPECT_EQ(j.at("components").size(), 2u);
  EXPECT_TRUE(j.at("components")[0].contains("terms"));
  EXPECT_EQ(field_from_json<ExactComplex>(j), F);
}

TEST(JsonField, MalformedDocuments) {
  EXPECT_THROW(field_from_json<ExactComplex>(json::parse(R"({"dimension": 2, "components": [{"terms": []}]})")),
               FormatError);
  EXPECT_THROW(field_from_json<ExactComplex>(json::parse(R"({"components": []})")), FormatError);
  EXPECT_THROW(poly_from_json<ExactComplex>(json::parse(R"({"dimension": 2, "terms": [{"exp": [1], "re": 1}]})")),
               FormatError);
  EXPECT_THROW(poly_from_json<ExactComplex>(json::parse(R"({"dimension": 1, "terms": [{"exp": [1]}]})")),
               FormatError);
  EXPECT_THROW(poly_from_json<ExactComplex>(json::parse(R"({"terms": []})")), FormatError);
  EXPECT_THROW(poly_from_json<ExactComplex>(
                   json::parse(R"({"dimension": 1, "terms": [{"exp": [1], "re": 1, "q": ["1/0", "0"]}]})")),
               FormatError);
}

TEST(JsonSeries, RoundTrip) {
  TruncatedSeriesField<ExactComplex> g(2, 5);
  g.set_degree(2, parse_field("z2; z1"));
  g.set_degree(3, parse_field("2*z1*z2; z1^2"));
  const json j = to_json(g);
  EXPECT_EQ(j.at("truncation"), 5);
  EXPECT_TRUE(j.at("degrees").contains("2"));
  const auto back = series_from_json<ExactComplex>(j);
  EXPECT_EQ(back.degrees(), g.degrees());
  EXPECT_EQ(back.truncation_order(), 5u);

  const auto f = series_reconstruct(g);
  EXPECT_EQ(series_function_from_json<ExactComplex>(to_json(f)), f);

  EXPECT_THROW(series_from_json<ExactComplex>(json::parse(R"({"dimension": 2, "degrees": {"x": {}}})")),
               FormatError);
  EXPECT_THROW(series_from_json<ExactComplex>(json::parse(
                   R"({"dimension": 1, "degrees": {"2": {"components": [{"terms": [{"exp": [2], "re": 1}]}]}}})")),
               NonHomogeneous);
}

TEST(JsonReports, ExactnessReportShape) {
  const json ok = to_json(check_exact(parse_field("z2; z1")));
  EXPECT_EQ(ok.at("verdict"), "exact");
  EXPECT_EQ(ok.at("residuals")[0].at("j"), 1);
  EXPECT_EQ(ok.at("residuals")[0].at("k"), 2);
  EXPECT_EQ(ok.at("residuals")[0].at("sampled_sup"), 0.0);
  EXPECT_EQ(ok.at("seed"), kDefaultSeed);
  EXPECT_TRUE(ok.at("witness").contains("z"));

  const json bad = to_json(check_exact(parse_field("z2; -z1")));
  EXPECT_EQ(bad.at("verdict"), "not_exact");
  EXPECT_EQ(bad.at("witness").at("value"), 2.0);
  EXPECT_EQ(bad.at("worst_pair"), json::array({1, 2}));
  EXPECT_EQ(poly_from_json<ExactComplex>(bad.at("residuals")[0].at("poly")), parse_poly("2", 2));
}

TEST(JsonReports, NumericReportsCarryMarkerAndConfig) {
  SampleConfig cfg;
  cfg.count = 64;
  cfg.seed = 7;
  const json r = to_json(numeric_check_exact(wrap_field(parse_field("z2; z1")), cfg));
  EXPECT_EQ(r.at("numeric"), true);
  EXPECT_EQ(r.at("config").at("count"), 64);
  EXPECT_EQ(r.at("seed"), 7);

  const json l = to_json(lipnorm_estimate(wrap_scalar(parse_poly("z1", 1)), BallDomain::unit(1), cfg));
  EXPECT_EQ(l.at("numeric"), true);
  EXPECT_TRUE(l.contains("ratio"));

  const json b = to_json(bidisk_counterexample_probe(0.9, cfg));
  EXPECT_EQ(b.at("radius"), 0.9);
  EXPECT_TRUE(b.contains("f2_sup"));
}
