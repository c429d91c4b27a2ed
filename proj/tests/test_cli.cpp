#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "holopot/cli.hpp"

using namespace holopot;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = {}) {
  const auto path = std::filesystem::temp_directory_path() / ("holopot_test_" + name);
  if (!content.empty()) std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, CheckExactExitCodes) {
  const CliResult ok = run({"check-exact", "--expr", "z2; z1"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.doc().at("verdict"), "exact");

  const CliResult bad = run({"check-exact", "--expr", "z2; -z1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.doc().at("residuals")[0].at("sampled_sup"), 2.0);

  const CliResult numeric = run({"check-exact", "--expr", "z2; -z1", "--numeric", "--samples", "64", "--seed", "3"});
  EXPECT_EQ(numeric.code, 1);
  EXPECT_EQ(numeric.doc().at("numeric"), true);
  EXPECT_EQ(numeric.doc().at("seed"), 3);
}

TEST(Cli, ParseErrorsExitTwoWithPosition) {
  const CliResult r = run({"check-exact", "--expr", "z1 + ; z2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("1:6"), std::string::npos) << r.err;

  EXPECT_EQ(run({"check-exact", "--expr", "conj(z1); z2"}).code, 2);
  EXPECT_EQ(run({"check-exact"}).code, 2);
  EXPECT_EQ(run({"check-exact", "--expr", "z1", "--file", "x.json"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check-exact", "--file", "/nonexistent/field.json"}).code, 2);
  EXPECT_EQ(run({"check-exact", "--file", temp_file("broken.json", "{not json").string()}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const CliResult r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("check-exact"), std::string::npos);
  EXPECT_NE(r.out.find("tighter than unary minus"), std::string::npos);
}

TEST(Cli, Reconstruct) {
  const CliResult r = run({"reconstruct", "--expr", "z2; z1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(poly_from_json<ExactComplex>(r.doc()), parse_poly("z1*z2", 2));

  const auto out = temp_file("potential.json");
  const CliResult c = run({"reconstruct", "--expr", "z2; z1", "--center", "1/2, i", "--out", out.string()});
  EXPECT_EQ(c.code, 0);
  std::ifstream in(out);
  const ExactPoly g = poly_from_json<ExactComplex>(json::parse(in));
  EXPECT_EQ(g, parse_poly("z1*z2 - i/2", 2));

  const CliResult bad = run({"reconstruct", "--expr", "z2; -z1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.doc().at("verdict"), "not_exact");
  EXPECT_FALSE(bad.err.empty());

  EXPECT_EQ(run({"reconstruct", "--expr", "z2; z1", "--center", "1"}).code, 2);
  EXPECT_EQ(run({"reconstruct", "--expr", "z2; z1", "--center", "z1, 0"}).code, 2);
}

TEST(Cli, ReconstructFromFile) {
  const auto path = temp_file("field.json", to_json(parse_field("2*z1*z2; z1^2")).dump());
  const CliResult r = run({"reconstruct", "--file", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(poly_from_json<ExactComplex>(r.doc()), parse_poly("z1^2*z2", 2));
}

TEST(Cli, SeriesReconstruct) {
  TruncatedSeriesField<ExactComplex> g(2, 4);
  g.set_degree(2, parse_field("z2; z1"));
  g.set_degree(3, parse_field("2*z1*z2; z1^2"));
  const auto path = temp_file("series.json", to_json(g).dump());
  const CliResult r = run({"series-reconstruct", "--file", path.string()});
  EXPECT_EQ(r.code, 0);
  const auto f = series_function_from_json<ExactComplex>(r.doc());
  EXPECT_EQ(f.to_poly(), parse_poly("z1*z2 + z1^2*z2", 2));

  g.set_degree(2, parse_field("0; z1"));
  const auto bad = temp_file("series_bad.json", to_json(g).dump());
  const CliResult b = run({"series-reconstruct", "--file", bad.string()});
  EXPECT_EQ(b.code, 1);
  EXPECT_EQ(b.doc().at("failing_degree"), 2);
}

TEST(Cli, Lipnorm) {
  const CliResult r = run({"lipnorm", "--expr", "z1", "--dim", "2", "--samples", "512"});
  EXPECT_EQ(r.code, 0);
  const json d = r.doc();
  EXPECT_GT(d.at("pair_quotient_sup").get<double>(), 0.99);
  EXPECT_EQ(d.at("norm"), "sup");
  EXPECT_EQ(d.at("config").at("count"), 512);

  const CliResult e = run({"lipnorm", "--expr", "z1 + z2", "--norm", "euclid", "--samples", "256"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NEAR(e.doc().at("grad_dualnorm_sup").get<double>(), std::sqrt(2.0), 1e-8);
  EXPECT_EQ(run({"lipnorm", "--expr", "z1", "--norm", "taxicab"}).code, 2);
  EXPECT_EQ(run({"lipnorm", "--expr", "z1; z2"}).code, 2);
}

TEST(Cli, DemoBidisk) {
  const CliResult r = run({"demo", "bidisk", "--radius", "0.999999"});
  EXPECT_EQ(r.code, 0);
  EXPECT_GE(r.doc().at("f2_sup").get<double>(), 10.0);
  EXPECT_LE(r.doc().at("f1_sup").get<double>(), 8.0);
  EXPECT_EQ(run({"demo", "bidisk", "--radius", "1.5"}).code, 2);
  EXPECT_EQ(run({"demo", "bidisk"}).code, 2);
  EXPECT_EQ(run({"demo"}).code, 2);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("HOLOPOT_SEED", "99", 1);
  const CliResult r = run({"check-exact", "--expr", "z2; -z1"});
  EXPECT_EQ(r.doc().at("seed"), 99);
  const CliResult explicit_seed = run({"check-exact", "--expr", "z2; -z1", "--seed", "5"});
  EXPECT_EQ(explicit_seed.doc().at("seed"), 5);
  ::setenv("HOLOPOT_SEED", "nope", 1);
  EXPECT_EQ(run({"check-exact", "--expr", "z2; z1"}).code, 2);
  ::unsetenv("HOLOPOT_SEED");
}
