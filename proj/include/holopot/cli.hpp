#pragma once

// Command-line front end. Every subcommand prints one JSON document on
// stdout; diagnostics go to stderr. Exit codes: 0 success or exact,
// 1 negative verdict (not exact), 2 usage, parse, or I/O error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holopot/expr_parser.hpp"
#include "holopot/json_io.hpp"

namespace holopot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitError = 2;

inline constexpr const char* kGrammarHelp =
    "Expressions: polynomials in z1..zn with complex literals (2, 1.5, 3i, i), + - * ^ and\n"
    "parentheses; '/' only by a nonzero constant; '^' takes a non-negative integer and binds\n"
    "tighter than unary minus (-z1^2 = -(z1^2)). Field components are separated by ';'.\n"
    "Set HOLOPOT_SEED to change the default sampling seed.";

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_output(const json& doc, std::ostream& out, const std::string& out_path) {
  const std::string text = doc.dump(2);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write '" + out_path + "'");
    f << text << "\n";
  }
  out << text << "\n";
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("HOLOPOT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error("HOLOPOT_SEED must be an unsigned integer");
    }
  }
  return kDefaultSeed;
}

inline NormKind parse_norm(const std::string& s) {
  if (s == "sup") return NormKind::sup;
  if (s == "euclid" || s == "euclidean") return NormKind::euclidean;
  throw Error("unknown norm '" + s + "' (use sup or euclid)");
}

inline ExactPoint parse_center(const std::string& text, std::size_t n) {
  ExactPoint a;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const ExactPoly c = parse_poly(item, n);
    if (c.degree() > 0) throw Error("center coordinate '" + item + "' is not a constant");
    a.push_back(c.coefficient(MultiIndex(n)));
  }
  if (a.size() != n) {
    throw DimensionMismatch("center has " + std::to_string(a.size()) + " coordinates, field needs " +
                            std::to_string(n));
  }
  return a;
}

struct SourceOptions {
  std::optional<std::string> expr;
  std::optional<std::string> file;
};

inline void add_source_options(CLI::App* cmd, SourceOptions& src, const std::string& what) {
  auto* e = cmd->add_option("--expr", src.expr, what + " as an expression");
  auto* f = cmd->add_option("--file", src.file, what + " as a JSON file");
  e->excludes(f);
}

inline ExactField load_field(const SourceOptions& src) {
  if (src.expr) return parse_field(*src.expr);
  if (src.file) return field_from_json<ExactComplex>(read_json_file(*src.file));
  throw Error("one of --expr or --file is required");
}

inline ExactPoly load_scalar(const SourceOptions& src, std::size_t dim) {
  if (src.expr) {
    const FieldExpr f = parse_field_expr(*src.expr);
    const std::size_t n = dim ? dim : std::max<std::size_t>(1, max_variable_index(f));
    return lower_scalar(f, n);
  }
  if (src.file) return poly_from_json<ExactComplex>(read_json_file(*src.file));
  throw Error("one of --expr or --file is required");
}

}  // namespace detail

/// Runs the CLI on `args` (program name excluded).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"holopot: exactness tests and potentials for holomorphic fields", "holopot"};
  app.footer(kGrammarHelp);
  app.require_subcommand(1);

  detail::SourceOptions check_src;
  bool numeric = false;
  std::size_t samples = SampleConfig{}.count;
  std::optional<std::uint64_t> seed;
  std::string norm_name = "sup";
  auto* check = app.add_subcommand("check-exact", "Test dF_j/dz_k = dF_k/dz_j and report residuals");
  detail::add_source_options(check, check_src, "field");
  check->add_flag("--numeric", numeric, "Use finite-difference derivatives on sample points");
  check->add_option("--samples", samples, "Number of sample points")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "Sampling seed");
  check->add_option("--norm", norm_name, "Ball norm: sup or euclid");

  detail::SourceOptions recon_src;
  std::string center;
  std::string out_path;
  auto* recon = app.add_subcommand("reconstruct", "Potential g with dg = F and g(a) = 0");
  detail::add_source_options(recon, recon_src, "field");
  recon->add_option("--center", center, "Star center a as comma-separated constants");
  recon->add_option("--out", out_path, "Also write the potential to this file");

  std::string series_file;
  auto* series = app.add_subcommand("series-reconstruct", "Term-wise potential of a truncated series field");
  series->add_option("--file", series_file, "Series JSON file")->required();
  series->add_option("--out", out_path, "Also write the result to this file");

  detail::SourceOptions lip_src;
  std::size_t lip_dim = 0;
  auto* lip = app.add_subcommand("lipnorm", "Estimate L(f) by difference quotients and by sup ||df||");
  detail::add_source_options(lip, lip_src, "scalar function");
  lip->add_option("--dim", lip_dim, "Dimension (default: largest variable index)");
  lip->add_option("--norm", norm_name, "Ball norm: sup or euclid");
  lip->add_option("--samples", samples, "Number of sample points")->check(CLI::PositiveNumber);
  lip->add_option("--seed", seed, "Sampling seed");

  double radius = 0.0;
  auto* demo = app.add_subcommand("demo", "Built-in demonstrations");
  demo->require_subcommand(1);
  auto* bidisk = demo->add_subcommand("bidisk", "Bounded F_1 on the bidisk whose completion F_2 blows up");
  bidisk->add_option("--radius", radius, "Bidisk radius in (0, 1)")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    SampleConfig cfg;
    cfg.seed = seed.value_or(detail::default_seed());
    cfg.count = samples;

    if (*check) {
      const ExactField F = detail::load_field(check_src);
      if (numeric) {
        BlackBoxField bb = wrap_field(F, BallDomain::unit(F.dimension(), detail::parse_norm(norm_name)));
        const NumericExactnessReport rep = numeric_check_exact(bb, cfg);
        out << to_json(rep).dump(2) << "\n";
        return rep.exact ? kExitOk : kExitNegative;
      }
      const auto rep = check_exact(F, cfg, detail::parse_norm(norm_name));
      out << to_json(rep).dump(2) << "\n";
      return rep.exact ? kExitOk : kExitNegative;
    }

    if (*recon) {
      const ExactField F = detail::load_field(recon_src);
      const ExactPoint a = center.empty() ? ExactPoint(F.dimension()) : detail::parse_center(center, F.dimension());
      try {
        detail::write_output(to_json(reconstruct_potential(F, a, cfg)), out, out_path);
        return kExitOk;
      } catch (const NotExact<ExactComplex>& e) {
        err << "not exact: " << e.what() << "\n";
        out << to_json(e.report()).dump(2) << "\n";
        return kExitNegative;
      }
    }

    if (*series) {
      const auto g = series_from_json<ExactComplex>(detail::read_json_file(series_file));
      const auto verdict = series_check_exact(g, cfg);
      if (!verdict.exact) {
        json rep = {{"verdict", "not_exact"}, {"failing_degree", *verdict.first_failing_degree}};
        for (const auto& d : verdict.degrees) {
          if (d.m == *verdict.first_failing_degree) rep["report"] = to_json(d.report);
        }
        err << "not exact: series term Q_" << *verdict.first_failing_degree << " fails the symmetry test\n";
        out << rep.dump(2) << "\n";
        return kExitNegative;
      }
      detail::write_output(to_json(series_reconstruct(g)), out, out_path);
      return kExitOk;
    }

    if (*lip) {
      const ExactPoly f = detail::load_scalar(lip_src, lip_dim);
      const BallDomain domain = BallDomain::unit(f.dimension(), detail::parse_norm(norm_name));
      out << to_json(lipnorm_estimate(wrap_scalar(f), domain, cfg)).dump(2) << "\n";
      return kExitOk;
    }

    if (*bidisk) {
      out << to_json(bidisk_counterexample_probe(radius, cfg)).dump(2) << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace holopot::cli
