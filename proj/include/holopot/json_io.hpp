#pragma once

// Canonical JSON encodings.
//
//   Poly       {"dimension": n, "terms": [{"exp": [..], "re": x, "im": y}, ...]}
//   PolyField  {"dimension": n, "components": [{"terms": [...]}, ...]}
//   Series     {"dimension": n, "truncation": M, "degrees": {"2": <PolyField>, ...}}
//
// Terms are written in descending graded-lex order. Exact coefficients carry
// an additional "q": ["re", "im"] pair of rational strings so they survive a
// round trip; readers prefer "q" when present and otherwise convert the
// doubles exactly.

#include <string>

#include <nlohmann/json.hpp>

#include "holopot/exact_core.hpp"
#include "holopot/numeric_engine.hpp"
#include "holopot/taylor_series.hpp"

namespace holopot {

using json = nlohmann::ordered_json;

class FormatError : public Error {
 public:
  using Error::Error;
};

template <Coefficient C>
json terms_to_json(const Poly<C>& p) {
  json terms = json::array();
  for (const auto& [idx, c] : p.terms()) {
    const cdouble v = coeff_traits<C>::to_cdouble(c);
    json t = {{"exp", idx.exponents()}, {"re", v.real()}, {"im", v.imag()}};
    if constexpr (coeff_traits<C>::exact) t["q"] = {to_string(c.re), to_string(c.im)};
    terms.push_back(std::move(t));
  }
  return terms;
}

template <Coefficient C>
json to_json(const Poly<C>& p) {
  return {{"dimension", p.dimension()}, {"terms", terms_to_json(p)}};
}

template <Coefficient C>
json to_json(const PolyField<C>& F) {
  json comps = json::array();
  for (const auto& c : F.components()) comps.push_back({{"terms", terms_to_json(c)}});
  return {{"dimension", F.dimension()}, {"components", std::move(comps)}};
}

inline json point_to_json(std::span<const cdouble> z) {
  json arr = json::array();
  for (const auto& v : z) arr.push_back({v.real(), v.imag()});
  return arr;
}

namespace detail {

template <Coefficient C>
C coefficient_from_json(const json& t) {
  if constexpr (coeff_traits<C>::exact) {
    if (t.contains("q")) {
      const auto& q = t.at("q");
      mpq_class re, im;
      if (!q.is_array() || q.size() != 2 || !parse_rational(q[0].get<std::string>(), re) ||
          !parse_rational(q[1].get<std::string>(), im)) {
        throw FormatError("malformed exact coefficient");
      }
      return ExactComplex(re, im);
    }
  }
  return coeff_traits<C>::from_cdouble({t.at("re").get<double>(), t.value("im", 0.0)});
}

template <Coefficient C>
Poly<C> terms_from_json(const json& terms, std::size_t n) {
  if (!terms.is_array()) throw FormatError("\"terms\" must be an array");
  Poly<C> p(n);
  for (const auto& t : terms) {
    const auto exps = t.at("exp").get<std::vector<unsigned>>();
    if (exps.size() != n) throw FormatError("exponent vector length differs from dimension");
    p.add_term(MultiIndex(exps), coefficient_from_json<C>(t));
  }
  return p;
}

template <class F>
auto wrap_format_errors(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON document: ") + e.what());
  }
}

}  // namespace detail

template <Coefficient C>
Poly<C> poly_from_json(const json& j) {
  return detail::wrap_format_errors([&] {
    const auto n = j.at("dimension").get<std::size_t>();
    if (n == 0) throw FormatError("dimension must be positive");
    return detail::terms_from_json<C>(j.at("terms"), n);
  });
}

template <Coefficient C>
PolyField<C> field_from_json(const json& j) {
  return detail::wrap_format_errors([&] {
    const auto& comps = j.at("components");
    if (!comps.is_array() || comps.empty()) throw FormatError("\"components\" must be a non-empty array");
    const auto n = j.value("dimension", comps.size());
    if (n != comps.size()) throw FormatError("field needs one component per dimension");
    std::vector<Poly<C>> out;
    for (const auto& c : comps) out.push_back(detail::terms_from_json<C>(c.at("terms"), n));
    return PolyField<C>(std::move(out));
  });
}

template <Coefficient C>
json to_json(const TruncatedSeriesField<C>& g) {
  json degrees = json::object();
  for (const auto& [m, Q] : g.degrees()) degrees[std::to_string(m)] = to_json(Q);
  return {{"dimension", g.dimension()}, {"truncation", g.truncation_order()}, {"degrees", std::move(degrees)}};
}

template <Coefficient C>
TruncatedSeriesField<C> series_from_json(const json& j) {
  return detail::wrap_format_errors([&] {
    const auto n = j.at("dimension").get<std::size_t>();
    TruncatedSeriesField<C> g(n, j.value("truncation", kDefaultTruncation));
    for (const auto& [key, value] : j.at("degrees").items()) {
      unsigned m = 0;
      try {
        m = static_cast<unsigned>(std::stoul(key));
      } catch (const std::exception&) {
        throw FormatError("series degree key '" + key + "' is not an integer");
      }
      PolyField<C> Q = field_from_json<C>(value);
      if (Q.dimension() != n) throw FormatError("series term dimension differs from series dimension");
      g.set_degree(m, std::move(Q));
    }
    return g;
  });
}

template <Coefficient C>
json to_json(const TruncatedSeriesFunction<C>& f) {
  json parts = json::object();
  for (const auto& [m, P] : f.parts()) parts[std::to_string(m)] = to_json(P);
  return {{"dimension", f.dimension()}, {"truncation", f.truncation_order()}, {"parts", std::move(parts)}};
}

template <Coefficient C>
TruncatedSeriesFunction<C> series_function_from_json(const json& j) {
  return detail::wrap_format_errors([&] {
    const auto n = j.at("dimension").get<std::size_t>();
    TruncatedSeriesFunction<C> f(n, j.value("truncation", kDefaultTruncation));
    for (const auto& [key, value] : j.at("parts").items()) {
      f.set_part(static_cast<unsigned>(std::stoul(key)), poly_from_json<C>(value));
    }
    return f;
  });
}

template <Coefficient C>
json to_json(const ExactnessReport<C>& r) {
  json residuals = json::array();
  for (const auto& p : r.residuals) {
    residuals.push_back(
        {{"j", p.j + 1}, {"k", p.k + 1}, {"poly", to_json(p.residual)}, {"sampled_sup", p.sampled_sup}});
  }
  json out = {{"verdict", r.exact ? "exact" : "not_exact"},
              {"residuals", std::move(residuals)},
              {"witness", {{"z", point_to_json(r.witness.z)}, {"value", r.witness.value}}}};
  if (r.worst_pair) out["worst_pair"] = {r.worst_pair->first + 1, r.worst_pair->second + 1};
  out["seed"] = r.seed;
  return out;
}

inline json to_json(const SampleConfig& cfg) {
  return {{"seed", cfg.seed}, {"count", cfg.count}, {"radial_schedule", cfg.radial_schedule}};
}

inline json to_json(const NumericExactnessReport& r) {
  json residuals = json::array();
  if (r.worst_pair) {
    residuals.push_back({{"j", r.worst_pair->first + 1}, {"k", r.worst_pair->second + 1},
                         {"sampled_sup", r.max_residual}});
  }
  json out = {{"verdict", r.exact ? "exact" : "not_exact"},
              {"residuals", std::move(residuals)},
              {"witness", {{"z", point_to_json(r.witness)}, {"value", r.max_residual}}},
              {"numeric", true},
              {"tolerance", NumericExactnessReport::kTolerance},
              {"scheme", r.scheme == DerivativeScheme::cauchy_circle ? "cauchy_circle" : "central_difference"},
              {"config", to_json(r.samples)}};
  if (r.worst_pair) out["worst_pair"] = {r.worst_pair->first + 1, r.worst_pair->second + 1};
  out["seed"] = r.samples.seed;
  return out;
}

inline json to_json(const LipnormEstimate& e) {
  return {{"pair_quotient_sup", e.pair_quotient_sup},
          {"grad_dualnorm_sup", e.grad_dualnorm_sup},
          {"ratio", e.ratio()},
          {"norm", to_string(e.norm)},
          {"numeric", true},
          {"config", to_json(e.samples)},
          {"seed", e.samples.seed}};
}

inline json to_json(const BidiskProbeReport& r) {
  return {{"radius", r.radius},
          {"f1_sup", r.f1_sup},
          {"f2_sup", r.f2_sup},
          {"f2_corner", r.f2_corner},
          {"samples", r.samples},
          {"g", "(1-w)*log(1-w)"},
          {"numeric", true}};
}

inline json to_json(const BqBoundReport& r) {
  return {{"m", r.m},
          {"norm_upper_bound", r.norm_upper_bound},
          {"max_ratio", r.max_ratio},
          {"violations", r.violations},
          {"trials", r.trials},
          {"seed", r.seed}};
}

inline json to_json(const HomogeneousExactness& h) {
  json out = {{"m", h.m}, {"verdict", h.exact() ? "exact" : "not_exact"}};
  if (h.potential) out["potential"] = to_json(*h.potential);
  if (h.failure) {
    out["witness"] = {{"x", h.failure->x_index + 1},
                      {"y", h.failure->y_index + 1},
                      {"difference", to_json(h.failure->difference)}};
  }
  return out;
}

}  // namespace holopot
