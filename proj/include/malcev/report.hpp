#pragma once

#include <string>

#include <json.hpp>

#include "malcev/print.hpp"
#include "malcev/probes.hpp"
#include "malcev/subfields.hpp"
#include "malcev/subnormal.hpp"

// Structured output. nlohmann's default json keeps object keys sorted and
// the builders below put every exact number into a string, so a report is
// byte-stable across runs with the same seed.
namespace malcev {

using Json = nlohmann::json;

inline Json coeff_json(const Coeff& c) {
  return Json{{"a", rat_to_string(c.rational_part())},
              {"b", rat_to_string(c.radical_part())},
              {"d", c.discriminant()}};
}

inline Json series_json(const Series& s) {
  Json terms = Json::array();
  for (const Term& t : s.terms())
    terms.push_back(Json{{"coefficient", coeff_json(t.coefficient)}, {"word", print_word(t.word)}});
  Json window;
  if (s.precision().is_exact())
    window = "exact";
  else
    window = Json{{"above", print_word(s.precision().bound())}};
  return Json{{"terms", std::move(terms)}, {"window", std::move(window)}, {"text", print_series(s)}};
}

inline std::string laurent_kind_name(LaurentKind k) {
  switch (k) {
    case LaurentKind::yes: return "yes";
    case LaurentKind::no: return "no";
    case LaurentKind::indeterminate_beyond_precision: return "indeterminate-beyond-precision";
  }
  return "?";
}

inline Json laurent_verdict_json(const LaurentVerdict& v) {
  Json j{{"kind", laurent_kind_name(v.kind)}};
  j["witness"] = v.witness ? Json(print_word(*v.witness)) : Json(nullptr);
  j["window"] = v.window.is_exact() ? Json("exact") : Json{{"above", print_word(v.window.bound())}};
  return j;
}

inline std::string violation_side_name(ViolationSide s) {
  switch (s) {
    case ViolationSide::lambda_side_lower: return "lambda-side-lower";
    case ViolationSide::lambda_side_higher: return "lambda-side-higher";
    case ViolationSide::tie: return "tie";
  }
  return "?";
}

inline Json probe_json(const SelfInvarianceProbe& p) {
  Json j{{"h", print_word(p.h)},
         {"gamma", series_json(p.gamma)},
         {"on_part", series_json(p.on_part)},
         {"off_part", series_json(p.off_part)},
         {"violation", p.violation}};
  j["exponent"] = p.violation ? Json(p.exponent) : Json(nullptr);
  j["conjugate"] = p.conjugate_series ? series_json(*p.conjugate_series) : Json(nullptr);
  j["verdict"] = p.verdict ? laurent_verdict_json(*p.verdict) : Json(nullptr);
  j["side"] = p.side ? Json(violation_side_name(*p.side)) : Json(nullptr);
  return j;
}

inline Json normalization_json(const NormalizationReport& r) {
  Json steps = Json::array();
  for (const NormalizationStep& s : r.steps)
    steps.push_back(Json{{"k", print_word(s.k)},
                         {"c", coeff_json(s.c)},
                         {"cancelled", print_word(s.cancelled)}});
  Json j{{"laurent_within_precision", r.laurent_within_precision},
         {"steps", std::move(steps)},
         {"beta", series_json(r.beta)},
         {"conjugated", series_json(r.conjugated)}};
  j["residual_word"] = r.residual_word ? Json(print_word(*r.residual_word)) : Json(nullptr);
  j["verdict"] = r.verdict ? laurent_verdict_json(*r.verdict) : Json(nullptr);
  return j;
}

inline Json chain_json(const ChainReport& r) {
  Json levels = Json::array();
  for (const LevelEvidence& l : r.levels)
    levels.push_back(Json{{"depth", l.depth},
                          {"ball_size", l.ball_size},
                          {"subset_of_previous", l.subset_of_previous},
                          {"samples", l.samples},
                          {"morphism_failures", l.morphism_failures},
                          {"certificate_failures", l.certificate_failures},
                          {"erasure_checks", l.erasure_checks},
                          {"erasure_failures", l.erasure_failures}});
  return Json{{"g", print_word(r.g)},
              {"length_bound", r.length_bound},
              {"max_depth", r.max_depth},
              {"levels", std::move(levels)},
              {"ok", r.ok}};
}

inline std::string division_status_name(DivisionStatus s) {
  switch (s) {
    case DivisionStatus::division_ring: return "division-ring";
    case DivisionStatus::zero_divisors: return "zero-divisors";
    case DivisionStatus::unknown: return "unknown";
  }
  return "?";
}

inline Json algebra_element_json(const AlgebraElement& x) {
  Json coords = Json::array();
  for (const Rat& q : x.coords()) coords.push_back(rat_to_string(q));
  return Json{{"coords", std::move(coords)}, {"text", print_algebra_element(x)}};
}

inline Json algebra_json(const AlgebraPtr& alg) {
  Json j{{"name", alg->name()},
         {"degree", alg->degree()},
         {"dimension", alg->dimension()},
         {"modulus", print_poly(alg->modulus())},
         {"sigma", print_poly(alg->sigma_image())},
         {"a", rat_to_string(alg->structure_constant())},
         {"division_status", division_status_name(alg->division_status())}};
  if (alg->zero_divisor_pair()) {
    auto mk = [&](const std::vector<Rat>& coords) {
      return algebra_element_json(AlgebraElement(alg, coords));
    };
    j["zero_divisor"] = Json{{"left", mk(alg->zero_divisor_pair()->first)},
                             {"right", mk(alg->zero_divisor_pair()->second)}};
  } else {
    j["zero_divisor"] = nullptr;
  }
  return j;
}

inline Json subfield_json(const SubfieldReport& r) {
  Json roots = Json::array();
  for (const Poly& p : r.roots.roots) roots.push_back(print_poly(p));
  Json realized = Json::array();
  for (const ConjugacyWitness& w : r.realized)
    realized.push_back(
        Json{{"root", print_poly(w.root)}, {"witness", algebra_element_json(w.witness)}});
  Json unrealized = Json::array();
  for (const Poly& p : r.unrealized_roots) unrealized.push_back(print_poly(p));
  return Json{{"generator", algebra_element_json(r.generator)},
              {"min_poly", print_poly(r.min_poly)},
              {"degree", r.degree},
              {"centralizer_dim", r.centralizer_dim},
              {"maximal", r.maximal},
              {"roots",
               Json{{"list", std::move(roots)},
                    {"height_reached", r.roots.height_reached},
                    {"complete", r.roots.complete}}},
              {"realized", std::move(realized)},
              {"unrealized", std::move(unrealized)},
              {"self_invariant", r.self_invariant}};
}

inline Json span_closure_json(const SpanClosureReport& r) {
  Json basis = Json::array();
  for (const AlgebraElement& b : r.basis) basis.push_back(algebra_element_json(b));
  return Json{{"basis", std::move(basis)},
              {"dim_over_F", r.dim_over_F},
              {"subfield_degree", r.subfield_degree},
              {"dim_over_subfield", r.dim_over_subfield},
              {"multiplicatively_closed", r.multiplicatively_closed},
              {"division_samples", r.division_samples},
              {"division_failures", r.division_failures}};
}

inline Json autocommutator_json(const AutocommutatorResult& r) {
  return Json{{"witness", print_poly(r.witness)},
              {"quotient", print_poly(r.quotient)},
              {"height_reached", r.height_reached}};
}

inline Json report_document(const std::string& command, std::uint64_t seed, Json result) {
  return Json{{"schema", "malcev.report/1"},
              {"command", command},
              {"seed", seed},
              {"result", std::move(result)}};
}

inline std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace malcev
