#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "malcev/cyclic.hpp"
#include "malcev/series.hpp"

namespace malcev {

enum class OutputFormat { text, structured };

// Custom algebra triple as it appears in a config file: little-endian
// coefficient lists and the structure constant, all as exact strings.
struct AlgebraSpec {
  std::vector<Rat> modulus;
  std::vector<Rat> sigma;
  Rat a = 0;

  bool operator==(const AlgebraSpec&) const = default;
};

struct SessionConfig {
  int rank = 2;
  long long field_d = 0;  // 0 means plain rationals
  std::vector<std::string> twists;  // per generator, "id" or "conj"; empty means all id
  int invert_depth = 8;
  int order_degree_cap = kDefaultOrderDegreeCap;
  std::uint64_t ball_budget = 1000000;
  int galois_height_start = 8;
  int galois_height_cap = 32;
  int normalize_budget = 32;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::text;
  std::optional<AlgebraSpec> algebra;

  void validate() const {
    if (rank < 1 || rank > kMaxGenerators)
      throw domain_error("config: rank must be between 1 and " + std::to_string(kMaxGenerators));
    if (field_d != 0 && !is_square_free(field_d))
      throw domain_error("config: field discriminant must be square-free and not 0 or 1");
    if (!twists.empty() && static_cast<int>(twists.size()) != rank)
      throw domain_error("config: twists must list one action per generator");
    for (const std::string& t : twists) {
      if (t != "id" && t != "conj") throw domain_error("config: twist actions are 'id' or 'conj'");
      if (t == "conj" && field_d == 0)
        throw domain_error("config: a conj twist needs a quadratic coefficient field");
    }
    if (invert_depth < 0 || invert_depth > 64)
      throw domain_error("config: invert depth must be between 0 and 64");
    if (order_degree_cap < 2 || order_degree_cap > 512)
      throw domain_error("config: order degree cap must be between 2 and 512");
    if (ball_budget == 0) throw domain_error("config: ball budget must be positive");
    if (galois_height_start < 1 || galois_height_cap < galois_height_start)
      throw domain_error("config: root search heights must satisfy 1 <= start <= cap");
    if (normalize_budget < 1) throw domain_error("config: normalize budget must be positive");
  }

  TwistSpec twist_spec() const {
    TwistSpec tw = TwistSpec::untwisted(rank);
    for (std::size_t i = 0; i < twists.size(); ++i)
      if (twists[i] == "conj") tw.images[i] = FieldAut::conjugation;
    return tw;
  }

  ContextPtr context() const { return make_context(twist_spec(), order_degree_cap); }

  AlgebraPtr make_algebra(const std::string& preset_or_custom) const {
    if (preset_or_custom == "custom") {
      if (!algebra) throw domain_error("config: preset 'custom' needs an algebra section");
      return CyclicAlgebra::make(Poly::from_coefficients(algebra->modulus),
                                 Poly::from_coefficients(algebra->sigma), algebra->a,
                                 DivisionStatus::unknown, "custom");
    }
    return CyclicAlgebra::preset(preset_or_custom);
  }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known,
                                const std::string& where) {
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw domain_error("config: unknown key '" + item.key() + "' in " + where);
}

inline std::vector<Rat> rat_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw domain_error("config: " + where + " must be an array of strings");
  std::vector<Rat> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw domain_error("config: " + where + " entries must be strings");
    out.push_back(rat_from_string(v.get<std::string>()));
  }
  return out;
}

}  // namespace detail

inline SessionConfig config_from_json(const nlohmann::json& j) {
  SessionConfig cfg;
  detail::reject_unknown_keys(
      j,
      {"rank", "field_d", "twists", "invert_depth", "order_degree_cap", "ball_budget",
       "galois_height_start", "galois_height_cap", "normalize_budget", "seed", "format",
       "algebra"},
      "config");
  if (j.contains("rank")) cfg.rank = j.at("rank").get<int>();
  if (j.contains("field_d")) cfg.field_d = j.at("field_d").get<long long>();
  if (j.contains("twists")) cfg.twists = j.at("twists").get<std::vector<std::string>>();
  if (j.contains("invert_depth")) cfg.invert_depth = j.at("invert_depth").get<int>();
  if (j.contains("order_degree_cap")) cfg.order_degree_cap = j.at("order_degree_cap").get<int>();
  if (j.contains("ball_budget")) cfg.ball_budget = j.at("ball_budget").get<std::uint64_t>();
  if (j.contains("galois_height_start"))
    cfg.galois_height_start = j.at("galois_height_start").get<int>();
  if (j.contains("galois_height_cap"))
    cfg.galois_height_cap = j.at("galois_height_cap").get<int>();
  if (j.contains("normalize_budget")) cfg.normalize_budget = j.at("normalize_budget").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("format")) {
    std::string f = j.at("format").get<std::string>();
    if (f == "text")
      cfg.format = OutputFormat::text;
    else if (f == "structured")
      cfg.format = OutputFormat::structured;
    else
      throw domain_error("config: format must be 'text' or 'structured'");
  }
  if (j.contains("algebra")) {
    const auto& a = j.at("algebra");
    detail::reject_unknown_keys(a, {"modulus", "sigma", "a"}, "algebra");
    AlgebraSpec spec;
    spec.modulus = detail::rat_list(a.at("modulus"), "algebra.modulus");
    spec.sigma = detail::rat_list(a.at("sigma"), "algebra.sigma");
    spec.a = rat_from_string(a.at("a").get<std::string>());
    cfg.algebra = std::move(spec);
  }
  return cfg;
}

inline SessionConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("config: ") + e.what(), 0, {});
  }
  return config_from_json(j);
}

// MALCEV_* variables slot between the config file and command-line flags
inline void apply_env_overrides(SessionConfig& cfg) {
  auto get = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v) return std::nullopt;
    return std::string(v);
  };
  auto as_ll = [](const std::string& name, const std::string& v) -> long long {
    try {
      std::size_t used = 0;
      long long x = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw domain_error("config: " + name + " must be an integer, got '" + v + "'");
    }
  };
  if (auto v = get("MALCEV_RANK")) cfg.rank = static_cast<int>(as_ll("MALCEV_RANK", *v));
  if (auto v = get("MALCEV_SEED"))
    cfg.seed = static_cast<std::uint64_t>(as_ll("MALCEV_SEED", *v));
  if (auto v = get("MALCEV_DEPTH"))
    cfg.invert_depth = static_cast<int>(as_ll("MALCEV_DEPTH", *v));
  if (auto v = get("MALCEV_ORDER_DEGREE_CAP"))
    cfg.order_degree_cap = static_cast<int>(as_ll("MALCEV_ORDER_DEGREE_CAP", *v));
  if (auto v = get("MALCEV_BALL_BUDGET"))
    cfg.ball_budget = static_cast<std::uint64_t>(as_ll("MALCEV_BALL_BUDGET", *v));
  if (auto v = get("MALCEV_FIELD_D")) cfg.field_d = as_ll("MALCEV_FIELD_D", *v);
  if (auto v = get("MALCEV_GALOIS_HEIGHT_CAP"))
    cfg.galois_height_cap = static_cast<int>(as_ll("MALCEV_GALOIS_HEIGHT_CAP", *v));
  if (auto v = get("MALCEV_NORMALIZE_BUDGET"))
    cfg.normalize_budget = static_cast<int>(as_ll("MALCEV_NORMALIZE_BUDGET", *v));
  if (auto v = get("MALCEV_FORMAT")) {
    if (*v == "text")
      cfg.format = OutputFormat::text;
    else if (*v == "structured")
      cfg.format = OutputFormat::structured;
    else
      throw domain_error("config: MALCEV_FORMAT must be 'text' or 'structured'");
  }
}

}  // namespace malcev
