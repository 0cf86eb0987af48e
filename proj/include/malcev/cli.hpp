#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "malcev/parse.hpp"
#include "malcev/report.hpp"
#include "malcev/session.hpp"

namespace malcev {

// Exit codes: 0 success (a probe that finds its violation still succeeds),
// 1 a checked mathematical guarantee failed, 2 bad usage or unparsable
// input, 3 a resource cap was hit.
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

namespace cli {

inline std::string ord_symbol(Ord o) {
  switch (o) {
    case Ord::less: return "<";
    case Ord::equal: return "==";
    case Ord::greater: return ">";
  }
  return "?";
}

inline void emit(std::ostream& out, const SessionConfig& cfg, const std::string& command,
                 const Json& structured, const std::string& text) {
  if (cfg.format == OutputFormat::structured)
    out << dump_report(report_document(command, cfg.seed, structured));
  else
    out << text;
}

inline int cmd_order(std::ostream& out, const SessionConfig& cfg, const std::string& lhs,
                     const std::string& rhs) {
  Word u = parse_word(lhs);
  Word w = parse_word(rhs);
  Ord o = magnus_compare(u, w, cfg.order_degree_cap);
  std::string rel = ord_symbol(o);
  emit(out, cfg, "order",
       Json{{"left", print_word(u)}, {"right", print_word(w)}, {"relation", rel}},
       print_word(u) + " " + rel + " " + print_word(w) + "\n");
  return 0;
}

inline int cmd_eval(std::ostream& out, const SessionConfig& cfg, const std::string& expr,
                    bool invert) {
  Series s = eval_series(expr, cfg.context(), cfg.invert_depth, cfg.field_d);
  if (invert) s = s.inverted(cfg.invert_depth);
  emit(out, cfg, invert ? "invert" : "eval", series_json(s), print_series(s) + "\n");
  return 0;
}

inline int cmd_probe_selfinv(std::ostream& out, const SessionConfig& cfg, const std::string& h_str,
                             const std::string& gamma_str, long long lmin, long long lmax) {
  ContextPtr ctx = cfg.context();
  Word h = parse_word(h_str);
  Series gamma = eval_series(gamma_str, ctx, cfg.invert_depth, cfg.field_d);
  SelfInvarianceProbe p = self_invariance_probe(gamma, h, lmin, lmax, cfg.invert_depth);

  std::ostringstream text;
  text << "h = " << print_word(p.h) << "\n";
  text << "gamma = " << print_series(p.gamma) << "\n";
  text << "on <h>: " << print_series(p.on_part) << "\n";
  text << "off <h>: " << print_series(p.off_part) << "\n";
  if (p.violation) {
    text << "violation at l = " << p.exponent << ": conjugate "
         << print_series(*p.conjugate_series) << "\n";
    text << "witness off <h>: " << print_word(*p.verdict->witness) << "\n";
    text << "side: " << violation_side_name(*p.side) << "\n";
  } else {
    text << "no violation for l in [" << lmin << ", " << lmax
         << "] (inconclusive: windows may hide support)\n";
  }
  emit(out, cfg, "probe-selfinv", probe_json(p), text.str());
  return 0;
}

inline int cmd_chain(std::ostream& out, const SessionConfig& cfg, const std::string& g_str,
                     int depth, int ball, int samples) {
  ContextPtr ctx = cfg.context();
  Word g = parse_word(g_str);
  Sampler sampler(cfg.seed);
  ChainReport r = chain_report(ctx, g, depth, ball, samples, sampler,
                               static_cast<std::size_t>(cfg.ball_budget), cfg.invert_depth);

  std::ostringstream text;
  text << "g = " << print_word(r.g) << ", length bound " << r.length_bound << ", depth "
       << r.max_depth << "\n";
  for (const LevelEvidence& l : r.levels) {
    text << "depth " << l.depth << ": ball size " << l.ball_size << ", subset of previous "
         << (l.subset_of_previous ? "yes" : "no") << ", samples " << l.samples
         << ", morphism failures " << l.morphism_failures << ", certificate failures "
         << l.certificate_failures;
    if (l.erasure_checks > 0)
      text << ", erasure " << (l.erasure_checks - l.erasure_failures) << "/" << l.erasure_checks
           << " ok";
    text << "\n";
  }
  text << "chain evidence: " << (r.ok ? "ok" : "FAILED") << "\n";
  emit(out, cfg, "chain", chain_json(r), text.str());
  return r.ok ? 0 : 1;
}

inline int cmd_cyclic(std::ostream& out, const SessionConfig& cfg, const std::string& preset,
                      const std::string& mode, const std::vector<std::string>& args) {
  AlgebraPtr alg = cfg.make_algebra(preset);

  if (mode == "report") {
    if (!args.empty()) throw domain_error("cyclic report takes no further arguments");
    std::ostringstream text;
    text << "algebra " << alg->name() << ": modulus " << print_poly(alg->modulus()) << ", sigma "
         << print_poly(alg->sigma_image()) << ", a = " << rat_to_string(alg->structure_constant())
         << "\n";
    text << "dimension " << alg->dimension() << " over Q, status "
         << division_status_name(alg->division_status()) << "\n";
    if (alg->zero_divisor_pair()) {
      AlgebraElement l(alg, alg->zero_divisor_pair()->first);
      AlgebraElement r(alg, alg->zero_divisor_pair()->second);
      text << "zero divisors: (" << print_algebra_element(l) << ") * ("
           << print_algebra_element(r) << ") = " << print_algebra_element(l * r) << "\n";
    }
    emit(out, cfg, "cyclic report", algebra_json(alg), text.str());
    return 0;
  }

  if (mode == "selfinv") {
    if (args.size() != 1) throw domain_error("cyclic selfinv needs exactly one generator");
    AlgebraElement w = parse_algebra_element(args[0], alg);
    SubfieldReport rep = subfield_report(w, cfg.galois_height_start, cfg.galois_height_cap);
    std::ostringstream text;
    text << "generator " << print_algebra_element(rep.generator) << ", min poly "
         << print_poly(rep.min_poly) << ", degree " << rep.degree << "\n";
    text << "centralizer dimension " << rep.centralizer_dim << ", maximal "
         << (rep.maximal ? "yes" : "no") << "\n";
    text << "roots in the subfield (height " << rep.roots.height_reached << "):";
    for (const Poly& r : rep.roots.roots) text << " " << print_poly(r) << ";";
    text << (rep.roots.complete ? " all roots present" : " possibly incomplete") << "\n";
    for (const ConjugacyWitness& cw : rep.realized)
      text << "realized by conjugation: root " << print_poly(cw.root) << ", witness "
           << print_algebra_element(cw.witness) << "\n";
    for (const Poly& r : rep.unrealized_roots)
      text << "not realized by any unit: " << print_poly(r) << "\n";
    text << "self-invariant: " << (rep.self_invariant ? "yes" : "no") << "\n";
    emit(out, cfg, "cyclic selfinv", subfield_json(rep), text.str());
    return 0;
  }

  if (mode == "span") {
    if (args.size() != 2) throw domain_error("cyclic span needs a generator and an element");
    AlgebraElement k = parse_algebra_element(args[0], alg);
    AlgebraElement x = parse_algebra_element(args[1], alg);
    Sampler sampler(cfg.seed);
    SpanClosureReport rep = span_closure(power_basis(k), x, sampler, 25);
    std::ostringstream text;
    text << "closure of Q(" << print_algebra_element(k) << ") and " << print_algebra_element(x)
         << ": dimension " << rep.dim_over_F << " over Q, " << rep.dim_over_subfield
         << " over the subfield (degree " << rep.subfield_degree << ")\n";
    text << "multiplicatively closed: " << (rep.multiplicatively_closed ? "yes" : "no")
         << ", division samples " << rep.division_samples << ", failures "
         << rep.division_failures << "\n";
    for (const AlgebraElement& b : rep.basis)
      text << "basis: " << print_algebra_element(b) << "\n";
    emit(out, cfg, "cyclic span", span_closure_json(rep), text.str());
    return 0;
  }

  if (mode == "autocomm") {
    if (args.size() != 1) throw domain_error("cyclic autocomm needs exactly one generator");
    AlgebraElement w = parse_algebra_element(args[0], alg);
    Poly m = w.min_poly();
    GaloisRootSearch roots =
        galois_roots_of(m, cfg.galois_height_start, cfg.galois_height_cap);
    std::optional<Poly> nontrivial;
    for (const Poly& r : roots.roots)
      // compare modulo m so the identity is recognized even when the variable reduces
      if (!((r - Poly::variable()).mod(m)).is_zero()) {
        nontrivial = r;
        break;
      }
    if (!nontrivial) {
      emit(out, cfg, "cyclic autocomm",
           Json{{"min_poly", print_poly(m)}, {"root", nullptr}, {"probe", nullptr}},
           "no nontrivial root of " + print_poly(m) + " inside the subfield; nothing to probe\n");
      return 0;
    }
    AutocommutatorResult rep = autocommutator_probe(w, *nontrivial, cfg.galois_height_cap);
    std::ostringstream text;
    text << "automorphism: " << print_poly(m, "t") << " root " << print_poly(*nontrivial)
         << "\n";
    text << "witness q = " << print_poly(rep.witness) << " (height " << rep.height_reached
         << ")\n";
    text << "quotient q(w)^-1 tau(q(w)) = " << print_poly(rep.quotient)
         << ", outside the ground field\n";
    emit(out, cfg, "cyclic autocomm",
         Json{{"min_poly", print_poly(m)},
              {"root", print_poly(*nontrivial)},
              {"probe", autocommutator_json(rep)}},
         text.str());
    return 0;
  }

  throw domain_error("cyclic mode must be report, selfinv, span, or autocomm");
}

}  // namespace cli

inline int run_command_streams(const std::vector<std::string>& args, std::ostream& out,
                               std::ostream& err) {
  CLI::App app{"exact workbench for ordered-group series and cyclic algebras"};
  app.name("malcev");
  app.require_subcommand(1);
  // probe-selfinv owns --h, so help answers only to --help
  app.set_help_flag("--help", "print help and exit");

  std::string config_path;
  std::string format_name;
  std::uint64_t seed = 0;
  auto* opt_config = app.add_option("--config", config_path, "JSON config file");
  auto* opt_format =
      app.add_option("--format", format_name, "output format: text or structured");
  auto* opt_seed = app.add_option("--seed", seed, "sampler seed");

  auto* sub_order = app.add_subcommand("order", "compare two words in the Magnus order");
  std::string order_lhs, order_rhs;
  sub_order->add_option("left", order_lhs, "word")->required();
  sub_order->add_option("right", order_rhs, "word")->required();

  auto* sub_eval = app.add_subcommand("eval", "evaluate a series expression");
  std::string eval_expr;
  int eval_depth = -1;
  sub_eval->add_option("expr", eval_expr, "expression")->required();
  sub_eval->add_option("--depth", eval_depth, "inversion depth");

  auto* sub_invert = app.add_subcommand("invert", "invert a series expression");
  std::string invert_expr;
  int invert_depth_flag = -1;
  sub_invert->add_option("expr", invert_expr, "expression")->required();
  sub_invert->add_option("--depth", invert_depth_flag, "inversion depth");

  auto* sub_probe = app.add_subcommand("probe-selfinv",
                                       "probe a cyclic subgroup's series for self-invariance");
  std::string probe_h, probe_gamma;
  long long probe_lmin = 0, probe_lmax = 0;
  sub_probe->add_option("--h", probe_h, "positive word generating the subgroup")->required();
  sub_probe->add_option("--gamma", probe_gamma, "series expression")->required();
  sub_probe->add_option("--lmin", probe_lmin, "smallest exponent")->required();
  sub_probe->add_option("--lmax", probe_lmax, "largest exponent")->required();

  auto* sub_chain = app.add_subcommand("chain", "audit the normal-closure chain of a word");
  std::string chain_g;
  int chain_depth = 0, chain_ball = 0, chain_samples = 50;
  sub_chain->add_option("--g", chain_g, "chain generator word")->required();
  sub_chain->add_option("--depth", chain_depth, "chain depth")->required();
  sub_chain->add_option("--ball", chain_ball, "ball length bound")->required();
  sub_chain->add_option("--samples", chain_samples, "samples per level");

  auto* sub_cyclic = app.add_subcommand("cyclic", "finite-dimensional cyclic algebra reports");
  std::string cyc_preset, cyc_mode;
  std::vector<std::string> cyc_args;
  sub_cyclic->add_option("--preset", cyc_preset, "lam-14-16, quaternion, or custom")->required();
  sub_cyclic->add_option("mode", cyc_mode, "report, selfinv, span, or autocomm")->required();
  sub_cyclic->add_option("args", cyc_args, "mode arguments");

  for (auto* sub : {sub_order, sub_eval, sub_invert, sub_probe, sub_chain, sub_cyclic}) {
    sub->fallthrough();
    sub->set_help_flag("--help", "print help and exit");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    SessionConfig cfg;
    if (opt_config->count() > 0) cfg = load_config_file(config_path);
    apply_env_overrides(cfg);
    if (opt_seed->count() > 0) cfg.seed = seed;
    if (opt_format->count() > 0) {
      if (format_name == "text")
        cfg.format = OutputFormat::text;
      else if (format_name == "structured")
        cfg.format = OutputFormat::structured;
      else
        throw domain_error("--format must be 'text' or 'structured'");
    }
    if (sub_eval->parsed() && eval_depth >= 0) cfg.invert_depth = eval_depth;
    if (sub_invert->parsed() && invert_depth_flag >= 0) cfg.invert_depth = invert_depth_flag;
    cfg.validate();

    if (sub_order->parsed()) return cli::cmd_order(out, cfg, order_lhs, order_rhs);
    if (sub_eval->parsed()) return cli::cmd_eval(out, cfg, eval_expr, false);
    if (sub_invert->parsed()) return cli::cmd_eval(out, cfg, invert_expr, true);
    if (sub_probe->parsed())
      return cli::cmd_probe_selfinv(out, cfg, probe_h, probe_gamma, probe_lmin, probe_lmax);
    if (sub_chain->parsed())
      return cli::cmd_chain(out, cfg, chain_g, chain_depth, chain_ball, chain_samples);
    if (sub_cyclic->parsed()) return cli::cmd_cyclic(out, cfg, cyc_preset, cyc_mode, cyc_args);
    throw domain_error("no command given");
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const resource_cap_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const violation_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 3;
  }
}

inline CommandResult run_command(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_command_streams(args, out, err);
  return CommandResult{code, out.str(), err.str()};
}

}  // namespace malcev
