#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "localrat/axioms.hpp"
#include "localrat/io.hpp"
#include "localrat/rationalize.hpp"
#include "localrat/rules.hpp"
#include "localrat/verify.hpp"

namespace localrat {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::syntax_error, "cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, sep)) out.push_back(tok);
  return out;
}

inline Mask parse_feasible(const Universe& u, const std::string& csv) {
  Mask a = 0;
  for (const auto& label : split_on(csv, ',')) {
    int idx = u.index(label);
    if (idx < 0)
      throw Error(Errc::unknown_alternative, "unknown alternative '" + label + "'");
    a |= bit(idx);
  }
  if (a == 0) throw Error(Errc::syntax_error, "empty feasible set");
  return a;
}

inline TieBreakOrder parse_tie_break(const Universe& u, const std::string& text) {
  std::vector<int> best_first;
  for (const auto& label : split_on(text, '>')) {
    int idx = u.index(label);
    if (idx < 0)
      throw Error(Errc::unknown_alternative, "unknown alternative '" + label + "' in tie-break");
    best_first.push_back(idx);
  }
  return TieBreakOrder(u, best_first);
}

inline RuleId parse_rule(const std::string& name) {
  for (RuleId r : {RuleId::top_cycle, RuleId::uc_gillies, RuleId::uc_bordes,
                   RuleId::uc_mckelvey, RuleId::uc_deep, RuleId::split_cycle,
                   RuleId::two_stage, RuleId::copeland, RuleId::borda,
                   RuleId::omninomination, RuleId::pareto})
    if (name == rule_name(r)) return r;
  throw Error(Errc::syntax_error, "unknown rule '" + name + "'");
}

inline std::string witness_string(const Universe& u, const Witness& w) {
  std::string out = "(A=" + set_to_string(u, w.a);
  if (w.b) out += " B=" + set_to_string(u, w.b);
  if (w.element >= 0) out += " " + u.label(w.element);
  return out + ")";
}

inline void print_report(const VerifyReport& report, std::ostream& out, std::ostream& err) {
  out << "claim: " << report.claim << "\n";
  out << "population: " << report.population << "\n";
  out << "checked: " << report.checked << "\n";
  out << "violations: " << report.violations.size() << "\n";
  for (const auto& v : report.violations) out << "  - " << v << "\n";
  for (const auto& n : report.notes) out << "note: " << n << "\n";
  out << "result: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  err << "elapsed: " << report.seconds << "s\n";
}

}  // namespace detail

// The command-line front end, callable in-process so its output can be
// pinned byte-for-byte in tests. Exit codes: 0 success, 1 a checked property
// or verdict failed, 2 usage/parse errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite choice functions: local rationalizability, gamma-hulls/cores, "
               "majoritarian rules, and a theorem-verification harness"};
  app.require_subcommand(1);

  // winners
  std::string rule_str, profile_path, margins_path, feasible_csv, tiebreak_str;
  auto* winners = app.add_subcommand("winners", "evaluate a social choice rule on a feasible set");
  winners->add_option("--rule", rule_str,
                      "topcycle|uc-gillies|uc-bordes|uc-mckelvey|uc-deep|splitcycle|tsmc|"
                      "copeland|borda|omni|pareto")
      ->required();
  auto* opt_profile = winners->add_option("--profile", profile_path, "ballot profile file (.prof)");
  auto* opt_margins = winners->add_option("--margins", margins_path, "margin matrix file (.mg)");
  opt_profile->excludes(opt_margins);
  winners->add_option("--feasible", feasible_csv, "comma-separated alternatives (default: all)");
  winners->add_option("--tiebreak", tiebreak_str, "strict order l1>l2>... (required for tsmc)");

  // table-based commands
  std::string table_path, set_csv, variant = "weak";
  bool use_oracle = false, use_walk = false;
  auto* axioms_cmd = app.add_subcommand("axioms", "check all consistency conditions of a table");
  axioms_cmd->add_option("--table", table_path, "choice table file (.ct)")->required();
  auto* rational_cmd = app.add_subcommand("rational", "local and standard rationalizability class");
  rational_cmd->add_option("--table", table_path, "choice table file (.ct)")->required();
  auto* lrp_cmd = app.add_subcommand("lrp", "local revealed preference relation on one set");
  lrp_cmd->add_option("--table", table_path, "choice table file (.ct)")->required();
  lrp_cmd->add_option("--set", set_csv, "comma-separated alternatives")->required();
  auto* hull_cmd = app.add_subcommand("hull", "gamma-hull of a table");
  hull_cmd->add_option("--table", table_path, "choice table file (.ct)")->required();
  hull_cmd->add_flag("--oracle", use_oracle, "use the fixpoint-repair oracle instead");
  auto* core_cmd = app.add_subcommand("core", "weak or strict gamma-core of a table");
  core_cmd->add_option("--table", table_path, "choice table file (.ct)")->required();
  core_cmd->add_option("--variant", variant, "weak|strict")->required();
  core_cmd->add_flag("--walk", use_walk, "read core paths as covering walks");

  // verify
  std::string claim;
  int n = 3, workers = 1;
  std::uint64_t samples = 0, seed = 0;
  bool exhaustive = false;
  auto* verify_cmd = app.add_subcommand("verify", "machine-check one of the registered claims");
  verify_cmd->add_option("--claim", claim, "claim identifier (see README)")->required();
  verify_cmd->add_option("--n", n, "number of alternatives")->required();
  verify_cmd->add_flag("--exhaustive", exhaustive, "scan the whole population");
  verify_cmd->add_option("--samples", samples, "number of seeded samples");
  verify_cmd->add_option("--seed", seed, "PRNG seed for sampled populations");
  verify_cmd->add_option("--workers", workers, "worker threads (default 1)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (winners->parsed()) {
      RuleId rule = detail::parse_rule(rule_str);
      Profile profile{Universe{{"_"}}};
      bool have_profile = false;
      MarginMatrix m;
      if (!profile_path.empty()) {
        profile = parse_profile(detail::read_file(profile_path));
        m = margins_from_profile(profile);
        have_profile = true;
      } else if (!margins_path.empty()) {
        m = parse_margins(detail::read_file(margins_path));
      } else {
        err << "winners needs --profile or --margins\n";
        return 2;
      }
      const Universe& u = m.universe;
      Mask a = feasible_csv.empty() ? u.full_mask() : detail::parse_feasible(u, feasible_csv);
      TieBreakOrder tie{u, [&] {
                          std::vector<int> ident(static_cast<size_t>(u.size()));
                          for (int i = 0; i < u.size(); ++i) ident[static_cast<size_t>(i)] = i;
                          return ident;
                        }()};
      bool have_tie = !tiebreak_str.empty();
      if (have_tie) tie = detail::parse_tie_break(u, tiebreak_str);
      Mask win = evaluate_rule(rule, m, a, have_tie ? &tie : nullptr,
                               have_profile ? &profile : nullptr);
      out << labels_line(u, win) << "\n";
      return 0;
    }

    if (axioms_cmd->parsed()) {
      ChoiceTable c = parse_choice_table(detail::read_file(table_path));
      bool any_fail = false;
      for (AxiomId id : all_axioms()) {
        Verdict v = check_axiom(c, id);
        out << axiom_name(id) << ": " << (v.holds ? "PASS" : "FAIL");
        if (!v.holds) {
          out << " " << detail::witness_string(c.universe, *v.witness);
          any_fail = true;
        }
        out << "\n";
      }
      return any_fail ? 1 : 0;
    }

    if (rational_cmd->parsed()) {
      ChoiceTable c = parse_choice_table(detail::read_file(table_path));
      out << "local: " << rat_class_name(local_rat_class(c)) << "\n";
      out << "standard: " << rat_class_name(standard_rat_class(c)) << "\n";
      return 0;
    }

    if (lrp_cmd->parsed()) {
      ChoiceTable c = parse_choice_table(detail::read_file(table_path));
      Mask a = detail::parse_feasible(c.universe, set_csv);
      RelationFamily fam = local_revealed_preference(c);
      const Relation& r = fam.at(a);
      auto labels = sorted_labels(c.universe, a);
      for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j) {
          int x = c.universe.index(labels[i]);
          int y = c.universe.index(labels[j]);
          if (r.has(x, y) && !r.has(y, x))
            out << labels[i] << " P " << labels[j] << "\n";
          else if (r.has(y, x) && !r.has(x, y))
            out << labels[j] << " P " << labels[i] << "\n";
          else
            out << labels[i] << " I " << labels[j] << "\n";
        }
      out << "max: " << labels_line(c.universe, max_elements(r, a)) << "\n";
      return 0;
    }

    if (hull_cmd->parsed()) {
      ChoiceTable c = parse_choice_table(detail::read_file(table_path));
      out << serialize_table(use_oracle ? hull_oracle(c) : gamma_hull(c));
      return 0;
    }

    if (core_cmd->parsed()) {
      ChoiceTable c = parse_choice_table(detail::read_file(table_path));
      if (variant != "weak" && variant != "strict") {
        err << "--variant must be weak or strict\n";
        return 2;
      }
      PathMode mode = use_walk ? PathMode::walk : PathMode::simple;
      out << serialize_table(variant == "weak" ? weak_gamma_core(c, mode)
                                               : strict_gamma_core(c, mode));
      return 0;
    }

    if (verify_cmd->parsed()) {
      VerifyParams params;
      params.n = n;
      params.workers = workers;
      if (exhaustive && samples)
        throw Error(Errc::syntax_error, "--exhaustive and --samples are mutually exclusive");
      params.mode = exhaustive ? VerifyMode::exhaustive : VerifyMode::sample;
      params.samples = samples;
      params.seed = seed;
      VerifyReport report = verify_claim(claim, params);
      detail::print_report(report, out, err);
      return report.pass() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "no subcommand given\n";
  return 2;
}

}  // namespace localrat
