#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "localrat/axioms.hpp"
#include "localrat/choice.hpp"
#include "localrat/generate.hpp"
#include "localrat/io.hpp"
#include "localrat/rationalize.hpp"
#include "localrat/rules.hpp"

namespace localrat {

enum class VerifyMode { exhaustive, sample };

struct VerifyParams {
  int n = 3;
  VerifyMode mode = VerifyMode::exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct VerifyReport {
  std::string claim;
  std::string population;
  std::uint64_t checked = 0;
  std::vector<std::string> violations;  // empty iff the claim held everywhere
  std::vector<std::string> notes;       // e.g. counterexample tables a claim must exhibit
  double seconds = 0.0;

  bool pass() const { return violations.empty(); }
};

namespace detail {

// Static contiguous partition across workers; per-worker violation lists are
// concatenated in worker order, which preserves global population order.
// Exceptions thrown by a predicate count as violations of the scanned item.
template <class Fn>
inline void scan_population(std::uint64_t count, int workers,
                            std::vector<std::string>& violations, const Fn& fn) {
  if (count == 0) return;
  if (workers < 2) {
    Fn local = fn;
    for (std::uint64_t i = 0; i < count; ++i) {
      try {
        local(i, violations);
      } catch (const std::exception& e) {
        violations.push_back("item " + std::to_string(i) + ": exception: " + e.what());
      }
    }
    return;
  }
  std::vector<std::vector<std::string>> per(static_cast<size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    std::uint64_t lo = count * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
    std::uint64_t hi = count * (static_cast<std::uint64_t>(w) + 1) / static_cast<std::uint64_t>(workers);
    pool.emplace_back([&fn, &per, lo, hi, w] {
      Fn local = fn;
      auto& out = per[static_cast<size_t>(w)];
      for (std::uint64_t i = lo; i < hi; ++i) {
        try {
          local(i, out);
        } catch (const std::exception& e) {
          out.push_back("item " + std::to_string(i) + ": exception: " + e.what());
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& v : per) violations.insert(violations.end(), v.begin(), v.end());
}

using TableCheck = std::function<void(const ChoiceTable&, std::vector<std::string>&)>;

// Runs a per-table predicate over all tables (exhaustive, n <= 3) or seeded
// random tables.
inline VerifyReport run_table_claim(const std::string& name, const VerifyParams& pr,
                                    const TableCheck& check) {
  VerifyReport report;
  report.claim = name;
  if (pr.n < 2 || pr.n > 8)
    throw Error(Errc::out_of_range, "table claims support 2 <= n <= 8");
  Universe u = detail::letters_universe(pr.n);

  std::uint64_t count;
  if (pr.mode == VerifyMode::exhaustive) {
    if (pr.n > 3)
      throw Error(Errc::out_of_range, "exhaustive table scans support n <= 3");
    count = table_count(pr.n);
    report.population = "all " + std::to_string(count) + " choice tables on n=" +
                        std::to_string(pr.n) + " (exhaustive)";
  } else {
    if (pr.samples == 0)
      throw Error(Errc::out_of_range, "sample mode needs a positive sample count");
    count = pr.samples;
    report.population = std::to_string(count) + " seeded random tables on n=" +
                        std::to_string(pr.n) + " (seed " + std::to_string(pr.seed) + ")";
  }

  auto fn = [u, pr, check](std::uint64_t i, std::vector<std::string>& out) mutable {
    ChoiceTable c(u);
    if (pr.mode == VerifyMode::exhaustive) {
      table_for_index(i, c);
    } else {
      Rng rng(item_seed(pr.seed, i));
      random_table(rng, c);
    }
    check(c, out);
  };
  scan_population(count, pr.workers, report.violations, fn);
  report.checked = count;
  return report;
}

using MarginCheck =
    std::function<void(const MarginMatrix&, std::uint64_t seed, std::vector<std::string>&)>;

// Seeded random margin matrices, alternating the profile-derived generator
// (odd electorates, hence strict tournaments) with directly sampled
// skew-symmetric matrices (ties common).
inline VerifyReport run_margin_claim(const std::string& name, const VerifyParams& pr,
                                     const MarginCheck& check) {
  VerifyReport report;
  report.claim = name;
  if (pr.n < 2 || pr.n > 8)
    throw Error(Errc::out_of_range, "margin claims support 2 <= n <= 8");
  if (pr.mode == VerifyMode::exhaustive || pr.samples == 0)
    throw Error(Errc::out_of_range, "margin claims run in sample mode with a positive count");
  Universe u = detail::letters_universe(pr.n);
  report.population = std::to_string(pr.samples) + " seeded random margin matrices on n=" +
                      std::to_string(pr.n) + " (seed " + std::to_string(pr.seed) +
                      ", mixed profile/skew generators)";

  auto fn = [u, pr, check](std::uint64_t i, std::vector<std::string>& out) mutable {
    std::uint64_t s = item_seed(pr.seed, i);
    Rng rng(s);
    MarginMatrix m = (i % 2 == 0) ? random_margins_from_profile(u, rng)
                                  : random_margins_skew(u, rng);
    check(m, s, out);
  };
  scan_population(pr.samples, pr.workers, report.violations, fn);
  report.checked = pr.samples;
  return report;
}

using ProfileCheck = std::function<void(const Profile&, std::vector<std::string>&)>;

inline VerifyReport run_profile_claim(const std::string& name, const VerifyParams& pr,
                                      const ProfileCheck& check) {
  VerifyReport report;
  report.claim = name;
  if (pr.n < 2 || pr.n > 8)
    throw Error(Errc::out_of_range, "profile claims support 2 <= n <= 8");
  if (pr.mode == VerifyMode::exhaustive || pr.samples == 0)
    throw Error(Errc::out_of_range, "profile claims run in sample mode with a positive count");
  Universe u = detail::letters_universe(pr.n);
  report.population = std::to_string(pr.samples) + " seeded random profiles on n=" +
                      std::to_string(pr.n) + ", 1..9 voters (seed " + std::to_string(pr.seed) + ")";

  auto fn = [u, pr, check](std::uint64_t i, std::vector<std::string>& out) mutable {
    Rng rng(item_seed(pr.seed, i));
    Profile p = random_profile(u, 1 + static_cast<int>(rng.below(9)), rng);
    check(p, out);
  };
  scan_population(pr.samples, pr.workers, report.violations, fn);
  report.checked = pr.samples;
  return report;
}

// Finest-choice-function propositions: exhaustive or sampled complete base
// relations, each checked against every base-pinned completion.
inline VerifyReport run_prop_claim(const std::string& name, FinestProp prop,
                                   const VerifyParams& pr) {
  VerifyReport report;
  report.claim = name;
  if (pr.n < 2 || pr.n > 4)
    throw Error(Errc::out_of_range, "finest-function claims support 2 <= n <= 4");
  std::uint64_t bases = complete_relation_count(pr.n);
  std::uint64_t count;
  if (pr.mode == VerifyMode::exhaustive) {
    count = bases;
    report.population = "all " + std::to_string(bases) + " complete base relations on n=" +
                        std::to_string(pr.n) + " x " + std::to_string(base_pinned_count(pr.n)) +
                        " base-pinned tables (exhaustive)";
  } else {
    if (pr.samples == 0)
      throw Error(Errc::out_of_range, "sample mode needs a positive sample count");
    count = pr.samples;
    report.population = std::to_string(count) + " seeded base relations on n=" +
                        std::to_string(pr.n) + " x " + std::to_string(base_pinned_count(pr.n)) +
                        " base-pinned tables each (seed " + std::to_string(pr.seed) + ")";
  }

  const int n = pr.n;
  auto fn = [prop, pr, n, bases](std::uint64_t i, std::vector<std::string>& out) mutable {
    std::uint64_t index = pr.mode == VerifyMode::exhaustive
                              ? i
                              : Rng(item_seed(pr.seed, i)).below(bases);
    Relation base = complete_relation_for_index(index, n);
    Verdict v = finest_check(prop, base, ScanMode::exhaustive);
    if (!v.holds)
      out.push_back("base #" + std::to_string(index) + ": " + v.witness->what);
  };
  scan_population(count, pr.workers, report.violations, fn);
  report.checked = count;
  return report;
}

inline bool rationalized_by_revealed_preference(const ChoiceTable& c, const Relation& rc) {
  for (Mask a = 1; a <= c.universe.full_mask(); ++a)
    if (max_elements(rc, a) != c.at(a)) return false;
  return true;
}

}  // namespace detail

// ---- the claim catalog -----------------------------------------------------

inline const std::vector<std::string>& claim_names() {
  static const std::vector<std::string> names = {
      "theorem1",      "theorem2",      "theorem3",       "theorem4",
      "theorem5",      "corollary1",    "corollary2",     "corollary3",
      "lemma2",        "lemma3",        "figure1",        "prop1",
      "prop2",         "prop_bordes",   "prop_mckelvey",  "prop_deep",
      "scf_properties", "core_chain",   "core_uncovered", "hull_omni_pareto",
      "hull_copeland", "hull_alpha_epsilon",
  };
  return names;
}

inline VerifyReport verify_claim(const std::string& claim, VerifyParams pr) {
  using detail::run_margin_claim;
  using detail::run_profile_claim;
  using detail::run_prop_claim;
  using detail::run_table_claim;

  auto start = std::chrono::steady_clock::now();
  VerifyReport report;

  if (claim == "theorem1") {
    report = run_table_claim(claim, pr, [](const ChoiceTable& c, std::vector<std::string>& out) {
      bool gamma = holds(c, AxiomId::gamma);
      bool local = validate_family(c, local_revealed_preference(c)).holds;
      if (gamma != local)
        out.push_back((gamma ? "gamma holds but LRP family invalid: "
                             : "LRP family valid without gamma: ") +
                      table_compact(c));
    });
  } else if (claim == "theorem2" || claim == "theorem4" || claim == "theorem5") {
    RatClass level = claim == "theorem2" ? RatClass::quasi_transitive
                     : claim == "theorem4" ? RatClass::transitive
                                           : RatClass::pip_transitive;
    bool via_beta = claim == "theorem4";
    bool via_gamma_plus = claim == "theorem5";
    report = run_table_claim(
        claim, pr, [level, via_beta, via_gamma_plus](const ChoiceTable& c, std::vector<std::string>& out) {
          bool axioms = via_beta        ? holds(c, AxiomId::beta_plus)
                        : via_gamma_plus ? holds(c, AxiomId::gamma_plus)
                                         : holds(c, AxiomId::gamma) && holds(c, AxiomId::epsilon_plus);
          RelationFamily fam = local_revealed_preference(c);
          bool family = validate_family(c, fam).holds &&
                        localrat::detail::family_level(fam) >= level;
          if (axioms != family)
            out.push_back(std::string("axiom/family mismatch at level ") + rat_class_name(level) +
                          ": " + table_compact(c));
        });
  } else if (claim == "theorem3") {
    report = run_table_claim(claim, pr, [](const ChoiceTable& c, std::vector<std::string>& out) {
      ChoiceTable hull = gamma_hull(c);
      if (!(hull == hull_oracle(c))) {
        out.push_back("hull differs from fixpoint oracle: " + table_compact(c));
        return;
      }
      if (c.universe.size() <= 3 && !(hull == hull_intersection_oracle(c)))
        out.push_back("hull differs from intersection-of-coarsenings oracle: " + table_compact(c));
    });
  } else if (claim == "corollary1" || claim == "corollary2" || claim == "corollary3") {
    int which = claim == "corollary1" ? 1 : claim == "corollary2" ? 2 : 3;
    report = run_table_claim(claim, pr, [which](const ChoiceTable& c, std::vector<std::string>& out) {
      Relation rc = revealed_preference(c);
      bool rat = detail::rationalized_by_revealed_preference(c, rc);
      RelationClass cls = classify(rc);
      bool lhs, rhs;
      switch (which) {
        case 1:
          lhs = holds(c, AxiomId::alpha) && holds(c, AxiomId::gamma);
          rhs = rat;
          break;
        case 2:
          lhs = holds(c, AxiomId::alpha) && holds(c, AxiomId::gamma) &&
                holds(c, AxiomId::epsilon_plus);
          rhs = rat && cls.quasi_transitive;
          break;
        default:
          lhs = holds(c, AxiomId::alpha) && holds(c, AxiomId::beta_plus);
          rhs = rat && cls.transitive;
          break;
      }
      if (lhs != rhs)
        out.push_back("corollary" + std::to_string(which) + " mismatch: " + table_compact(c));
    });
  } else if (claim == "lemma2") {
    report = run_table_claim(claim, pr, [](const ChoiceTable& c, std::vector<std::string>& out) {
      if (!holds(c, AxiomId::alpha)) return;
      Relation rc = revealed_preference(c);
      RelationFamily fam = local_revealed_preference(c);
      for (Mask a = 1; a <= c.universe.full_mask(); ++a)
        if (!(fam.at(a) == restrict_to(rc, a))) {
          out.push_back("alpha holds but LRP is not the restriction of revealed preference: " +
                        table_compact(c));
          return;
        }
    });
  } else if (claim == "lemma3") {
    report = run_table_claim(claim, pr, [](const ChoiceTable& c, std::vector<std::string>& out) {
      Relation rc = revealed_preference(c);
      if (detail::rationalized_by_revealed_preference(c, rc) && !holds(c, AxiomId::alpha))
        out.push_back("rationalizable table violating alpha: " + table_compact(c));
    });
  } else if (claim == "figure1") {
    report = run_table_claim(claim, pr, [](const ChoiceTable& c, std::vector<std::string>& out) {
      bool g = holds(c, AxiomId::gamma), e = holds(c, AxiomId::epsilon_plus);
      bool gp = holds(c, AxiomId::gamma_plus), bp = holds(c, AxiomId::beta_plus);
      if (bp && !gp) out.push_back("beta_plus without gamma_plus: " + table_compact(c));
      if (gp && !(g && e)) out.push_back("gamma_plus without gamma+epsilon_plus: " + table_compact(c));
    });
    ImplicationReport impl = implication_witnesses(pr.n);
    for (const auto& conv : impl.converses) {
      if (conv.witness)
        report.notes.push_back(conv.name + " (witness, n=" + std::to_string(conv.searched_n) +
                               "): " + table_compact(*conv.witness));
      else
        report.violations.push_back("no witness found: " + conv.name);
    }
  } else if (claim == "prop1" || claim == "prop2" || claim == "prop_bordes" ||
             claim == "prop_mckelvey" || claim == "prop_deep") {
    FinestProp prop = claim == "prop1"          ? FinestProp::uc_gillies_prop1
                      : claim == "prop2"        ? FinestProp::top_cycle_prop2
                      : claim == "prop_bordes"  ? FinestProp::bordes_variant
                      : claim == "prop_mckelvey" ? FinestProp::mckelvey_variant
                                                 : FinestProp::deep_variant;
    report = run_prop_claim(claim, prop, pr);
  } else if (claim == "scf_properties") {
    report = run_margin_claim(
        claim, pr, [](const MarginMatrix& m, std::uint64_t seed, std::vector<std::string>& out) {
          const Universe& u = m.universe;
          const Mask full = u.full_mask();
          bool tournament = true;
          for (int x = 0; x < u.size(); ++x)
            for (int y = 0; y < u.size(); ++y)
              if (x != y && m.at(x, y) == 0) tournament = false;

          ChoiceTable split = rule_table(RuleId::split_cycle, m);
          if (!holds(split, AxiomId::gamma))
            out.push_back("split cycle violates gamma: " + serialize_margins(m));

          Rng rng(seed + 1);
          TieBreakOrder tie = random_tie_break(u, rng);
          ChoiceTable ts = rule_table(RuleId::two_stage, m, &tie);
          if (!holds(ts, AxiomId::gamma))
            out.push_back("two-stage violates gamma: " + serialize_margins(m));
          if (tournament)
            for (Mask a = 1; a <= full; ++a)
              if (popcount(ts.at(a)) != 1) {
                out.push_back("two-stage not single-valued on a tournament: " +
                              serialize_margins(m));
                break;
              }

          ChoiceTable top = rule_table(RuleId::top_cycle, m);
          if (local_rat_class(top) != RatClass::transitive)
            out.push_back("top cycle misses beta_plus: " + serialize_margins(m));

          ChoiceTable gillies = rule_table(RuleId::uc_gillies, m);
          ChoiceTable bordes = rule_table(RuleId::uc_bordes, m);
          ChoiceTable mckelvey = rule_table(RuleId::uc_mckelvey, m);
          ChoiceTable deep = rule_table(RuleId::uc_deep, m);
          for (const auto* uc : {&gillies, &bordes, &mckelvey, &deep})
            if (local_rat_class(*uc) < RatClass::quasi_transitive) {
              out.push_back("uncovered-set variant misses gamma+epsilon_plus: " +
                            serialize_margins(m));
              break;
            }
          if (!is_refinement(gillies, mckelvey) || !is_refinement(bordes, mckelvey) ||
              !is_refinement(mckelvey, deep) || !is_refinement(deep, top))
            out.push_back("uncovered-set inclusion chain broken: " + serialize_margins(m));
          if (tournament && !(gillies == bordes && bordes == mckelvey && mckelvey == deep))
            out.push_back("uncovered-set variants differ on a tournament: " +
                          serialize_margins(m));
        });
  } else if (claim == "core_chain") {
    report = run_table_claim(claim, pr, [](const ChoiceTable& c, std::vector<std::string>& out) {
      ChoiceTable hull = gamma_hull(c);
      for (PathMode mode : {PathMode::simple, PathMode::walk}) {
        ChoiceTable weak = weak_gamma_core(c, mode);    // validates its family
        ChoiceTable strict = strict_gamma_core(c, mode);
        if (!is_refinement(strict, weak) || !is_refinement(weak, hull)) {
          out.push_back(std::string("core chain broken (") +
                        (mode == PathMode::simple ? "simple paths" : "walks") +
                        "): " + table_compact(c));
          return;
        }
      }
    });
  } else if (claim == "core_uncovered") {
    report = run_margin_claim(
        claim, pr, [](const MarginMatrix& m, std::uint64_t, std::vector<std::string>& out) {
          for (RuleId rule : {RuleId::uc_gillies, RuleId::uc_bordes, RuleId::uc_mckelvey,
                              RuleId::uc_deep}) {
            ChoiceTable uc = rule_table(rule, m);
            for (PathMode mode : {PathMode::simple, PathMode::walk})
              if (!(weak_gamma_core(uc, mode) == uc)) {
                out.push_back(std::string("weak gamma-core moves ") + rule_name(rule) + ": " +
                              serialize_margins(m));
                return;
              }
          }
        });
  } else if (claim == "hull_omni_pareto") {
    report = run_profile_claim(claim, pr, [](const Profile& p, std::vector<std::string>& out) {
      MarginMatrix m = margins_from_profile(p);
      ChoiceTable omni = rule_table(RuleId::omninomination, m, nullptr, &p);
      ChoiceTable pareto = rule_table(RuleId::pareto, m, nullptr, &p);
      if (!(gamma_hull(omni) == pareto))
        out.push_back("hull of omninomination is not the Pareto rule: " + serialize_profile(p));
    });
  } else if (claim == "hull_copeland") {
    report = run_profile_claim(claim, pr, [](const Profile& p, std::vector<std::string>& out) {
      MarginMatrix m = margins_from_profile(p);
      ChoiceTable cop = rule_table(RuleId::copeland, m, nullptr, &p);
      ChoiceTable top = rule_table(RuleId::top_cycle, m);
      if (!is_refinement(gamma_hull(cop), top))
        out.push_back("hull of Copeland leaves the top cycle: " + serialize_profile(p));
    });
  } else if (claim == "hull_alpha_epsilon") {
    report = run_table_claim(claim, pr, [](const ChoiceTable& c, std::vector<std::string>& out) {
      ChoiceTable hull = gamma_hull(c);
      if (holds(c, AxiomId::alpha) && standard_rat_class(hull) == RatClass::none)
        out.push_back("alpha table with unrationalizable hull: " + table_compact(c));
      if (holds(c, AxiomId::epsilon_plus) && !holds(hull, AxiomId::epsilon_plus))
        out.push_back("hull loses epsilon_plus: " + table_compact(c));
    });
  } else {
    std::string known;
    for (const auto& name : claim_names()) known += (known.empty() ? "" : ", ") + name;
    throw Error(Errc::unknown_claim, "unknown claim '" + claim + "'; known claims: " + known);
  }

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace localrat
