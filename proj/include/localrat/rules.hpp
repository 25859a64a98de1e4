#pragma once

#include <string>
#include <vector>

#include "localrat/choice.hpp"
#include "localrat/generate.hpp"
#include "localrat/margins.hpp"
#include "localrat/profiles.hpp"
#include "localrat/rationalize.hpp"
#include "localrat/relation.hpp"

namespace localrat {

enum class RuleId {
  top_cycle,
  uc_gillies,
  uc_bordes,
  uc_mckelvey,
  uc_deep,
  split_cycle,
  two_stage,
  copeland,
  borda,
  omninomination,
  pareto,
};

inline const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::top_cycle: return "topcycle";
    case RuleId::uc_gillies: return "uc-gillies";
    case RuleId::uc_bordes: return "uc-bordes";
    case RuleId::uc_mckelvey: return "uc-mckelvey";
    case RuleId::uc_deep: return "uc-deep";
    case RuleId::split_cycle: return "splitcycle";
    case RuleId::two_stage: return "tsmc";
    case RuleId::borda: return "borda";
    case RuleId::copeland: return "copeland";
    case RuleId::omninomination: return "omni";
    case RuleId::pareto: return "pareto";
  }
  return "?";
}

inline bool rule_needs_profile(RuleId r) {
  return r == RuleId::copeland || r == RuleId::borda || r == RuleId::omninomination ||
         r == RuleId::pareto;
}

namespace detail {

// The covering-style relations, built from their weak displayed forms; the
// strict part is always derived as R minus its converse, never from the
// contraposed glosses.
inline Relation covering_relation(RuleId rule, const Relation& base, Mask a) {
  auto strict = strict_rows(base);
  Relation r;
  r.carrier = a;
  for_each_bit(a, [&](int x) {
    for_each_bit(a, [&](int y) {
      bool related = base.has(x, y);
      if (!related) {
        for_each_bit(a, [&](int z) {
          if (related) return;
          bool first = base.has(x, z) && ((strict[static_cast<size_t>(z)] >> y) & 1);
          bool second = ((strict[static_cast<size_t>(x)] >> z) & 1) && base.has(z, y);
          bool deep = base.has(x, z) && base.has(z, y);
          switch (rule) {
            case RuleId::uc_gillies: related = first; break;
            case RuleId::uc_bordes: related = second; break;
            case RuleId::uc_mckelvey: related = first || second; break;
            default: related = deep; break;
          }
        });
      }
      if (related) r.add(x, y);
    });
  });
  return r;
}

inline Relation split_cycle_relation(const MarginMatrix& m, Mask a) {
  PathStrengths st = maximin_path_strengths(m, a);
  Relation r;
  r.carrier = a;
  for_each_bit(a, [&](int x) {
    for_each_bit(a, [&](int y) {
      if (m.at(x, y) >= 0 || st.at(x, y) >= m.at(y, x)) r.add(x, y);
    });
  });
  return r;
}

inline Relation two_stage_relation(const MarginMatrix& m, const TieBreakOrder& tie, Mask a) {
  Relation r;
  r.carrier = a;
  for_each_bit(a, [&](int x) {
    for_each_bit(a, [&](int y) {
      bool related = m.at(x, y) >= 0;
      if (!related && tie.greater(x, y)) {
        for_each_bit(a, [&](int z) {
          if (m.at(z, y) > 0 && tie.greater(z, y)) related = true;
        });
      }
      if (related) r.add(x, y);
    });
  });
  return r;
}

}  // namespace detail

// Winners of one rule on one feasible set. Margin-based rules construct the
// displayed weak relation on `a` and take its maximal elements; the
// profile-based rules (copeland, borda, omninomination, pareto) score or
// filter directly.
inline Mask evaluate_rule(RuleId rule, const MarginMatrix& m, Mask a,
                          const TieBreakOrder* tie = nullptr, const Profile* p = nullptr) {
  if (a == 0 || !subset_of(a, m.universe.full_mask()))
    throw Error(Errc::carrier_mismatch, "feasible set does not fit the margin universe");
  if (rule == RuleId::two_stage && !tie)
    throw Error(Errc::missing_tie_break, "two-stage majoritarian choice needs a tie-break order");
  if (rule_needs_profile(rule) && !p)
    throw Error(Errc::missing_profile, std::string(rule_name(rule)) + " needs a ballot profile");

  const int n = m.universe.size();
  switch (rule) {
    case RuleId::top_cycle: {
      Relation closure = transitive_closure(restrict_to(majority_base(m), a));
      return max_elements(closure, a);
    }
    case RuleId::uc_gillies:
    case RuleId::uc_bordes:
    case RuleId::uc_mckelvey:
    case RuleId::uc_deep:
      return max_elements(detail::covering_relation(rule, majority_base(m), a), a);
    case RuleId::split_cycle:
      return max_elements(detail::split_cycle_relation(m, a), a);
    case RuleId::two_stage:
      return max_elements(detail::two_stage_relation(m, *tie, a), a);
    case RuleId::copeland: {
      int best = -2 * n;
      Mask winners = 0;
      for_each_bit(a, [&](int x) {
        int score = 0;
        for_each_bit(a, [&](int y) {
          if (m.at(x, y) > 0) ++score;
          if (m.at(x, y) < 0) --score;
        });
        if (score > best) best = score, winners = 0;
        if (score == best) winners |= bit(x);
      });
      return winners;
    }
    case RuleId::borda: {
      long best = -1;
      Mask winners = 0;
      for_each_bit(a, [&](int x) {
        long score = 0;
        for (const auto& b : p->ballots) {
          auto rank = Profile::ranks(b, n);
          for_each_bit(a, [&](int y) {
            if (rank[static_cast<size_t>(x)] < rank[static_cast<size_t>(y)]) score += b.count;
          });
        }
        if (score > best) best = score, winners = 0;
        if (score == best) winners |= bit(x);
      });
      return winners;
    }
    case RuleId::omninomination: {
      Mask winners = 0;
      for (const auto& b : p->ballots) {
        for (int rank = 0; rank < n; ++rank) {
          int alt = b.order[static_cast<size_t>(rank)];
          if (a & bit(alt)) {
            winners |= bit(alt);
            break;
          }
        }
      }
      return winners;
    }
    case RuleId::pareto: {
      Mask dominated = 0;
      for_each_bit(a, [&](int x) {
        for_each_bit(a, [&](int y) {
          if (y == x) return;
          bool unanimous = true;
          for (const auto& b : p->ballots) {
            auto rank = Profile::ranks(b, n);
            if (rank[static_cast<size_t>(y)] >= rank[static_cast<size_t>(x)]) unanimous = false;
          }
          if (unanimous) dominated |= bit(x);
        });
      });
      return a & ~dominated;
    }
  }
  return 0;
}

// Materializes a rule into a choice table. For the majority-based rules the
// result must be based on weak majority rule, i.e. its base relation equals
// majority_base(m); that is asserted defensively. The profile-based rules
// decide pairs by unanimity or scores rather than majority, so the assertion
// does not apply to them.
inline ChoiceTable rule_table(RuleId rule, const MarginMatrix& m,
                              const TieBreakOrder* tie = nullptr, const Profile* p = nullptr) {
  ChoiceTable out(m.universe);
  for (Mask a = 1; a <= m.universe.full_mask(); ++a)
    out.set(a, evaluate_rule(rule, m, a, tie, p));
  if (!rule_needs_profile(rule)) {
    if (!(base_relation(out) == majority_base(m)))
      throw Error(Errc::base_mismatch,
                  std::string(rule_name(rule)) + " table is not based on majority rule");
  }
  return out;
}

// ---- finest-choice-function checks ----------------------------------------

enum class FinestProp {
  uc_gillies_prop1,
  top_cycle_prop2,
  bordes_variant,
  mckelvey_variant,
  deep_variant,
};

enum class ScanMode { exhaustive, sample };

namespace detail {

// Margins carrying exactly the sign pattern of a complete relation; the
// rules checked by finest_check only read the base's signs.
inline MarginMatrix margins_from_base(const Universe& u, const Relation& base) {
  MarginMatrix m;
  m.universe = u;
  for (int x = 0; x < u.size(); ++x)
    for (int y = x + 1; y < u.size(); ++y) {
      int v = 0;
      if (base.has(x, y) && !base.has(y, x)) v = 1;
      if (base.has(y, x) && !base.has(x, y)) v = -1;
      m.set(x, y, v);
    }
  return m;
}

struct PropSpec {
  RuleId rule;
  RatClass level;                 // required local rationalizability level
  bool needs_weak_idempotency;
  bool needs_star;
  bool needs_star_strong;
};

inline PropSpec prop_spec(FinestProp prop) {
  switch (prop) {
    case FinestProp::uc_gillies_prop1:
      return {RuleId::uc_gillies, RatClass::quasi_transitive, true, false, false};
    case FinestProp::top_cycle_prop2:
      return {RuleId::top_cycle, RatClass::transitive, false, false, false};
    case FinestProp::bordes_variant:
      return {RuleId::uc_bordes, RatClass::quasi_transitive, false, true, false};
    case FinestProp::mckelvey_variant:
      return {RuleId::uc_mckelvey, RatClass::quasi_transitive, true, true, false};
    case FinestProp::deep_variant:
      return {RuleId::uc_deep, RatClass::quasi_transitive, false, false, true};
  }
  return {RuleId::top_cycle, RatClass::transitive, false, false, false};
}

inline bool passes_filter(const ChoiceTable& c, const PropSpec& spec, const Relation& base) {
  if (local_rat_class(c) < spec.level) return false;
  if (spec.needs_weak_idempotency && !check_axiom(c, AxiomId::weak_idempotency, &base).holds)
    return false;
  if (spec.needs_star && !check_axiom(c, AxiomId::star, &base).holds) return false;
  if (spec.needs_star_strong && !check_axiom(c, AxiomId::star_strong, &base).holds) return false;
  return true;
}

}  // namespace detail

// Checks one finest-choice-function claim against every table based on
// `base`: the named rule must itself pass the proposition's axioms and refine
// every table that passes them. budget/seed are only read in sample mode.
inline Verdict finest_check(FinestProp prop, const Relation& base, ScanMode mode,
                            std::uint64_t budget = 0, std::uint64_t seed = 0) {
  const int n = popcount(base.carrier);
  if (base.carrier != (bit(n) - 1))
    throw Error(Errc::carrier_mismatch, "finest_check expects a full-universe base");
  if (mode == ScanMode::exhaustive && n > 4)
    throw Error(Errc::out_of_range, "exhaustive finest_check supports n <= 4");
  auto bad = incomplete_pair(base);
  if (bad.first >= 0)
    throw Error(Errc::incomplete_relation, "finest_check requires a complete base");

  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  Universe u = make_universe(labels);

  const detail::PropSpec spec = detail::prop_spec(prop);
  MarginMatrix m = detail::margins_from_base(u, base);
  ChoiceTable rule = rule_table(spec.rule, m);
  if (!detail::passes_filter(rule, spec, base))
    return Verdict::fail({"rule fails its own axiom filter", 0, 0, -1, -1, -1});

  ChoiceTable candidate(u);
  const std::uint64_t total = base_pinned_count(n);
  const std::uint64_t runs = mode == ScanMode::exhaustive ? total : budget;
  Rng rng(seed);
  for (std::uint64_t i = 0; i < runs; ++i) {
    std::uint64_t index = mode == ScanMode::exhaustive ? i : rng.below(total);
    base_pinned_table_for_index(index, base, candidate);
    if (!detail::passes_filter(candidate, spec, base)) continue;
    for (Mask a = 1; a <= u.full_mask(); ++a)
      if (rule.at(a) & ~candidate.at(a))
        return Verdict::fail({"rule is not a refinement of a surviving table", a,
                              candidate.at(a), -1, -1, lowest_bit(rule.at(a) & ~candidate.at(a))});
  }
  return Verdict::pass();
}

}  // namespace localrat
