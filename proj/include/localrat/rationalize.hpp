#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "localrat/axioms.hpp"
#include "localrat/choice.hpp"
#include "localrat/generate.hpp"
#include "localrat/relation.hpp"

namespace localrat {

// Levels of (local) rationalizability, totally ordered.
enum class RatClass { none = 0, acyclic = 1, quasi_transitive = 2, pip_transitive = 3, transitive = 4 };

inline const char* rat_class_name(RatClass r) {
  switch (r) {
    case RatClass::none: return "none";
    case RatClass::acyclic: return "acyclic";
    case RatClass::quasi_transitive: return "quasi_transitive";
    case RatClass::pip_transitive: return "pip_transitive";
    case RatClass::transitive: return "transitive";
  }
  return "?";
}

// Checks the three conditions a locally rationalizing family must satisfy:
//  (i)   every member is complete and acyclic on its carrier,
//  (ii)  the maximal elements of each member reproduce the choice,
//  (iii) members grow with the carrier (equivalently, strict preferences
//        survive restriction; both readings are evaluated and must agree).
inline Verdict validate_family(const ChoiceTable& c, const RelationFamily& fam) {
  if (!(c.universe == fam.universe))
    throw Error(Errc::universe_mismatch, "family and table live on different universes");
  const Mask full = c.universe.full_mask();

  for (Mask a = 1; a <= full; ++a) {
    const Relation& r = fam.at(a);
    if (r.carrier != a)
      return Verdict::fail({"(i) carrier", a, r.carrier, -1, -1, -1});
    auto bad = incomplete_pair(r);
    if (bad.first >= 0)
      return Verdict::fail({"(i) completeness", a, 0, bad.first, bad.second, -1});
    if (!detail::strict_part_acyclic(strict_rows(r), a))
      return Verdict::fail({"(i) acyclicity", a, 0, -1, -1, -1});
  }

  for (Mask a = 1; a <= full; ++a) {
    Mask maxima = max_elements(fam.at(a), a);
    if (maxima != c.at(a))
      return Verdict::fail({"(ii) choice", a, maxima, -1, -1, lowest_bit(maxima ^ c.at(a))});
  }

  // (iii) and (iii'): failures must agree pair-for-pair, so evaluate both and
  // cross-check before reporting.
  for (Mask a = 1; a <= full; ++a) {
    const Relation& ra = fam.at(a);
    auto pa = strict_rows(ra);
    bool bad = false;
    Witness w;
    for_each_subset(a, [&](Mask b) {
      if (bad || b == a) return;
      const Relation& rb = fam.at(b);
      auto pb = strict_rows(rb);
      bool weak_ok = true, strict_ok = true;
      int wx = -1, wy = -1;
      for_each_bit(b, [&](int x) {
        if (rb.row(x) & ~ra.row(x)) {
          weak_ok = false;
          if (wx < 0) wx = x, wy = lowest_bit(rb.row(x) & ~ra.row(x));
        }
        if ((pa[static_cast<size_t>(x)] & b) & ~pb[static_cast<size_t>(x)]) {
          strict_ok = false;
          if (wx < 0) wx = x, wy = lowest_bit((pa[static_cast<size_t>(x)] & b) & ~pb[static_cast<size_t>(x)]);
        }
      });
      if (weak_ok != strict_ok)
        throw Error(Errc::internal_mismatch,
                    "conditions (iii) and (iii') disagree, which completeness rules out");
      if (!weak_ok) {
        bad = true;
        w = Witness{"(iii) monotonicity", a, b, wx, wy, -1};
      }
    });
    if (bad) return Verdict::fail(w);
  }

  return Verdict::pass();
}

namespace detail {

// Strongest class that every member of the family satisfies, assuming the
// family already passed validate_family (so acyclic is the floor).
inline RatClass family_level(const RelationFamily& fam) {
  RatClass level = RatClass::transitive;
  const Mask full = fam.universe.full_mask();
  for (Mask a = 1; a <= full; ++a) {
    RelationClass cls = classify(fam.at(a));
    RatClass member = cls.transitive          ? RatClass::transitive
                      : cls.pip_transitive    ? RatClass::pip_transitive
                      : cls.quasi_transitive  ? RatClass::quasi_transitive
                                              : RatClass::acyclic;
    level = std::min(level, member);
  }
  return level;
}

}  // namespace detail

// Classifies local rationalizability two independent ways and insists they
// agree: the expansion-consistency ladder on one side, the local revealed
// preference family on the other. Disagreement would contradict the
// equivalence theorems, so it is a hard error, never a fallback.
inline RatClass local_rat_class(const ChoiceTable& c) {
  RatClass by_axioms = RatClass::none;
  if (holds(c, AxiomId::gamma)) {
    by_axioms = RatClass::acyclic;
    if (holds(c, AxiomId::epsilon_plus)) by_axioms = RatClass::quasi_transitive;
    if (holds(c, AxiomId::gamma_plus)) by_axioms = RatClass::pip_transitive;
    if (holds(c, AxiomId::beta_plus)) by_axioms = RatClass::transitive;
  }

  RelationFamily fam = local_revealed_preference(c);
  RatClass by_family = RatClass::none;
  if (validate_family(c, fam).holds) by_family = detail::family_level(fam);

  if (by_axioms != by_family)
    throw Error(Errc::internal_mismatch,
                std::string("local rationalizability routes disagree: axioms say ") +
                    rat_class_name(by_axioms) + ", family says " + rat_class_name(by_family));
  return by_axioms;
}

// Classic (single-relation) rationalizability, again via two routes: the
// alpha + expansion ladder, and directly testing whether the revealed
// preference relation rationalizes the table.
inline RatClass standard_rat_class(const ChoiceTable& c) {
  RatClass by_axioms = RatClass::none;
  if (holds(c, AxiomId::alpha) && holds(c, AxiomId::gamma)) {
    by_axioms = RatClass::acyclic;
    if (holds(c, AxiomId::epsilon_plus)) by_axioms = RatClass::quasi_transitive;
    if (holds(c, AxiomId::w4)) by_axioms = RatClass::pip_transitive;
    if (holds(c, AxiomId::beta_plus)) by_axioms = RatClass::transitive;
  }

  Relation rc = revealed_preference(c);
  bool rationalizes = true;
  for (Mask a = 1; a <= c.universe.full_mask() && rationalizes; ++a)
    if (max_elements(rc, a) != c.at(a)) rationalizes = false;
  RatClass by_relation = RatClass::none;
  if (rationalizes) {
    RelationClass cls = classify(rc);
    by_relation = cls.transitive         ? RatClass::transitive
                  : cls.pip_transitive   ? RatClass::pip_transitive
                  : cls.quasi_transitive ? RatClass::quasi_transitive
                                         : RatClass::acyclic;
  }

  if (by_axioms != by_relation)
    throw Error(Errc::internal_mismatch,
                std::string("rationalizability routes disagree: axioms say ") +
                    rat_class_name(by_axioms) + ", revealed preference says " +
                    rat_class_name(by_relation));
  return by_axioms;
}

// The finest coarsening satisfying gamma, computed as the per-set maxima of
// the local revealed preference relations.
inline ChoiceTable gamma_hull(const ChoiceTable& c) {
  RelationFamily fam = local_revealed_preference(c);
  ChoiceTable out(c.universe);
  for (Mask a = 1; a <= c.universe.full_mask(); ++a)
    out.set(a, max_elements(fam.at(a), a));
  return out;
}

// Independent hull computation by iterated repair: grow the offending union
// choice until no pair of sets violates gamma. Choice sets only grow and are
// bounded, so the fixpoint is reached; it is order-independent.
inline ChoiceTable hull_oracle(const ChoiceTable& c) {
  ChoiceTable out = c;
  const Mask full = c.universe.full_mask();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Mask a = 1; a <= full; ++a)
      for (Mask b = 1; b <= full; ++b) {
        Mask lost = out.at(a) & out.at(b) & ~out.at(a | b);
        if (lost) {
          out.choice[a | b] |= lost;
          changed = true;
        }
      }
  }
  return out;
}

// Definition-level oracle for small universes: enumerate every coarsening of
// c that satisfies gamma and intersect them pointwise.
inline ChoiceTable hull_intersection_oracle(const ChoiceTable& c) {
  const int n = c.universe.size();
  if (n > 3)
    throw Error(Errc::out_of_range, "intersection oracle enumerates coarsenings; n <= 3 only");
  const Mask full = c.universe.full_mask();

  std::vector<Mask> sets;  // sets with room to coarsen
  for (Mask a = 1; a <= full; ++a)
    if (a != c.at(a)) sets.push_back(a);

  ChoiceTable candidate = c, meet(c.universe);
  bool any = false;
  // odometer over additional elements per coarsenable set
  std::vector<Mask> extra(sets.size(), 0);
  for (;;) {
    for (size_t i = 0; i < sets.size(); ++i)
      candidate.choice[sets[i]] = c.at(sets[i]) | extra[i];
    if (holds(candidate, AxiomId::gamma)) {
      if (!any) {
        meet = candidate;
        any = true;
      } else {
        for (Mask a = 1; a <= full; ++a) meet.choice[a] &= candidate.at(a);
      }
    }
    size_t k = 0;
    while (k < sets.size()) {
      Mask room = sets[k] & ~c.at(sets[k]);
      extra[k] = (extra[k] - room) & room;  // next submask of room, ascending; wraps to 0
      if (extra[k] != 0) break;
      ++k;
    }
    if (k == sets.size()) break;
  }
  // The coarsest table (choose everything) always satisfies gamma, so the
  // meet is well defined even before checking `any`.
  if (!any)
    throw Error(Errc::internal_mismatch, "no gamma coarsening found; the full table satisfies gamma");
  return meet;
}

// ---- gamma cores ----------------------------------------------------------

// The displayed core relations quantify over base-relation sequences
// x_1 ... x_k whose element set is fed to C. `simple` reads the sequence as a
// simple path whose vertex set is the witness set; `walk` allows repetitions,
// i.e. a covering walk inside the witness set.
enum class PathMode { simple, walk };

namespace detail {

// Pairs (x,y) in D such that a simple path from x to y in `rows` visits
// exactly the vertices of D. Subset DP over local indices.
inline void hamiltonian_pairs(const std::array<Mask, kMaxAlternatives>& rows, Mask d,
                              std::array<Mask, kMaxAlternatives>& out) {
  int elems[kMaxAlternatives];
  int k = 0;
  for_each_bit(d, [&](int v) { elems[k++] = v; });
  // local adjacency
  std::uint32_t adj[kMaxAlternatives];
  for (int i = 0; i < k; ++i) {
    adj[i] = 0;
    for (int j = 0; j < k; ++j)
      if (i != j && ((rows[static_cast<size_t>(elems[i])] >> elems[j]) & 1))
        adj[i] |= std::uint32_t{1} << j;
  }
  for (int s = 0; s < k; ++s) {
    // ends[S] = endpoints of simple paths starting at s covering local set S
    std::vector<std::uint32_t> ends(size_t{1} << k, 0);
    ends[std::uint32_t{1} << s] = std::uint32_t{1} << s;
    for (std::uint32_t set = std::uint32_t{1} << s; set < (std::uint32_t{1} << k); ++set) {
      std::uint32_t e = ends[set];
      if (!e || !(set & (std::uint32_t{1} << s))) continue;
      std::uint32_t frontier = 0;
      while (e) {
        int v = std::countr_zero(e);
        e &= e - 1;
        frontier |= adj[v];
      }
      frontier &= ~set;
      while (frontier) {
        int w = std::countr_zero(frontier);
        frontier &= frontier - 1;
        ends[set | (std::uint32_t{1} << w)] |= std::uint32_t{1} << w;
      }
    }
    std::uint32_t last = ends[(std::uint32_t{1} << k) - 1];
    while (last) {
      int t = std::countr_zero(last);
      last &= last - 1;
      out[static_cast<size_t>(elems[s])] |= bit(elems[t]);
    }
    if (k == 1) out[static_cast<size_t>(elems[s])] |= bit(elems[s]);
  }
}

// Pairs (x,y) in D such that a walk from x to y in `rows` visits every vertex
// of D at least once. The walk's component sequence cannot revisit a strongly
// connected component, so it exists iff the condensation has a Hamiltonian
// path of DAG edges from x's component to y's.
inline void covering_walk_pairs(const std::array<Mask, kMaxAlternatives>& rows, Mask d,
                                std::array<Mask, kMaxAlternatives>& out) {
  // reachability within d
  std::array<Mask, kMaxAlternatives> reach{};
  for_each_bit(d, [&](int v) { reach[static_cast<size_t>(v)] = (rows[static_cast<size_t>(v)] & d) | bit(v); });
  for_each_bit(d, [&](int k) {
    for_each_bit(d, [&](int x) {
      if (reach[static_cast<size_t>(x)] & bit(k)) reach[static_cast<size_t>(x)] |= reach[static_cast<size_t>(k)];
    });
  });
  // strongly connected components
  Mask comps[kMaxAlternatives];
  int comp_of[kMaxAlternatives];
  int m = 0;
  Mask seen = 0;
  for_each_bit(d, [&](int x) {
    if (seen & bit(x)) return;
    Mask back = 0;
    for_each_bit(d, [&](int y) {
      if (reach[static_cast<size_t>(y)] & bit(x)) back |= bit(y);
    });
    Mask comp = reach[static_cast<size_t>(x)] & back;
    comps[m] = comp;
    for_each_bit(comp, [&](int v) { comp_of[v] = m; });
    ++m;
    seen |= comp;
  });
  // DAG edges between components
  std::uint32_t dag[kMaxAlternatives] = {};
  for_each_bit(d, [&](int x) {
    for_each_bit(rows[static_cast<size_t>(x)] & d, [&](int y) {
      if (comp_of[x] != comp_of[y]) dag[comp_of[x]] |= std::uint32_t{1} << comp_of[y];
    });
  });
  // Hamiltonian paths over components
  const std::uint32_t all = (std::uint32_t{1} << m) - 1;
  for (int s = 0; s < m; ++s) {
    std::vector<std::uint32_t> ends(size_t{1} << m, 0);
    ends[std::uint32_t{1} << s] = std::uint32_t{1} << s;
    for (std::uint32_t set = std::uint32_t{1} << s; set <= all; ++set) {
      std::uint32_t e = ends[set];
      if (!e || !(set & (std::uint32_t{1} << s))) continue;
      while (e) {
        int v = std::countr_zero(e);
        e &= e - 1;
        std::uint32_t ext = dag[v] & ~set;
        while (ext) {
          int w = std::countr_zero(ext);
          ext &= ext - 1;
          ends[set | (std::uint32_t{1} << w)] |= std::uint32_t{1} << w;
        }
      }
    }
    std::uint32_t last = ends[all];
    while (last) {
      int t = std::countr_zero(last);
      last &= last - 1;
      for_each_bit(comps[s], [&](int x) {
        for_each_bit(comps[t], [&](int y) { out[static_cast<size_t>(x)] |= bit(y); });
      });
    }
  }
}

}  // namespace detail

// Core construction shared by the weak and strict gamma cores: relate x to y
// on A when the base does, or when some witness set D inside A carries a
// covering base-relation path (weak or strict steps) from x to y with x
// selected from D. The family is monotone by construction; everything else
// is checked through validate_family against the returned table.
inline ChoiceTable gamma_core(const ChoiceTable& c, bool strict_steps, PathMode mode,
                              RelationFamily* family_out = nullptr) {
  const Mask full = c.universe.full_mask();
  Relation base = base_relation(c);
  std::array<Mask, kMaxAlternatives> step_rows;
  if (strict_steps)
    step_rows = strict_rows(base);
  else
    for (int x = 0; x < c.universe.size(); ++x) step_rows[static_cast<size_t>(x)] = base.row(x);

  RelationFamily fam(c.universe);
  // witness pairs per set
  for (Mask d = 1; d <= full; ++d) {
    std::array<Mask, kMaxAlternatives> cover{};
    if (mode == PathMode::simple)
      detail::hamiltonian_pairs(step_rows, d, cover);
    else
      detail::covering_walk_pairs(step_rows, d, cover);
    Relation& r = fam.at(d);
    for_each_bit(c.at(d), [&](int x) { r.weak[static_cast<size_t>(x)] |= cover[static_cast<size_t>(x)]; });
  }
  // union over subsets, then add the base restricted to each carrier
  for (int i = 0; i < c.universe.size(); ++i) {
    for (Mask a = 1; a <= full; ++a) {
      if (!(a & bit(i)) || (a & ~bit(i)) == 0) continue;
      const Relation& smaller = fam.at(a & ~bit(i));
      Relation& r = fam.at(a);
      for_each_bit(a, [&](int x) { r.weak[static_cast<size_t>(x)] |= smaller.row(x); });
    }
  }
  for (Mask a = 1; a <= full; ++a) {
    Relation& r = fam.at(a);
    for_each_bit(a, [&](int x) { r.weak[static_cast<size_t>(x)] |= base.row(x) & a; });
  }

  ChoiceTable out(c.universe);
  for (Mask a = 1; a <= full; ++a) out.set(a, max_elements(fam.at(a), a));

  Verdict valid = validate_family(out, fam);
  if (!valid.holds)
    throw Error(Errc::invalid_family,
                std::string("gamma-core family violates ") + valid.witness->what);
  if (family_out) *family_out = fam;
  return out;
}

inline ChoiceTable weak_gamma_core(const ChoiceTable& c, PathMode mode = PathMode::simple) {
  return gamma_core(c, /*strict_steps=*/false, mode);
}

inline ChoiceTable strict_gamma_core(const ChoiceTable& c, PathMode mode = PathMode::simple) {
  return gamma_core(c, /*strict_steps=*/true, mode);
}

// Sampled evidence for the claim that local revealed preference is the finest
// locally rationalizing family: perturb it with extra pairs, keep candidates
// that still rationalize, and check containment. Not a proof.
inline Verdict finest_family_probe(const ChoiceTable& c, int trials, std::uint64_t seed) {
  if (!holds(c, AxiomId::gamma))
    throw Error(Errc::precondition_failed, "finest_family_probe requires gamma");
  RelationFamily lrp = local_revealed_preference(c);
  const Mask full = c.universe.full_mask();
  Rng rng(seed);

  int produced = 0;
  int attempts_left = trials * 50;
  while (produced < trials && attempts_left-- > 0) {
    RelationFamily fam = lrp;
    int edits = 1 + static_cast<int>(rng.below(3));
    for (int e = 0; e < edits; ++e) {
      Mask b = 1 + static_cast<Mask>(rng.below(full));
      if (popcount(b) < 2) continue;
      int x = -1, y = -1, pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(popcount(b))));
      for_each_bit(b, [&](int v) { if (pick-- == 0) x = v; });
      pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(popcount(b))));
      for_each_bit(b, [&](int v) { if (pick-- == 0) y = v; });
      if (x == y) continue;
      for (Mask d = b; d <= full; d = (d + 1) | b) fam.at(d).add(x, y);
    }
    if (!validate_family(c, fam).holds) continue;  // discarded, regenerate
    ++produced;
    for (Mask a = 1; a <= full; ++a)
      if (!relation_contained(lrp.at(a), fam.at(a)))
        return Verdict::fail({"finest family containment", a, 0, -1, -1, -1});
  }
  return Verdict::pass();
}

}  // namespace localrat
