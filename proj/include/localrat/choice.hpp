#pragma once

#include <string>
#include <vector>

#include "localrat/relation.hpp"
#include "localrat/universe.hpp"

namespace localrat {

// A choice function as an explicit table: every feasible (nonempty) subset of
// the universe maps to a nonempty subset of itself. Fully materialized so
// axiom checks, which quantify over pairs of sets, get O(1) lookups.
struct ChoiceTable {
  Universe universe;
  std::vector<Mask> choice;  // indexed by set mask; slot 0 unused

  explicit ChoiceTable(Universe u) : universe(std::move(u)) {
    choice.assign(size_t{1} << universe.size(), 0);
    for (int i = 0; i < universe.size(); ++i)
      choice[bit(i)] = bit(i);  // singleton choices are forced
  }

  Mask at(Mask a) const { return choice[a]; }
  void set(Mask a, Mask chosen) { choice[a] = chosen; }

  bool operator==(const ChoiceTable& other) const {
    return universe == other.universe && choice == other.choice;
  }
};

// Checks nonemptiness and the subset invariant over every feasible set.
inline bool table_well_formed(const ChoiceTable& c) {
  for (Mask a = 1; a <= c.universe.full_mask(); ++a)
    if (c.at(a) == 0 || !subset_of(c.at(a), a)) return false;
  return true;
}

// One relation per feasible set, indexed by carrier mask. Families produced
// by this library are complete and monotone (R^B a subset of R^A whenever
// B is a subset of A); acyclicity is a property checked by validate_family,
// not a container invariant.
struct RelationFamily {
  Universe universe;
  std::vector<Relation> rel;  // indexed by carrier mask; slot 0 unused

  explicit RelationFamily(Universe u) : universe(std::move(u)) {
    rel.assign(size_t{1} << universe.size(), Relation{});
    for (Mask a = 1; a <= universe.full_mask(); ++a) rel[a].carrier = a;
  }

  const Relation& at(Mask a) const { return rel[a]; }
  Relation& at(Mask a) { return rel[a]; }
};

// Base relation: x R y iff x is chosen from the pair {x,y}. Reflexive because
// singleton choices are forced.
inline Relation base_relation(const ChoiceTable& c) {
  Relation r;
  r.carrier = c.universe.full_mask();
  for_each_bit(r.carrier, [&](int x) {
    r.add(x, x);
    for_each_bit(r.carrier, [&](int y) {
      if (y == x) return;
      if (c.at(bit(x) | bit(y)) & bit(x)) r.add(x, y);
    });
  });
  return r;
}

// Revealed preference: x R y iff x is chosen from some feasible set
// containing y. Equals the local relation at the full universe.
inline Relation revealed_preference(const ChoiceTable& c) {
  Relation r;
  r.carrier = c.universe.full_mask();
  for (Mask a = 1; a <= c.universe.full_mask(); ++a) {
    for_each_bit(c.at(a), [&](int x) { r.weak[static_cast<size_t>(x)] |= a; });
  }
  return r;
}

// The family of local revealed preference relations: x R^A y iff some
// witness set B inside A has y in B and x chosen from B. Computed in one
// sweep over the subset lattice: seed every set with its own witness pairs
// C(B) x B, then union upward along each bit dimension.
inline RelationFamily local_revealed_preference(const ChoiceTable& c) {
  RelationFamily fam(c.universe);
  const Mask full = c.universe.full_mask();
  for (Mask a = 1; a <= full; ++a) {
    Relation& r = fam.at(a);
    for_each_bit(c.at(a), [&](int x) { r.weak[static_cast<size_t>(x)] |= a; });
  }
  for (int i = 0; i < c.universe.size(); ++i) {
    for (Mask a = 1; a <= full; ++a) {
      if (!(a & bit(i)) || (a & ~bit(i)) == 0) continue;
      const Relation& smaller = fam.at(a & ~bit(i));
      Relation& r = fam.at(a);
      for_each_bit(a, [&](int x) {
        r.weak[static_cast<size_t>(x)] |= smaller.row(x);
      });
    }
  }
  return fam;
}

// Pointwise refinement order: c1(A) inside c2(A) for every feasible A.
inline bool is_refinement(const ChoiceTable& c1, const ChoiceTable& c2) {
  if (!(c1.universe == c2.universe))
    throw Error(Errc::universe_mismatch, "refinement compares tables on one universe");
  for (Mask a = 1; a <= c1.universe.full_mask(); ++a)
    if (c1.at(a) & ~c2.at(a)) return false;
  return true;
}

// Pointwise intersection of choice tables; fails when some set's
// intersection is empty.
inline ChoiceTable intersect_choices(const std::vector<ChoiceTable>& tables) {
  if (tables.empty())
    throw Error(Errc::precondition_failed, "intersect_choices needs at least one table");
  ChoiceTable out = tables.front();
  for (size_t i = 1; i < tables.size(); ++i) {
    if (!(tables[i].universe == out.universe))
      throw Error(Errc::universe_mismatch, "intersect_choices requires a common universe");
    for (Mask a = 1; a <= out.universe.full_mask(); ++a) out.choice[a] &= tables[i].at(a);
  }
  for (Mask a = 1; a <= out.universe.full_mask(); ++a)
    if (out.at(a) == 0)
      throw Error(Errc::empty_intersection,
                  "empty intersection at set mask " + std::to_string(a));
  return out;
}

}  // namespace localrat
