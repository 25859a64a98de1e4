#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <string>
#include <vector>

#include "localrat/universe.hpp"

namespace localrat {

// A binary relation on a carrier set, stored as per-alternative rows of
// out-neighbour bits. Rows of alternatives outside the carrier are zero.
// Most relations in this library are complete: for all x, y in the carrier
// (including x == y) at least one of x R y, y R x holds; the strict part is
// P(x,y) = R(x,y) and not R(y,x), the symmetric part I(x,y) = both.
struct Relation {
  Mask carrier = 0;
  std::array<Mask, kMaxAlternatives> weak{};

  bool has(int x, int y) const { return (weak[static_cast<size_t>(x)] >> y) & 1; }
  void add(int x, int y) { weak[static_cast<size_t>(x)] |= bit(y); }
  Mask row(int x) const { return weak[static_cast<size_t>(x)]; }

  bool operator==(const Relation& other) const = default;
};

// Rows of the transpose: column x of `weak` as a mask.
inline std::array<Mask, kMaxAlternatives> transpose_rows(const Relation& r) {
  std::array<Mask, kMaxAlternatives> cols{};
  for_each_bit(r.carrier, [&](int x) {
    for_each_bit(r.row(x), [&](int y) { cols[static_cast<size_t>(y)] |= bit(x); });
  });
  return cols;
}

// Rows of the strict part P = R \ R^-1.
inline std::array<Mask, kMaxAlternatives> strict_rows(const Relation& r) {
  auto cols = transpose_rows(r);
  std::array<Mask, kMaxAlternatives> p{};
  for_each_bit(r.carrier, [&](int x) {
    p[static_cast<size_t>(x)] = r.row(x) & ~cols[static_cast<size_t>(x)];
  });
  return p;
}

inline Relation total_indifference(Mask carrier) {
  Relation r;
  r.carrier = carrier;
  for_each_bit(carrier, [&](int x) { r.weak[static_cast<size_t>(x)] = carrier; });
  return r;
}

// Restriction to a sub-carrier: keep only pairs inside a.
inline Relation restrict_to(const Relation& r, Mask a) {
  Relation out;
  out.carrier = r.carrier & a;
  for_each_bit(out.carrier, [&](int x) {
    out.weak[static_cast<size_t>(x)] = r.row(x) & a;
  });
  return out;
}

// Pairwise containment: every pair of inner is a pair of outer.
inline bool relation_contained(const Relation& inner, const Relation& outer) {
  bool ok = true;
  for_each_bit(inner.carrier, [&](int x) {
    if (inner.row(x) & ~outer.row(x)) ok = false;
  });
  return ok;
}

// First pair violating completeness, or {-1,-1} when complete.
// Completeness is taken to include x == y, so complete relations are reflexive.
inline std::pair<int, int> incomplete_pair(const Relation& r) {
  std::pair<int, int> bad{-1, -1};
  bool found = false;
  for_each_bit(r.carrier, [&](int x) {
    if (found) return;
    for_each_bit(r.carrier, [&](int y) {
      if (found || y < x) return;
      if (!r.has(x, y) && !r.has(y, x)) {
        bad = {x, y};
        found = true;
      }
    });
  });
  return bad;
}

inline bool is_complete(const Relation& r) { return incomplete_pair(r).first < 0; }

namespace detail {

// Maximal elements of `a` under the given strict rows: members of a with no
// strict dominator inside a.
inline Mask max_under(const std::array<Mask, kMaxAlternatives>& strict, Mask a) {
  Mask dominated = 0;
  for_each_bit(a, [&](int y) { dominated |= strict[static_cast<size_t>(y)] & a; });
  return a & ~dominated;
}

// True when the strict digraph restricted to `a` has no directed cycle,
// decided by repeatedly peeling off maximal elements.
inline bool strict_part_acyclic(const std::array<Mask, kMaxAlternatives>& strict, Mask a) {
  Mask rest = a;
  while (rest) {
    Mask peel = max_under(strict, rest);
    if (!peel) return false;
    rest &= ~peel;
  }
  return true;
}

}  // namespace detail

// Classification flags for a complete relation. The implication chain
// transitive => pip_transitive => quasi_transitive => acyclic holds for every
// complete relation (with I reflexive, PIP applied to y = z recovers
// quasi-transitivity).
struct RelationClass {
  bool complete = false;
  bool acyclic = false;
  bool quasi_transitive = false;
  bool pip_transitive = false;
  bool transitive = false;
};

inline RelationClass classify(const Relation& r) {
  auto bad = incomplete_pair(r);
  if (bad.first >= 0)
    throw Error(Errc::incomplete_relation,
                "relation is incomplete at pair (" + std::to_string(bad.first) +
                    "," + std::to_string(bad.second) + ")");

  RelationClass cls;
  cls.complete = true;

  auto cols = transpose_rows(r);
  std::array<Mask, kMaxAlternatives> p{}, i{};
  for_each_bit(r.carrier, [&](int x) {
    p[static_cast<size_t>(x)] = r.row(x) & ~cols[static_cast<size_t>(x)];
    i[static_cast<size_t>(x)] = r.row(x) & cols[static_cast<size_t>(x)];
  });

  cls.acyclic = detail::strict_part_acyclic(p, r.carrier);

  cls.transitive = true;
  for_each_bit(r.carrier, [&](int x) {
    for_each_bit(r.row(x), [&](int y) {
      if (r.row(y) & ~r.row(x)) cls.transitive = false;
    });
  });

  cls.quasi_transitive = true;
  for_each_bit(r.carrier, [&](int x) {
    for_each_bit(p[static_cast<size_t>(x)], [&](int y) {
      if (p[static_cast<size_t>(y)] & ~p[static_cast<size_t>(x)]) cls.quasi_transitive = false;
    });
  });

  // x P y, y I z, z P w implies x P w. For each y, collect everything strictly
  // beaten through an indifference step; every strict dominator of y must
  // also strictly beat all of it.
  cls.pip_transitive = true;
  std::array<Mask, kMaxAlternatives> via{};
  for_each_bit(r.carrier, [&](int y) {
    Mask acc = 0;
    for_each_bit(i[static_cast<size_t>(y)], [&](int z) { acc |= p[static_cast<size_t>(z)]; });
    via[static_cast<size_t>(y)] = acc;
  });
  for_each_bit(r.carrier, [&](int x) {
    for_each_bit(p[static_cast<size_t>(x)], [&](int y) {
      if (via[static_cast<size_t>(y)] & ~p[static_cast<size_t>(x)]) cls.pip_transitive = false;
    });
  });

  assert(!cls.transitive || cls.pip_transitive);
  assert(!cls.pip_transitive || cls.quasi_transitive);
  assert(!cls.quasi_transitive || cls.acyclic);
  return cls;
}

// Elements of a with no strict dominator inside a. Empty exactly when the
// strict part restricted to a has a cycle.
inline Mask max_elements(const Relation& r, Mask a) {
  if (!subset_of(a, r.carrier))
    throw Error(Errc::carrier_mismatch, "set is not contained in the relation carrier");
  auto p = strict_rows(r);
  return detail::max_under(p, a);
}

// Weak reachability of r on the same carrier. For complete input the result
// is complete and transitive.
inline Relation transitive_closure(const Relation& r) {
  auto bad = incomplete_pair(r);
  if (bad.first >= 0)
    throw Error(Errc::incomplete_relation, "transitive_closure requires a complete relation");
  Relation out = r;
  for_each_bit(out.carrier, [&](int k) {
    for_each_bit(out.carrier, [&](int x) {
      if (out.has(x, k)) out.weak[static_cast<size_t>(x)] |= out.row(k);
    });
  });
  return out;
}

// Strongly connected components of the weak digraph of r restricted to a,
// listed from dominant to dominated. Completeness of r makes the condensation
// a total order: between two distinct components every cross pair is related
// in the same direction.
inline std::vector<Mask> condensation_order(const Relation& r, Mask a) {
  if (!subset_of(a, r.carrier))
    throw Error(Errc::carrier_mismatch, "set is not contained in the relation carrier");
  Relation reach = transitive_closure(restrict_to(r, a));
  auto back = transpose_rows(reach);
  std::vector<Mask> comps;
  Mask seen = 0;
  for_each_bit(a, [&](int x) {
    if (seen & bit(x)) return;
    Mask comp = reach.row(x) & back[static_cast<size_t>(x)];
    comp |= bit(x);  // reflexive reach may be implicit for singleton components
    comps.push_back(comp);
    seen |= comp;
  });
  // The top component reaches everything, the next reaches everything minus
  // the top, and so on: sorting by reach size descending yields the order.
  std::sort(comps.begin(), comps.end(), [&](Mask lhs, Mask rhs) {
    return popcount(reach.row(lowest_bit(lhs))) > popcount(reach.row(lowest_bit(rhs)));
  });
  return comps;
}

}  // namespace localrat
