#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace localrat {

// Alternatives are indices into a Universe; sets of alternatives are bitmasks.
// Everything downstream (choice tables, relations, rule evaluation) quantifies
// over subsets, so the universe is capped at 16 alternatives: every
// subset-indexed table fits in 2^16 slots and 3^n lattice sweeps stay cheap.
using Mask = std::uint32_t;

inline constexpr int kMaxAlternatives = 16;

enum class Errc {
  // universe / set construction
  duplicate_label,
  empty_label,
  too_large,
  // relations
  incomplete_relation,
  carrier_mismatch,
  // choice tables
  universe_mismatch,
  empty_intersection,
  // rationalization
  internal_mismatch,
  invalid_family,
  precondition_failed,
  // rules
  missing_tie_break,
  missing_profile,
  base_mismatch,
  // harness
  out_of_range,
  unknown_claim,
  syntax_error,
  unknown_alternative,
  incomplete_ballot,
  missing_set,
  choice_not_subset,
  empty_choice,
  duplicate_set,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline int popcount(Mask m) { return std::popcount(m); }

// Index of the lowest set bit. m must be nonzero.
inline int lowest_bit(Mask m) { return std::countr_zero(m); }

inline Mask bit(int i) { return Mask{1} << i; }

inline bool subset_of(Mask inner, Mask outer) { return (inner & ~outer) == 0; }

// Visits the set bits of m in ascending index order.
template <class F>
inline void for_each_bit(Mask m, F&& f) {
  while (m) {
    int i = lowest_bit(m);
    m &= m - 1;
    f(i);
  }
}

// Visits every nonempty submask of a in ascending numeric order.
template <class F>
inline void for_each_subset(Mask a, F&& f) {
  if (a == 0) return;
  Mask s = (0 - a) & a;  // lowest set bit = smallest nonempty submask
  for (;;) {
    f(s);
    if (s == a) break;
    s = (s - a) & a;
  }
}

// Spreads the low popcount(where) bits of value onto the set bit positions
// of where (a portable bit deposit). Order-preserving, so the j-th nonempty
// submask of `where` in ascending order is deposit(j, where) for j >= 1.
inline Mask deposit_bits(Mask value, Mask where) {
  Mask out = 0;
  while (where) {
    Mask low = where & (0 - where);
    if (value & 1) out |= low;
    value >>= 1;
    where &= where - 1;
  }
  return out;
}

// A labeled, ordered set of at most 16 alternatives. The index order equals
// the construction order and is part of the value: masks, tables and
// relations are only comparable across equal universes.
struct Universe {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }
  Mask full_mask() const { return (Mask{1} << size()) - 1; }
  const std::string& label(int i) const { return labels[static_cast<size_t>(i)]; }

  // Index of a label, or -1 when absent.
  int index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (labels[static_cast<size_t>(i)] == name) return i;
    return -1;
  }

  bool operator==(const Universe& other) const { return labels == other.labels; }
};

inline Universe make_universe(const std::vector<std::string>& labels) {
  if (labels.empty() || labels.size() > kMaxAlternatives)
    throw Error(Errc::too_large,
                "universe must have between 1 and 16 alternatives, got " +
                    std::to_string(labels.size()));
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty())
      throw Error(Errc::empty_label, "alternative label may not be blank");
    for (size_t j = 0; j < i; ++j)
      if (labels[i] == labels[j])
        throw Error(Errc::duplicate_label, "duplicate alternative label '" + labels[i] + "'");
  }
  return Universe{labels};
}

// All 2^n - 1 nonempty subsets of the universe, ascending mask order.
inline std::vector<Mask> feasible_sets(const Universe& u) {
  std::vector<Mask> out;
  out.reserve((size_t{1} << u.size()) - 1);
  for (Mask a = 1; a <= u.full_mask(); ++a) out.push_back(a);
  return out;
}

// All nonempty subsets of a, ascending mask order.
inline std::vector<Mask> subsets(Mask a) {
  std::vector<Mask> out;
  out.reserve((size_t{1} << popcount(a)) - 1);
  for_each_subset(a, [&](Mask s) { out.push_back(s); });
  return out;
}

}  // namespace localrat
