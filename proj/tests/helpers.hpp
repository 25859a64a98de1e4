#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// here re-derive expected values from the definitions by brute force and must
// stay independent of the library code paths they check.

#include <functional>
#include <string>
#include <vector>

#include <doctest.h>

#include "localrat/localrat.hpp"

namespace testutil {

using namespace localrat;

inline Universe xyz() { return make_universe({"x", "y", "z"}); }

inline Universe letters(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return make_universe(labels);
}

// The worked three-alternative example table:
//   C({x,y,z}) = {x,y}, C({x,y}) = {x}, C({y,z}) = {y}, C({x,z}) = {x}.
inline ChoiceTable t0() {
  ChoiceTable c(xyz());
  c.set(0b011, 0b001);
  c.set(0b101, 0b001);
  c.set(0b110, 0b010);
  c.set(0b111, 0b011);
  return c;
}

// A gamma-violating table: x is chosen from {x,y} and {x,z} but not from the
// full set.
inline ChoiceTable gamma_violator() {
  ChoiceTable c(xyz());
  c.set(0b011, 0b001);
  c.set(0b101, 0b001);
  c.set(0b110, 0b010);
  c.set(0b111, 0b010);
  return c;
}

inline ChoiceTable total_table(const Universe& u) {
  ChoiceTable c(u);
  for (Mask a = 1; a <= u.full_mask(); ++a) c.set(a, a);
  return c;
}

template <class Fn>
inline void expect_error(Errc code, Fn&& fn) {
  try {
    fn();
    FAIL_CHECK("expected an Error with code " << static_cast<int>(code));
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

// Visits every choice table on u, reusing one table object.
template <class Fn>
inline void for_each_table(const Universe& u, Fn&& fn) {
  ChoiceTable c(u);
  const std::uint64_t total = table_count(u.size());
  for (std::uint64_t i = 0; i < total; ++i) {
    table_for_index(i, c);
    fn(c);
  }
}

// ---- oracles ----------------------------------------------------------------

// Widest-path strength by exhaustive DFS over simple weak paths.
inline long long brute_strength(const MarginMatrix& m, Mask a, int s, int t) {
  if (s == t) return kSelfPath;
  long long best = kNoPath;
  std::function<void(int, Mask, long long)> walk = [&](int v, Mask used, long long width) {
    if (v == t) {
      best = std::max(best, width);
      return;
    }
    for_each_bit(a & ~used, [&](int w) {
      if (m.at(v, w) >= 0)
        walk(w, used | bit(w), std::min(width, static_cast<long long>(m.at(v, w))));
    });
  };
  walk(s, bit(s), kSelfPath);
  return best;
}

// Split-cycle winners straight from the defining formula, paths enumerated by
// the DFS oracle above.
inline Mask brute_split_cycle(const MarginMatrix& m, Mask a) {
  Relation r;
  r.carrier = a;
  for_each_bit(a, [&](int x) {
    for_each_bit(a, [&](int y) {
      if (m.at(x, y) >= 0 || brute_strength(m, a, x, y) >= m.at(y, x)) r.add(x, y);
    });
  });
  return max_elements(r, a);
}

}  // namespace testutil
