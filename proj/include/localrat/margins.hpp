#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>

#include "localrat/relation.hpp"
#include "localrat/universe.hpp"

namespace localrat {

// Antisymmetric integer majority margins: m[x][y] = #voters preferring x to y
// minus #voters preferring y to x. Zero diagonal, m[x][y] == -m[y][x].
struct MarginMatrix {
  Universe universe;
  std::array<std::array<int, kMaxAlternatives>, kMaxAlternatives> m{};

  int at(int x, int y) const { return m[static_cast<size_t>(x)][static_cast<size_t>(y)]; }
  void set(int x, int y, int v) {
    m[static_cast<size_t>(x)][static_cast<size_t>(y)] = v;
    m[static_cast<size_t>(y)][static_cast<size_t>(x)] = -v;
  }
};

// Weak majority rule: x R y iff m[x][y] >= 0. Complete by antisymmetry,
// reflexive via the zero diagonal.
inline Relation majority_base(const MarginMatrix& m) {
  Relation r;
  r.carrier = m.universe.full_mask();
  for_each_bit(r.carrier, [&](int x) {
    for_each_bit(r.carrier, [&](int y) {
      if (m.at(x, y) >= 0) r.add(x, y);
    });
  });
  return r;
}

// Path strengths for the split-cycle comparison. Sentinels keep the defining
// test a single >=: no weak path at all is -inf, the empty path from a vertex
// to itself is +inf.
inline constexpr long long kNoPath = std::numeric_limits<long long>::min();
inline constexpr long long kSelfPath = std::numeric_limits<long long>::max();

struct PathStrengths {
  std::array<std::array<long long, kMaxAlternatives>, kMaxAlternatives> s{};
  long long at(int x, int y) const { return s[static_cast<size_t>(x)][static_cast<size_t>(y)]; }
};

// For each ordered pair (s,t) inside a: the maximum over weak paths s -> t
// (edges with margin >= 0, intermediate vertices inside a) of the minimum
// edge margin along the path.
inline PathStrengths maximin_path_strengths(const MarginMatrix& m, Mask a) {
  if (a == 0 || !subset_of(a, m.universe.full_mask()))
    throw Error(Errc::carrier_mismatch, "feasible set does not fit the margin universe");
  PathStrengths st;
  for_each_bit(a, [&](int x) {
    for_each_bit(a, [&](int y) {
      if (x == y)
        st.s[static_cast<size_t>(x)][static_cast<size_t>(y)] = kSelfPath;
      else
        st.s[static_cast<size_t>(x)][static_cast<size_t>(y)] =
            m.at(x, y) >= 0 ? m.at(x, y) : kNoPath;
    });
  });
  for_each_bit(a, [&](int k) {
    for_each_bit(a, [&](int x) {
      if (x == k) return;
      for_each_bit(a, [&](int y) {
        if (y == k || y == x) return;
        long long via = std::min(st.at(x, k), st.at(k, y));
        auto& cell = st.s[static_cast<size_t>(x)][static_cast<size_t>(y)];
        if (via > cell) cell = via;
      });
    });
  });
  return st;
}

}  // namespace localrat
