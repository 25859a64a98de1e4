#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "localrat/choice.hpp"
#include "localrat/margins.hpp"
#include "localrat/profiles.hpp"
#include "localrat/universe.hpp"

namespace localrat {

// Small self-contained PRNG (splitmix64). The standard engines are portable
// but the distributions are not; this keeps sampled populations byte-stable
// across compilers, which the harness promises.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

// Independent per-item seed derivation, so parallel scans over sampled
// populations see the same item i regardless of the worker layout.
inline std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index) {
  Rng g(seed ^ (0xa0761d6478bd642fULL + index * 0xe7037ed1a0b428dbULL));
  return g.next();
}

// ---- choice tables -------------------------------------------------------

// Number of choice tables on n alternatives: product of (2^|A| - 1) over all
// feasible sets A (singletons contribute 1).
inline std::uint64_t table_count(int n) {
  std::uint64_t total = 1;
  Mask full = (Mask{1} << n) - 1;
  for (Mask a = 1; a <= full; ++a)
    total *= (std::uint64_t{1} << popcount(a)) - 1;
  return total;
}

// Decodes the mixed-radix index into a concrete table: digit d for feasible
// set A selects the (d+1)-th nonempty subset of A in ascending order.
inline void table_for_index(std::uint64_t index, ChoiceTable& out) {
  const Mask full = out.universe.full_mask();
  for (Mask a = 1; a <= full; ++a) {
    if (popcount(a) < 2) continue;
    std::uint64_t radix = (std::uint64_t{1} << popcount(a)) - 1;
    out.choice[a] = deposit_bits(static_cast<Mask>(index % radix) + 1, a);
    index /= radix;
  }
}

inline void random_table(Rng& rng, ChoiceTable& out) {
  const Mask full = out.universe.full_mask();
  for (Mask a = 1; a <= full; ++a) {
    if (popcount(a) < 2) continue;
    std::uint64_t radix = (std::uint64_t{1} << popcount(a)) - 1;
    out.choice[a] = deposit_bits(static_cast<Mask>(rng.below(radix)) + 1, a);
  }
}

// Tables whose base relation is pinned: all two-element choices fixed by
// `base`, larger sets free. These are exactly the tables based on `base`.
inline std::uint64_t base_pinned_count(int n) {
  std::uint64_t total = 1;
  Mask full = (Mask{1} << n) - 1;
  for (Mask a = 1; a <= full; ++a)
    if (popcount(a) >= 3) total *= (std::uint64_t{1} << popcount(a)) - 1;
  return total;
}

inline void pin_base(const Relation& base, ChoiceTable& out) {
  const Mask full = out.universe.full_mask();
  for_each_bit(full, [&](int x) {
    for_each_bit(full, [&](int y) {
      if (y <= x) return;
      Mask pair = bit(x) | bit(y);
      Mask chosen = 0;
      if (base.has(x, y)) chosen |= bit(x);
      if (base.has(y, x)) chosen |= bit(y);
      out.choice[pair] = chosen;
    });
  });
}

inline void base_pinned_table_for_index(std::uint64_t index, const Relation& base,
                                        ChoiceTable& out) {
  pin_base(base, out);
  const Mask full = out.universe.full_mask();
  for (Mask a = 1; a <= full; ++a) {
    if (popcount(a) < 3) continue;
    std::uint64_t radix = (std::uint64_t{1} << popcount(a)) - 1;
    out.choice[a] = deposit_bits(static_cast<Mask>(index % radix) + 1, a);
    index /= radix;
  }
}

// ---- complete relations --------------------------------------------------

// Complete relations on a full n-carrier: each unordered pair is one of
// x P y, y P x, x I y, so there are 3^(n choose 2) of them.
inline std::uint64_t complete_relation_count(int n) {
  std::uint64_t total = 1;
  for (int i = 0; i < n * (n - 1) / 2; ++i) total *= 3;
  return total;
}

inline Relation complete_relation_for_index(std::uint64_t index, int n) {
  Relation r;
  r.carrier = (Mask{1} << n) - 1;
  for (int x = 0; x < n; ++x) r.add(x, x);
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      switch (index % 3) {
        case 0: r.add(x, y); break;
        case 1: r.add(y, x); break;
        default: r.add(x, y); r.add(y, x); break;
      }
      index /= 3;
    }
  }
  return r;
}

inline Relation random_complete_relation(Rng& rng, int n) {
  return complete_relation_for_index(rng.below(complete_relation_count(n)), n);
}

// ---- profiles and margins ------------------------------------------------

inline Profile random_profile(const Universe& u, int voters, Rng& rng) {
  Profile p(u);
  for (int v = 0; v < voters; ++v) {
    std::vector<int> order(static_cast<size_t>(u.size()));
    std::iota(order.begin(), order.end(), 0);
    for (int i = u.size() - 1; i > 0; --i)
      std::swap(order[static_cast<size_t>(i)],
                order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    p.add_ballot(1, order);
  }
  return p;
}

// Realizable margins via a random odd-sized profile. Odd voter counts make
// every off-diagonal margin odd, hence nonzero: a strict tournament.
inline MarginMatrix random_margins_from_profile(const Universe& u, Rng& rng) {
  int voters = 1 + 2 * static_cast<int>(rng.below(5));  // 1,3,5,7,9
  return margins_from_profile(random_profile(u, voters, rng));
}

// Directly sampled skew-symmetric margins in [-3, 3]; ties are common, which
// the tie-sensitive properties need.
inline MarginMatrix random_margins_skew(const Universe& u, Rng& rng) {
  MarginMatrix m;
  m.universe = u;
  for (int x = 0; x < u.size(); ++x)
    for (int y = x + 1; y < u.size(); ++y)
      m.set(x, y, static_cast<int>(rng.below(7)) - 3);
  return m;
}

inline TieBreakOrder random_tie_break(const Universe& u, Rng& rng) {
  std::vector<int> order(static_cast<size_t>(u.size()));
  std::iota(order.begin(), order.end(), 0);
  for (int i = u.size() - 1; i > 0; --i)
    std::swap(order[static_cast<size_t>(i)],
              order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return TieBreakOrder(u, order);
}

}  // namespace localrat
