#pragma once

#include <array>
#include <string>
#include <vector>

#include "localrat/margins.hpp"
#include "localrat/universe.hpp"

namespace localrat {

// A preference profile: weighted strict linear orders over the whole
// universe. Ballots are stored best-first as alternative indices.
struct Profile {
  Universe universe;

  struct Ballot {
    int count;
    std::array<int, kMaxAlternatives> order;  // order[rank] = alternative
  };
  std::vector<Ballot> ballots;

  explicit Profile(Universe u) : universe(std::move(u)) {}

  void add_ballot(int count, const std::vector<int>& order) {
    if (count <= 0)
      throw Error(Errc::precondition_failed, "ballot count must be positive");
    if (static_cast<int>(order.size()) != universe.size())
      throw Error(Errc::incomplete_ballot, "ballot must rank every alternative");
    Mask seen = 0;
    Ballot b{};
    b.count = count;
    for (int rank = 0; rank < universe.size(); ++rank) {
      int alt = order[static_cast<size_t>(rank)];
      if (alt < 0 || alt >= universe.size() || (seen & bit(alt)))
        throw Error(Errc::incomplete_ballot, "ballot must rank every alternative exactly once");
      seen |= bit(alt);
      b.order[static_cast<size_t>(rank)] = alt;
    }
    ballots.push_back(b);
  }

  int voters() const {
    int total = 0;
    for (const auto& b : ballots) total += b.count;
    return total;
  }

  // rank[alt] for a ballot, lower is better.
  static std::array<int, kMaxAlternatives> ranks(const Ballot& b, int n) {
    std::array<int, kMaxAlternatives> rank{};
    for (int i = 0; i < n; ++i) rank[static_cast<size_t>(b.order[static_cast<size_t>(i)])] = i;
    return rank;
  }
};

inline MarginMatrix margins_from_profile(const Profile& p) {
  if (p.ballots.empty())
    throw Error(Errc::precondition_failed, "profile needs at least one ballot");
  MarginMatrix m;
  m.universe = p.universe;
  const int n = p.universe.size();
  for (const auto& b : p.ballots) {
    auto rank = Profile::ranks(b, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (rank[static_cast<size_t>(x)] < rank[static_cast<size_t>(y)])
          m.m[static_cast<size_t>(x)][static_cast<size_t>(y)] += b.count;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) { m.m[static_cast<size_t>(x)][static_cast<size_t>(y)] = 0; continue; }
      if (x < y) {
        int diff = m.at(x, y) - m.at(y, x);
        m.set(x, y, diff);
      }
    }
  return m;
}

// A fixed strict total order used by two-stage majoritarian choice,
// best-first. greater(x, y) means x precedes y in the order.
struct TieBreakOrder {
  Universe universe;
  std::array<int, kMaxAlternatives> position{};

  TieBreakOrder(Universe u, const std::vector<int>& best_first) : universe(std::move(u)) {
    if (static_cast<int>(best_first.size()) != universe.size())
      throw Error(Errc::precondition_failed, "tie-break order must cover every alternative");
    Mask seen = 0;
    for (int pos = 0; pos < universe.size(); ++pos) {
      int alt = best_first[static_cast<size_t>(pos)];
      if (alt < 0 || alt >= universe.size() || (seen & bit(alt)))
        throw Error(Errc::precondition_failed, "tie-break order must be a permutation");
      seen |= bit(alt);
      position[static_cast<size_t>(alt)] = pos;
    }
  }

  bool greater(int x, int y) const {
    return position[static_cast<size_t>(x)] < position[static_cast<size_t>(y)];
  }
};

}  // namespace localrat
