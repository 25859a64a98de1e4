#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "localrat/choice.hpp"
#include "localrat/margins.hpp"
#include "localrat/profiles.hpp"
#include "localrat/universe.hpp"

namespace localrat {

// ---- label formatting ------------------------------------------------------
// Labels are printed in lexicographic order everywhere; the `alts:` header is
// the one exception, since it defines the universe's index order.

inline std::vector<std::string> sorted_labels(const Universe& u, Mask m) {
  std::vector<std::string> out;
  for_each_bit(m, [&](int i) { out.push_back(u.label(i)); });
  std::sort(out.begin(), out.end());
  return out;
}

// "a b c"
inline std::string labels_line(const Universe& u, Mask m) {
  std::string out;
  for (const auto& l : sorted_labels(u, m)) {
    if (!out.empty()) out += ' ';
    out += l;
  }
  return out;
}

// "{a,b,c}"
inline std::string set_to_string(const Universe& u, Mask m) {
  std::string out = "{";
  bool first = true;
  for (const auto& l : sorted_labels(u, m)) {
    if (!first) out += ',';
    out += l;
    first = false;
  }
  return out + "}";
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

struct LineReader {
  std::vector<std::pair<int, std::string>> lines;  // 1-based line number, content

  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      std::string body = strip_comment(line);
      if (split_ws(body).empty()) continue;
      lines.emplace_back(no, body);
    }
  }
};

inline Universe parse_alts_header(const std::vector<std::pair<int, std::string>>& lines) {
  if (lines.empty())
    throw Error(Errc::syntax_error, "line 1: missing 'alts:' header");
  auto toks = split_ws(lines.front().second);
  if (toks.empty() || toks.front() != "alts:")
    throw Error(Errc::syntax_error,
                "line " + std::to_string(lines.front().first) + ": expected 'alts: <labels>'");
  return make_universe({toks.begin() + 1, toks.end()});
}

inline int require_index(const Universe& u, const std::string& label, int line_no) {
  int idx = u.index(label);
  if (idx < 0)
    throw Error(Errc::unknown_alternative,
                "line " + std::to_string(line_no) + ": unknown alternative '" + label + "'");
  return idx;
}

}  // namespace detail

// ---- profiles --------------------------------------------------------------
// Format: "alts: a b c" header, then one ballot per line as
// "<count>: a > b > c" (count optional, defaults to 1). '#' starts a comment.

inline Profile parse_profile(const std::string& text) {
  detail::LineReader reader(text);
  Universe u = detail::parse_alts_header(reader.lines);
  Profile p(u);
  for (size_t li = 1; li < reader.lines.size(); ++li) {
    auto [no, body] = reader.lines[li];
    int count = 1;
    std::string ranking = body;
    auto colon = body.find(':');
    if (colon != std::string::npos) {
      auto toks = detail::split_ws(body.substr(0, colon));
      size_t used = 0;
      try {
        if (toks.size() != 1) throw std::invalid_argument("");
        count = std::stoi(toks.front(), &used);
        if (used != toks.front().size() || count <= 0) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw Error(Errc::syntax_error,
                    "line " + std::to_string(no) + ": ballot count must be a positive integer");
      }
      ranking = body.substr(colon + 1);
    }
    std::vector<int> order;
    std::string token;
    std::istringstream in(ranking);
    std::string part;
    while (std::getline(in, part, '>')) {
      auto toks = detail::split_ws(part);
      if (toks.size() != 1)
        throw Error(Errc::syntax_error,
                    "line " + std::to_string(no) + ": malformed ballot entry '" + part + "'");
      order.push_back(detail::require_index(u, toks.front(), no));
    }
    if (static_cast<int>(order.size()) != u.size())
      throw Error(Errc::incomplete_ballot,
                  "line " + std::to_string(no) + ": ballot must rank all " +
                      std::to_string(u.size()) + " alternatives");
    Mask seen = 0;
    for (int alt : order) {
      if (seen & bit(alt))
        throw Error(Errc::incomplete_ballot,
                    "line " + std::to_string(no) + ": ballot repeats an alternative");
      seen |= bit(alt);
    }
    p.add_ballot(count, order);
  }
  if (p.ballots.empty())
    throw Error(Errc::syntax_error, "profile contains no ballots");
  return p;
}

inline std::string serialize_profile(const Profile& p) {
  std::string out = "alts:";
  for (const auto& l : p.universe.labels) out += ' ' + l;
  out += '\n';
  for (const auto& b : p.ballots) {
    out += std::to_string(b.count) + ":";
    for (int i = 0; i < p.universe.size(); ++i) {
      out += i == 0 ? " " : " > ";
      out += p.universe.label(b.order[static_cast<size_t>(i)]);
    }
    out += '\n';
  }
  return out;
}

// ---- choice tables ---------------------------------------------------------
// Format: "alts: ..." header, then "<members> : <chosen>" per feasible set.
// Every non-singleton set must appear exactly once; omitted singletons
// default to self-choice.

inline ChoiceTable parse_choice_table(const std::string& text) {
  detail::LineReader reader(text);
  Universe u = detail::parse_alts_header(reader.lines);
  ChoiceTable c(u);
  std::vector<bool> given(size_t{1} << u.size(), false);
  for (size_t li = 1; li < reader.lines.size(); ++li) {
    auto [no, body] = reader.lines[li];
    auto colon = body.find(':');
    if (colon == std::string::npos)
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(no) + ": expected '<members> : <chosen>'");
    Mask members = 0, chosen = 0;
    for (const auto& tok : detail::split_ws(body.substr(0, colon)))
      members |= bit(detail::require_index(u, tok, no));
    for (const auto& tok : detail::split_ws(body.substr(colon + 1)))
      chosen |= bit(detail::require_index(u, tok, no));
    if (members == 0)
      throw Error(Errc::syntax_error, "line " + std::to_string(no) + ": empty feasible set");
    if (chosen == 0)
      throw Error(Errc::empty_choice,
                  "line " + std::to_string(no) + ": choice set may not be empty");
    if (!subset_of(chosen, members))
      throw Error(Errc::choice_not_subset,
                  "line " + std::to_string(no) + ": chosen alternatives must come from the set");
    if (given[members])
      throw Error(Errc::duplicate_set,
                  "line " + std::to_string(no) + ": set " + set_to_string(u, members) +
                      " appears twice");
    given[members] = true;
    c.set(members, chosen);
  }
  for (Mask a = 1; a <= u.full_mask(); ++a)
    if (popcount(a) >= 2 && !given[a])
      throw Error(Errc::missing_set, "missing choice for set " + set_to_string(u, a));
  return c;
}

inline std::string serialize_table(const ChoiceTable& c) {
  std::string out = "alts:";
  for (const auto& l : c.universe.labels) out += ' ' + l;
  out += '\n';
  for (Mask a = 1; a <= c.universe.full_mask(); ++a) {
    if (popcount(a) < 2) continue;
    out += labels_line(c.universe, a) + " : " + labels_line(c.universe, c.at(a)) + '\n';
  }
  return out;
}

// One-line form used in verification reports.
inline std::string table_compact(const ChoiceTable& c) {
  std::string out;
  for (Mask a = 1; a <= c.universe.full_mask(); ++a) {
    if (popcount(a) < 2) continue;
    if (!out.empty()) out += ", ";
    out += set_to_string(c.universe, a) + "->" + set_to_string(c.universe, c.at(a));
  }
  return out;
}

// ---- margin matrices -------------------------------------------------------
// Format: "alts: ..." header, then "<x> <y> <margin>" per line; unlisted
// pairs default to 0, contradictory duplicates are rejected.

inline MarginMatrix parse_margins(const std::string& text) {
  detail::LineReader reader(text);
  Universe u = detail::parse_alts_header(reader.lines);
  MarginMatrix m;
  m.universe = u;
  std::vector<bool> given(size_t{kMaxAlternatives} * kMaxAlternatives, false);
  auto slot = [](int x, int y) { return static_cast<size_t>(x) * kMaxAlternatives + y; };
  for (size_t li = 1; li < reader.lines.size(); ++li) {
    auto [no, body] = reader.lines[li];
    auto toks = detail::split_ws(body);
    if (toks.size() != 3)
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(no) + ": expected '<x> <y> <margin>'");
    int x = detail::require_index(u, toks[0], no);
    int y = detail::require_index(u, toks[1], no);
    int v = 0;
    try {
      size_t used = 0;
      v = std::stoi(toks[2], &used);
      if (used != toks[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(no) + ": margin must be an integer");
    }
    if (x == y && v != 0)
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(no) + ": diagonal margins must be zero");
    if ((given[slot(x, y)] || given[slot(y, x)]) && m.at(x, y) != v)
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(no) + ": contradictory margin for " + toks[0] +
                      " vs " + toks[1]);
    m.set(x, y, v);
    given[slot(x, y)] = true;
  }
  return m;
}

inline std::string serialize_margins(const MarginMatrix& m) {
  std::string out = "alts:";
  for (const auto& l : m.universe.labels) out += ' ' + l;
  out += '\n';
  for (int x = 0; x < m.universe.size(); ++x)
    for (int y = x + 1; y < m.universe.size(); ++y)
      if (m.at(x, y) != 0)
        out += m.universe.label(x) + ' ' + m.universe.label(y) + ' ' +
               std::to_string(m.at(x, y)) + '\n';
  return out;
}

}  // namespace localrat
