#include <doctest.h>

#include "helpers.hpp"
#include "localrat/generate.hpp"
#include "localrat/rationalize.hpp"
#include "localrat/rules.hpp"

using namespace localrat;
using testutil::expect_error;
using testutil::t0;

namespace {

// Table induced by maximizing a fixed relation on every feasible set.
ChoiceTable induced_by(const Relation& r, const Universe& u) {
  ChoiceTable c(u);
  for (Mask a = 1; a <= u.full_mask(); ++a) {
    Mask maxima = max_elements(r, a);
    REQUIRE(maxima != 0);
    c.set(a, maxima);
  }
  return c;
}

}  // namespace

TEST_CASE("the example table is locally rationalized by its LRP family") {
  ChoiceTable c = t0();
  CHECK(validate_family(c, local_revealed_preference(c)).holds);
}

TEST_CASE("flipping one pair relation breaks condition (ii)") {
  ChoiceTable c = t0();
  RelationFamily fam = local_revealed_preference(c);
  Relation flipped;
  flipped.carrier = 0b011;
  flipped.add(0, 0), flipped.add(1, 1), flipped.add(1, 0);  // y P x
  fam.at(0b011) = flipped;
  Verdict v = validate_family(c, fam);
  REQUIRE(!v.holds);
  CHECK(v.witness->what == "(ii) choice");
  CHECK(v.witness->a == 0b011);
}

TEST_CASE("a family of total indifferences only rationalizes the coarsest table") {
  ChoiceTable c = t0();
  RelationFamily fam(c.universe);
  for (Mask a = 1; a <= 7u; ++a) fam.at(a) = total_indifference(a);
  Verdict v = validate_family(c, fam);
  REQUIRE(!v.holds);
  CHECK(v.witness->what == "(ii) choice");

  ChoiceTable total = testutil::total_table(c.universe);
  CHECK(validate_family(total, fam).holds);
}

TEST_CASE("monotonicity violations are reported as condition (iii)") {
  ChoiceTable total = testutil::total_table(testutil::xyz());
  RelationFamily fam(total.universe);
  for (Mask a = 1; a <= 7u; ++a) fam.at(a) = total_indifference(a);
  // make the full-set member forget y R x while keeping maxima equal to the set
  fam.at(0b111).weak[1] &= ~bit(0);
  fam.at(0b111).weak[0] &= ~bit(1);
  fam.at(0b111).add(0, 1);
  ChoiceTable c = total;
  c.set(0b111, max_elements(fam.at(0b111), 0b111));
  Verdict v = validate_family(c, fam);
  REQUIRE(!v.holds);
  CHECK(v.witness->what == "(iii) monotonicity");
}

TEST_CASE("local rationalizability classes of the named tables") {
  CHECK(local_rat_class(t0()) == RatClass::transitive);
  CHECK(local_rat_class(testutil::total_table(testutil::xyz())) == RatClass::transitive);
  CHECK(local_rat_class(testutil::gamma_violator()) == RatClass::none);
}

TEST_CASE("standard rationalizability classes") {
  CHECK(standard_rat_class(t0()) == RatClass::none);

  // max of a linear order
  Relation linear;
  linear.carrier = 0b111;
  linear.add(0, 0), linear.add(1, 1), linear.add(2, 2);
  linear.add(0, 1), linear.add(1, 2), linear.add(0, 2);
  CHECK(standard_rat_class(induced_by(linear, testutil::xyz())) == RatClass::transitive);

  // max of x P y with all other pairs indifferent: quasi-transitive only...
  Relation quasi = total_indifference(0b111);
  quasi.weak[1] &= ~bit(0);
  ChoiceTable qc = induced_by(quasi, testutil::xyz());
  // ...except that on three alternatives quasi-transitive implies PIP-transitive
  CHECK(standard_rat_class(qc) == RatClass::pip_transitive);
  CHECK(classify(revealed_preference(qc)).quasi_transitive);
  CHECK(!classify(revealed_preference(qc)).transitive);

  // a genuinely quasi-but-not-PIP relation needs four alternatives:
  // a P b, c P d, everything else indifferent
  Relation four = total_indifference(0b1111);
  four.weak[1] &= ~bit(0);
  four.weak[3] &= ~bit(2);
  CHECK(standard_rat_class(induced_by(four, testutil::letters(4))) ==
        RatClass::quasi_transitive);
}

TEST_CASE("gamma hull: identity on gamma-satisfying tables") {
  CHECK(gamma_hull(t0()) == t0());
  CHECK(hull_oracle(t0()) == t0());
}

TEST_CASE("gamma hull of the violator adds x to the full choice set") {
  ChoiceTable c = testutil::gamma_violator();
  ChoiceTable expected = c;
  expected.set(0b111, 0b011);  // {x,y}
  CHECK(gamma_hull(c) == expected);
  CHECK(hull_oracle(c) == expected);
  CHECK(hull_intersection_oracle(c) == expected);
}

TEST_CASE("hull properties on random tables") {
  Universe u = testutil::letters(4);
  ChoiceTable c(u);
  Rng rng(31337);
  for (int trial = 0; trial < 400; ++trial) {
    random_table(rng, c);
    ChoiceTable hull = gamma_hull(c);
    CHECK(is_refinement(c, hull));
    CHECK(holds(hull, AxiomId::gamma));
    CHECK(hull == hull_oracle(c));
    CHECK(gamma_hull(hull) == hull);  // hull of a gamma function is itself
  }
}

TEST_CASE("hull of omninomination is the Pareto rule on the two-voter example") {
  Profile p(testutil::letters(3));
  p.add_ballot(1, {0, 1, 2});  // a > b > c
  p.add_ballot(1, {1, 0, 2});  // b > a > c
  MarginMatrix m = margins_from_profile(p);
  ChoiceTable omni = rule_table(RuleId::omninomination, m, nullptr, &p);
  ChoiceTable pareto = rule_table(RuleId::pareto, m, nullptr, &p);
  CHECK(gamma_hull(omni) == pareto);
  // on this profile the two rules even coincide outright
  CHECK(omni == pareto);
}

TEST_CASE("weak gamma core of the three-cycle top cycle is the top cycle") {
  MarginMatrix m;
  m.universe = testutil::letters(3);
  m.set(0, 1, 1), m.set(1, 2, 1), m.set(2, 0, 1);
  ChoiceTable top = rule_table(RuleId::top_cycle, m);
  CHECK(top.at(0b111) == 0b111);
  for (PathMode mode : {PathMode::simple, PathMode::walk}) {
    ChoiceTable weak = weak_gamma_core(top, mode);
    CHECK(weak == top);
    CHECK(is_refinement(strict_gamma_core(top, mode), weak));
  }
}

TEST_CASE("strict gamma core with an all-indifferent base chooses everything") {
  ChoiceTable c(testutil::xyz());
  c.set(0b011, 0b011);
  c.set(0b101, 0b101);
  c.set(0b110, 0b110);
  c.set(0b111, 0b001);  // the larger set may choose anything
  ChoiceTable strict = strict_gamma_core(c);
  for (Mask a = 1; a <= 7u; ++a) CHECK(strict.at(a) == a);
}

TEST_CASE("core chain and family validity over random tables, both readings") {
  Universe u = testutil::letters(4);
  ChoiceTable c(u);
  Rng rng(2718);
  for (int trial = 0; trial < 300; ++trial) {
    random_table(rng, c);
    ChoiceTable hull = gamma_hull(c);
    for (PathMode mode : {PathMode::simple, PathMode::walk}) {
      ChoiceTable weak = weak_gamma_core(c, mode);    // throws if the family is invalid
      ChoiceTable strict = strict_gamma_core(c, mode);
      CHECK(is_refinement(strict, weak));
      CHECK(is_refinement(weak, hull));
      CHECK(holds(weak, AxiomId::gamma));
      CHECK(holds(strict, AxiomId::gamma));
      CHECK(base_relation(weak) == base_relation(c));
    }
  }
}

TEST_CASE("finest family probe") {
  CHECK(finest_family_probe(t0(), 100, 7).holds);
  expect_error(Errc::precondition_failed,
               [] { finest_family_probe(testutil::gamma_violator(), 10, 7); });
}

namespace {

// Oracle: simple covering paths by permutation enumeration.
bool brute_ham_path(const std::array<Mask, kMaxAlternatives>& rows, Mask d, int from, int to) {
  std::vector<int> elems;
  for_each_bit(d, [&](int v) { elems.push_back(v); });
  if (elems.size() == 1) return from == to && from == elems[0];
  std::sort(elems.begin(), elems.end());
  do {
    if (elems.front() != from || elems.back() != to) continue;
    bool ok = true;
    for (size_t i = 0; i + 1 < elems.size(); ++i)
      if (!((rows[static_cast<size_t>(elems[i])] >> elems[i + 1]) & 1)) ok = false;
    if (ok) return true;
  } while (std::next_permutation(elems.begin(), elems.end()));
  return false;
}

// Oracle: covering walks by BFS over (vertex, visited-set) states.
bool brute_cover_walk(const std::array<Mask, kMaxAlternatives>& rows, Mask d, int from, int to) {
  std::vector<std::pair<int, Mask>> queue{{from, bit(from)}};
  std::vector<bool> seen(size_t{16} * (size_t{1} << 16), false);
  auto key = [](int v, Mask visited) { return static_cast<size_t>(v) * (size_t{1} << 16) + visited; };
  seen[key(from, bit(from))] = true;
  while (!queue.empty()) {
    auto [v, visited] = queue.back();
    queue.pop_back();
    if (v == to && visited == d) return true;
    for_each_bit(rows[static_cast<size_t>(v)] & d, [&](int w) {
      if (w == v) return;
      Mask next = visited | bit(w);
      if (!seen[key(w, next)]) {
        seen[key(w, next)] = true;
        queue.emplace_back(w, next);
      }
    });
  }
  return false;
}

}  // namespace

TEST_CASE("core path machinery agrees with permutation and state-space oracles") {
  Universe u = testutil::letters(5);
  Rng rng(1414);
  for (int trial = 0; trial < 25; ++trial) {
    // random digraph rows: reflexive plus coin-flip edges
    std::array<Mask, kMaxAlternatives> rows{};
    for (int x = 0; x < 5; ++x) {
      rows[static_cast<size_t>(x)] = bit(x);
      for (int y = 0; y < 5; ++y)
        if (y != x && rng.below(2)) rows[static_cast<size_t>(x)] |= bit(y);
    }
    Mask d = 1 + static_cast<Mask>(rng.below(u.full_mask()));
    std::array<Mask, kMaxAlternatives> ham{}, walk{};
    localrat::detail::hamiltonian_pairs(rows, d, ham);
    localrat::detail::covering_walk_pairs(rows, d, walk);
    for_each_bit(d, [&](int x) {
      for_each_bit(d, [&](int y) {
        bool ham_dp = (ham[static_cast<size_t>(x)] >> y) & 1;
        bool walk_dp = (walk[static_cast<size_t>(x)] >> y) & 1;
        CHECK(ham_dp == brute_ham_path(rows, d, x, y));
        CHECK(walk_dp == brute_cover_walk(rows, d, x, y));
        if (ham_dp) CHECK(walk_dp);  // a simple path is a walk
      });
    });
  }
}
