#include <doctest.h>

#include "helpers.hpp"
#include "localrat/choice.hpp"
#include "localrat/generate.hpp"

using namespace localrat;
using testutil::expect_error;
using testutil::t0;

TEST_CASE("base relation of the example table is the linear order x, y, z") {
  Relation base = base_relation(t0());
  // x P y, y P z, x P z
  CHECK(base.has(0, 1));
  CHECK(!base.has(1, 0));
  CHECK(base.has(1, 2));
  CHECK(!base.has(2, 1));
  CHECK(base.has(0, 2));
  CHECK(!base.has(2, 0));
  for (int i = 0; i < 3; ++i) CHECK(base.has(i, i));
}

TEST_CASE("revealed preference relates y to x because y is chosen from the full set") {
  Relation rc = revealed_preference(t0());
  CHECK(rc.has(1, 0));
  CHECK(rc.has(0, 1));
}

TEST_CASE("revealed preference of a single-valued dictatorial table") {
  // winner x everywhere it appears; C({y,z}) = {y}
  ChoiceTable c(testutil::xyz());
  c.set(0b011, 0b001);
  c.set(0b101, 0b001);
  c.set(0b110, 0b010);
  c.set(0b111, 0b001);
  Relation rc = revealed_preference(c);

  // oracle: scan all seven sets by hand
  Relation expected;
  expected.carrier = 0b111;
  for (Mask a = 1; a <= 7u; ++a)
    for_each_bit(c.at(a), [&](int w) { expected.weak[static_cast<size_t>(w)] |= a; });
  CHECK(rc == expected);

  // x strictly revealed-preferred to both others, z related to nothing but itself
  CHECK(rc.has(0, 1));
  CHECK(!rc.has(1, 0));
  CHECK(rc.has(1, 2));
  CHECK(!rc.has(2, 1));
  CHECK(rc.weak[2] == bit(2));
}

TEST_CASE("constant total choice induces total indifference everywhere") {
  ChoiceTable c = testutil::total_table(testutil::xyz());
  CHECK(base_relation(c) == total_indifference(0b111));
  CHECK(revealed_preference(c) == total_indifference(0b111));
  RelationFamily fam = local_revealed_preference(c);
  for (Mask a = 1; a <= 7u; ++a) CHECK(fam.at(a) == total_indifference(a));
}

TEST_CASE("single alternative universe has the one reflexive pair") {
  ChoiceTable c(make_universe({"a"}));
  Relation base = base_relation(c);
  CHECK(base.carrier == 0b1);
  CHECK(base.has(0, 0));
}

TEST_CASE("local revealed preference on the example table") {
  RelationFamily fam = local_revealed_preference(t0());
  // x strictly preferred to y on the pair...
  CHECK(fam.at(0b011).has(0, 1));
  CHECK(!fam.at(0b011).has(1, 0));
  // ...but indifferent to y on the full set (y is chosen there)
  CHECK(fam.at(0b111).has(0, 1));
  CHECK(fam.at(0b111).has(1, 0));
  CHECK(max_elements(fam.at(0b111), 0b111) == 0b011);
}

TEST_CASE("sandwich: base within every local relation within revealed preference") {
  testutil::for_each_table(testutil::xyz(), [](const ChoiceTable& c) {
    Relation base = base_relation(c);
    Relation rc = revealed_preference(c);
    RelationFamily fam = local_revealed_preference(c);
    for (Mask a = 1; a <= 7u; ++a) {
      CHECK(relation_contained(restrict_to(base, a), fam.at(a)));
      CHECK(relation_contained(fam.at(a), rc));
    }
    // the base relation is exactly the two-element members of the family
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        if (x != y) CHECK(base.has(x, y) == fam.at(bit(x) | bit(y)).has(x, y));
    // the full-universe member is the revealed preference relation
    CHECK(fam.at(7) == rc);
  });
}

TEST_CASE("the LRP family satisfies conditions (i) and (iii) and covers the choice") {
  Universe u = testutil::letters(4);
  ChoiceTable c(u);
  Rng rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    random_table(rng, c);
    RelationFamily fam = local_revealed_preference(c);
    for (Mask a = 1; a <= u.full_mask(); ++a) {
      const Relation& r = fam.at(a);
      CHECK(incomplete_pair(r).first < 0);
      CHECK(detail::strict_part_acyclic(strict_rows(r), a));
      CHECK(subset_of(c.at(a), max_elements(r, a)));
      for_each_subset(a, [&](Mask b) { CHECK(relation_contained(fam.at(b), r)); });
    }
  }
}

TEST_CASE("under alpha the local relations are restrictions of revealed preference") {
  testutil::for_each_table(testutil::xyz(), [](const ChoiceTable& c) {
    if (!holds(c, AxiomId::alpha)) return;
    Relation rc = revealed_preference(c);
    RelationFamily fam = local_revealed_preference(c);
    for (Mask a = 1; a <= 7u; ++a) CHECK(fam.at(a) == restrict_to(rc, a));
  });
}

TEST_CASE("is_refinement is the pointwise subset order") {
  ChoiceTable c = t0();
  CHECK(is_refinement(c, c));
  CHECK(is_refinement(c, testutil::total_table(testutil::xyz())));

  ChoiceTable flipped = c;
  flipped.set(0b011, 0b010);  // C({x,y}) = {y}
  CHECK(!is_refinement(c, flipped));
  CHECK(!is_refinement(flipped, c));

  ChoiceTable other(testutil::letters(3));
  expect_error(Errc::universe_mismatch, [&] { is_refinement(c, other); });
}

TEST_CASE("intersect_choices meets tables pointwise") {
  ChoiceTable c = t0();
  ChoiceTable total = testutil::total_table(testutil::xyz());
  CHECK(intersect_choices({c, total}) == c);
  CHECK(intersect_choices({c}) == c);

  Universe two = testutil::letters(2);
  ChoiceTable left(two), right(two);
  left.set(0b11, 0b01);
  right.set(0b11, 0b10);
  expect_error(Errc::empty_intersection, [&] { intersect_choices({left, right}); });
}
