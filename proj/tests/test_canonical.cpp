#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "diagram_builders.hpp"
#include "gda/canonical.hpp"

using gda::Diagram;
using gda::canonical_form;
using namespace gda_test;

TEST_CASE("isomorphic inputs share key and sign") {
  Lcg rng(0xc0de);
  for (const Diagram& d :
       {strut(), tripod(), bubble(), h_graph(), wheel(3), wheel(4), tadpole(), chord(),
        noose(), mercedes(), crossed_chords(), parallel_chords()}) {
    auto base = canonical_form(d);
    for (int trial = 0; trial < 25; trial++) {
      auto alt = canonical_form(random_iso(d, rng));
      CHECK(alt.key == base.key);
      CHECK(alt.sign == base.sign);
      CHECK(alt.self_negative == base.self_negative);
    }
  }
}

TEST_CASE("distinct classes get distinct keys") {
  std::set<std::string> keys;
  for (const Diagram& d :
       {strut(), tripod(), bubble(), h_graph(), wheel(3), wheel(4), tadpole(), chord(),
        noose(), mercedes(), crossed_chords(), parallel_chords()})
    keys.insert(canonical_form(d).key);
  CHECK(keys.size() == 12);
}

TEST_CASE("slot transposition flips the sign") {
  for (const Diagram& d : {bubble(), mercedes(), wheel(4)}) {
    auto base = canonical_form(d);
    REQUIRE(!base.self_negative);
    int v = 0;
    while (d.valence[v] != 3) v++;
    auto flipped = canonical_form(swap_slots(d, v, 0, 1));
    CHECK(flipped.key == base.key);
    CHECK(flipped.sign == -base.sign);
    // flipping twice restores the sign
    auto twice = canonical_form(swap_slots(swap_slots(d, v, 0, 1), v, 0, 2));
    CHECK(twice.sign == -flipped.sign);
  }
}

TEST_CASE("slot rotation preserves the sign") {
  for (const Diagram& d : {bubble(), h_graph(), wheel(4), mercedes()}) {
    auto base = canonical_form(d);
    for (int v = 0; v < d.num_vertices(); v++) {
      if (d.valence[v] != 3) continue;
      auto rotated = canonical_form(rotate_slots(d, v));
      CHECK(rotated.key == base.key);
      CHECK(rotated.sign == base.sign);
    }
  }
}

TEST_CASE("orientation-reversing symmetries are detected") {
  // leg swap at a shared trivalent vertex is an odd slot permutation
  CHECK(gda::self_negative_automorphism(tripod()));
  CHECK(gda::self_negative_automorphism(h_graph()));
  // odd wheels carry a reflection through one corner
  CHECK(gda::self_negative_automorphism(wheel(3)));
  CHECK(gda::self_negative_automorphism(wheel(5)));
  // self-loops always reverse: the loop's half-edge swap is a transposition
  CHECK(gda::self_negative_automorphism(tadpole()));
  CHECK(gda::self_negative_automorphism(noose()));
}

TEST_CASE("orientation-preserving symmetry groups are not flagged") {
  CHECK(!gda::self_negative_automorphism(strut()));
  CHECK(!gda::self_negative_automorphism(bubble()));
  CHECK(!gda::self_negative_automorphism(wheel(4)));
  CHECK(!gda::self_negative_automorphism(chord()));
  CHECK(!gda::self_negative_automorphism(mercedes()));
  CHECK(!gda::self_negative_automorphism(crossed_chords()));
  CHECK(!gda::self_negative_automorphism(parallel_chords()));
}

TEST_CASE("closed keys are rotation invariant but see interleaving") {
  Diagram c = crossed_chords(), p = parallel_chords();
  CHECK(canonical_form(c).key != canonical_form(p).key);
  Diagram c2 = c;
  std::rotate(c2.circle.begin(), c2.circle.begin() + 1, c2.circle.end());
  CHECK(canonical_form(c2).key == canonical_form(c).key);
  // open and closed versions of the same dashed part differ
  CHECK(canonical_form(strut()).key != canonical_form(chord()).key);
  CHECK(canonical_form(tripod()).key != canonical_form(mercedes()).key);
}

TEST_CASE("reverse_circle is key stable on symmetric diagrams") {
  for (const Diagram& d : {chord(), mercedes(), crossed_chords(), parallel_chords()}) {
    auto r = gda::reverse_circle(d);
    CHECK(canonical_form(r).key == canonical_form(d).key);
  }
}

TEST_CASE("canonical form is deterministic") {
  for (const Diagram& d : {wheel(4), mercedes(), bubble()}) {
    auto a = canonical_form(d), b = canonical_form(d);
    CHECK(a.key == b.key);
    CHECK(a.sign == b.sign);
    CHECK(a.self_negative == b.self_negative);
  }
}
