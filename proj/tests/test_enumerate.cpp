#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "diagram_builders.hpp"
#include "gda/canonical.hpp"
#include "gda/enumerate.hpp"
#include "naive_enum.hpp"

using gda::Diagram;
using gda::EnumSpec;
using gda::Grading;
using gda::Space;

namespace {

std::set<std::string> key_set(const std::vector<Diagram>& ds) {
  std::set<std::string> keys;
  for (const auto& d : ds) keys.insert(gda::canonical_form(d).key);
  return keys;
}

}  // namespace

TEST_CASE("connected open diagrams at low degree") {
  auto v1 = gda::connected_open(1);
  REQUIRE(v1.size() == 2);  // strut and tadpole
  CHECK(key_set(v1).count(gda::canonical_form(gda_test::strut()).key) == 1);
  CHECK(key_set(v1).count(gda::canonical_form(gda_test::tadpole()).key) == 1);

  auto v2 = gda::connected_open(2);
  CHECK(v2.size() == 6);
  auto k2 = key_set(v2);
  CHECK(k2.count(gda::canonical_form(gda_test::tripod()).key) == 1);
  CHECK(k2.count(gda::canonical_form(gda_test::bubble()).key) == 1);
}

TEST_CASE("every enumerated diagram is valid, keys sorted and unique") {
  for (int v = 1; v <= 3; v++) {
    auto ds = gda::connected_open(v);
    std::string prev;
    for (const auto& d : ds) {
      CHECK_NOTHROW(gda::validate(d));
      CHECK(gda::is_connected(d));
      CHECK(gda::degrees(d).vassiliev == v);
      std::string key = gda::canonical_form(d).key;
      CHECK(prev < key);
      prev = key;
    }
  }
  for (int k = 1; k <= 3; k++) {
    auto ds = gda::closed_diagrams(k, false);
    std::string prev;
    for (const auto& d : ds) {
      CHECK_NOTHROW(gda::validate(d));
      CHECK(gda::degrees(d).vassiliev == k);
      std::string key = gda::canonical_form(d).key;
      CHECK(prev < key);
      prev = key;
    }
  }
}

TEST_CASE("structured enumeration matches the stub-matching oracle") {
  for (int v = 1; v <= 3; v++)
    CHECK(key_set(gda::connected_open(v)) == key_set(gda_test::naive_open(v)));
  for (int k = 1; k <= 3; k++) {
    CHECK(key_set(gda::closed_diagrams(k, false)) ==
          key_set(gda_test::naive_closed(k, false)));
    CHECK(key_set(gda::closed_diagrams(k, true)) ==
          key_set(gda_test::naive_closed(k, true)));
  }
}

TEST_CASE("closed diagrams at degree 1 and 2") {
  auto a1 = gda::closed_diagrams(1, false);
  REQUIRE(a1.size() == 2);  // chord and noose
  auto k1 = key_set(a1);
  CHECK(k1.count(gda::canonical_form(gda_test::chord()).key) == 1);
  CHECK(k1.count(gda::canonical_form(gda_test::noose()).key) == 1);

  auto a2 = gda::closed_diagrams(2, false);
  auto k2 = key_set(a2);
  CHECK(k2.count(gda::canonical_form(gda_test::crossed_chords()).key) == 1);
  CHECK(k2.count(gda::canonical_form(gda_test::parallel_chords()).key) == 1);
  CHECK(k2.count(gda::canonical_form(gda_test::mercedes()).key) == 1);
  // single-piece dashed parts at degree 2: one closing per open class
  CHECK(gda::closed_diagrams(2, true).size() == 6);
}

TEST_CASE("grading and loop filters") {
  EnumSpec grope2{Space::B, Grading::Grope, 2, 0, -1};
  auto g2 = gda::enumerate_diagrams(grope2);
  REQUIRE(g2.size() == 1);
  CHECK(gda::canonical_form(g2[0]).key == gda::canonical_form(gda_test::tripod()).key);

  EnumSpec trees{Space::B, Grading::Vassiliev, 3, 0, 0};
  auto t3 = gda::enumerate_diagrams(trees);
  REQUIRE(t3.size() == 1);  // the only degree-3 tree is the double fork
  CHECK(gda::canonical_form(t3[0]).key == gda::canonical_form(gda_test::h_graph()).key);

  EnumSpec loopy{Space::B, Grading::Vassiliev, 3, 1, -1};
  auto l3 = gda::enumerate_diagrams(loopy);
  CHECK(l3.size() + t3.size() == gda::connected_open(3).size());
  for (const auto& d : l3) CHECK(gda::first_betti(d) >= 1);
}

TEST_CASE("degree preconditions") {
  CHECK_THROWS_AS(gda::enumerate_diagrams({Space::B, Grading::Vassiliev, 1, 0, -1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(gda::enumerate_diagrams({Space::A, Grading::Vassiliev, 0, 0, -1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(gda::connected_open(0), std::invalid_argument);
}

TEST_CASE("attach_legs and chi_vector") {
  // both cyclic orders of the tripod legs close to the same class with
  // opposite orientation, so the signed sum cancels
  auto closings = gda::attach_legs(gda_test::tripod());
  REQUIRE(closings.size() == 1);
  CHECK(gda::canonical_form(closings[0]).key ==
        gda::canonical_form(gda_test::mercedes()).key);
  CHECK(gda::chi_vector(gda_test::tripod()).empty());

  auto chi_b = gda::chi_vector(gda_test::bubble());
  REQUIRE(chi_b.size() == 1);
  CHECK(std::abs(chi_b.begin()->second) == 1);

  // four-legged wheel: 3! closings collapse to two classes
  auto chi_w = gda::chi_vector(gda_test::wheel(4));
  CHECK(!chi_w.empty());

  CHECK_THROWS_AS(gda::attach_legs(gda_test::mercedes()), std::invalid_argument);
}

TEST_CASE("closed enumeration respects loop bounds") {
  EnumSpec spec{Space::A, Grading::Vassiliev, 2, 1, -1};
  for (const auto& d : gda::enumerate_diagrams(spec))
    CHECK(gda::first_betti(d) >= 1);
  EnumSpec spec0{Space::A, Grading::Vassiliev, 2, 0, 0};
  auto flat = gda::enumerate_diagrams(spec0);
  for (const auto& d : flat) CHECK(gda::first_betti(d) == 0);
  CHECK(flat.size() + gda::enumerate_diagrams(spec).size() ==
        gda::closed_diagrams(2, false).size());
}
