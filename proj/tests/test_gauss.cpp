#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gda/gauss.hpp"
#include "gda/linalg.hpp"

using namespace gda;

namespace {

const std::string kDataDir = GDA_DATA_DIR;

std::map<std::string, GaussCode> corpus_by_name() {
  std::map<std::string, GaussCode> out;
  for (const CorpusEntry& e : read_corpus(kDataDir + "/knots.gauss"))
    out[e.name] = e.code;
  return out;
}

struct Expected {
  long long c2, v3;
  int arf;
};

const std::map<std::string, Expected> kExpected = {
    {"unknot", {0, 0, 0}},        {"trefoil_right", {1, 1, 1}},
    {"trefoil_left", {1, -1, 1}}, {"figure_eight", {-1, 0, 1}},
    {"granny", {2, 2, 0}},        {"square", {2, 0, 0}},
    {"torus_2_5", {3, 5, 1}},     {"torus_2_7", {6, 14, 0}},
    {"braid_a", {3, -5, 1}},
};

}  // namespace

TEST_CASE("parsing accepts codes and round trips them") {
  GaussCode tref = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+");
  CHECK(tref.tokens.size() == 6);
  CHECK(tref.tokens[0].label == 1);
  CHECK(tref.tokens[0].passage == Passage::Over);
  CHECK(tref.tokens[1].sign == 1);
  CHECK(format_gauss(tref) == "O1+ U2+ O3+ U1+ O2+ U3+");
  CHECK(parse_gauss("").tokens.empty());
  CHECK(parse_gauss("  \n ").tokens.empty());
}

TEST_CASE("each malformation raises its own error kind") {
  using Kind = GaussParseError::Kind;
  auto kind_of = [](const std::string& text) {
    try {
      parse_gauss(text);
    } catch (const GaussParseError& e) {
      return e.kind;
    }
    throw std::logic_error("expected a parse error");
  };
  CHECK(kind_of("Q1+") == Kind::MalformedToken);
  CHECK(kind_of("O1") == Kind::MalformedToken);
  CHECK(kind_of("O+") == Kind::MalformedToken);
  CHECK(kind_of("O1x") == Kind::MalformedToken);
  CHECK(kind_of("O1+ U1+ O2+ U2+ U1+") == Kind::LabelMultiplicity);
  CHECK(kind_of("O1+ U2+ U1+") == Kind::LabelMultiplicity);
  CHECK(kind_of("O1+ O1+") == Kind::PassageInconsistency);
  CHECK(kind_of("O1+ U1-") == Kind::SignInconsistency);
}

TEST_CASE("frozen corpus values") {
  auto corpus = corpus_by_name();
  CHECK(corpus.size() == kExpected.size());
  for (const auto& [name, want] : kExpected) {
    CAPTURE(name);
    REQUIRE(corpus.count(name) == 1);
    const GaussCode& k = corpus[name];
    CHECK(c2(k) == want.c2);
    CHECK(v3(k) == want.v3);
    CHECK(arf(k) == want.arf);
  }
}

TEST_CASE("pattern counts agree with the determinant oracle") {
  for (const auto& [name, k] : corpus_by_name()) {
    CAPTURE(name);
    CHECK(planar_realizable(k));
    CHECK(conway_c2_oracle(k) == c2(k));
  }
}

TEST_CASE("base point independence") {
  for (const auto& [name, k] : corpus_by_name()) {
    CAPTURE(name);
    long long want_c2 = c2(k), want_v3 = v3(k);
    for (int r = 0; r < static_cast<int>(k.tokens.size()); r++) {
      GaussCode rk = rotate(k, r);
      CHECK(c2(rk) == want_c2);
      CHECK(v3(rk) == want_v3);
    }
  }
}

TEST_CASE("mirror and reversal symmetry") {
  for (const auto& [name, k] : corpus_by_name()) {
    CAPTURE(name);
    GaussCode m = mirror(k), r = reverse(k);
    CHECK(c2(m) == c2(k));
    CHECK(v3(m) == -v3(k));
    CHECK(c2(r) == c2(k));
    CHECK(v3(r) == v3(k));
  }
}

TEST_CASE("connected sums add") {
  auto corpus = corpus_by_name();
  const GaussCode& tr = corpus["trefoil_right"];
  const GaussCode& tl = corpus["trefoil_left"];

  GaussCode granny = connected_sum(tr, tr);
  CHECK(c2(granny) == 2);
  CHECK(v3(granny) == 2);
  CHECK(arf(granny) == 0);
  CHECK(conway_c2_oracle(granny) == 2);

  GaussCode square = connected_sum(tr, tl);
  CHECK(c2(square) == 2);
  CHECK(v3(square) == 0);
  CHECK(arf(square) == 0);

  GaussCode same = connected_sum(tr, GaussCode{});
  CHECK(c2(same) == c2(tr));
  CHECK(v3(same) == v3(tr));

  std::vector<std::string> names = {"figure_eight", "torus_2_5", "braid_a"};
  for (const auto& a : names)
    for (const auto& b : names) {
      CAPTURE(a + "#" + b);
      GaussCode s = connected_sum(corpus[a], corpus[b]);
      CHECK(c2(s) == c2(corpus[a]) + c2(corpus[b]));
      CHECK(v3(s) == v3(corpus[a]) + v3(corpus[b]));
    }
}

TEST_CASE("virtual codes are rejected by the oracle only") {
  GaussCode virt = parse_gauss("O1+ O2+ U1+ U2+");
  CHECK(!planar_realizable(virt));
  CHECK_THROWS_AS(conway_c2_oracle(virt), std::invalid_argument);
  c2(virt);
  v3(virt);
}

TEST_CASE("csv output matches the frozen expectations file") {
  std::ifstream in(kDataDir + "/knots_expected.csv");
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(invariants_csv(read_corpus(kDataDir + "/knots.gauss")) == buf.str());
}

TEST_CASE("corpus errors carry line numbers") {
  std::string path = "corpus_error_probe.gauss";
  {
    std::ofstream out(path);
    out << "good: O1+ U1+\n";
    out << "bad: O1+ U1-\n";
  }
  try {
    read_corpus(path);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::remove(path.c_str());
}
