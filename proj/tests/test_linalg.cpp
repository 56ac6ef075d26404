#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gda/linalg.hpp"
#include "naive_snf.hpp"

using gda::BigInt;
using gda::GradedAbelianGroup;
using gda::SparseIntMatrix;
using gda_test::Lcg;
using gda_test::naive_snf;

namespace {

SparseIntMatrix from_dense(const std::vector<std::vector<long long>>& d, int cols) {
  SparseIntMatrix m(0, cols);
  for (const auto& row : d) {
    std::vector<std::pair<int, BigInt>> entries;
    for (int c = 0; c < (int)row.size(); c++)
      if (row[c]) entries.push_back({c, row[c]});
    m.add_row(entries);
  }
  return m;
}

std::vector<std::vector<BigInt>> to_dense(const SparseIntMatrix& m) {
  std::vector<std::vector<BigInt>> d(m.rows, std::vector<BigInt>(m.cols, 0));
  for (int r = 0; r < m.rows; r++)
    for (const auto& [c, v] : m.data[r]) d[r][c] = v;
  return d;
}

std::vector<BigInt> big(std::initializer_list<long long> xs) {
  std::vector<BigInt> v;
  for (auto x : xs) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("smith invariants on pinned matrices") {
  CHECK(gda::smith_invariants(from_dense({{2}}, 1)) == big({2}));
  CHECK(gda::smith_invariants(from_dense({{1, 0}, {0, 0}}, 2)) == big({1}));
  CHECK(gda::smith_invariants(from_dense({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}, 3)) ==
        big({2, 2, 156}));
  CHECK(gda::smith_invariants(from_dense({}, 3)).empty());
}

TEST_CASE("cokernel presentations") {
  auto z2 = gda::cokernel(1, from_dense({{2}}, 1));
  CHECK(z2.free_rank == 0);
  CHECK(z2.torsion == big({2}));

  auto zz = gda::cokernel(2, from_dense({}, 2));
  CHECK(zz.free_rank == 2);
  CHECK(zz.torsion.empty());

  auto mixed = gda::cokernel(3, from_dense({{1, 1, 0}, {0, 0, 2}}, 3));
  CHECK(mixed.free_rank == 1);
  CHECK(mixed.torsion == big({2}));

  CHECK_THROWS_AS(gda::cokernel(2, from_dense({{1}}, 1)), std::invalid_argument);
}

TEST_CASE("rational rank basics") {
  CHECK(gda::rational_rank(from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3)) == 3);
  CHECK(gda::rational_rank(from_dense({{0, 0}, {0, 0}}, 2)) == 0);
  CHECK(gda::rational_rank(from_dense({{1, 2}, {2, 4}, {3, 6}}, 2)) == 1);
  // column priority permutation must not change the rank
  std::vector<int> order = {2, 0, 1};
  CHECK(gda::rational_rank(from_dense({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, 3), &order) == 2);
}

TEST_CASE("random matrices agree with the naive oracle") {
  Lcg rng(0x5eed);
  for (int trial = 0; trial < 300; trial++) {
    int r = 1 + (int)(rng.next() % 8);
    int c = 1 + (int)(rng.next() % 8);
    std::vector<std::vector<long long>> d(r, std::vector<long long>(c));
    for (auto& row : d)
      for (auto& x : row) x = rng.range(-3, 3);
    auto m = from_dense(d, c);
    auto fast = gda::smith_invariants(m);
    auto slow = naive_snf(to_dense(m));
    REQUIRE(fast == slow);
    // divisibility chain
    for (size_t i = 1; i < fast.size(); i++) CHECK(fast[i] % fast[i - 1] == 0);
    // rank over Q equals invariant count
    CHECK(gda::rational_rank(m) == (int)fast.size());
    // cokernel dimension over Q
    auto g = gda::cokernel(c, m);
    CHECK(g.free_rank == c - (long long)fast.size());
  }
}

TEST_CASE("invariants stable under row and column permutation") {
  Lcg rng(0xabcd);
  for (int trial = 0; trial < 50; trial++) {
    int r = 2 + (int)(rng.next() % 6);
    int c = 2 + (int)(rng.next() % 6);
    std::vector<std::vector<long long>> d(r, std::vector<long long>(c));
    for (auto& row : d)
      for (auto& x : row) x = rng.range(-3, 3);
    auto base = gda::smith_invariants(from_dense(d, c));

    std::vector<int> rp(r), cp(c);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    for (int i = r - 1; i > 0; i--) std::swap(rp[i], rp[rng.next() % (i + 1)]);
    for (int i = c - 1; i > 0; i--) std::swap(cp[i], cp[rng.next() % (i + 1)]);
    std::vector<std::vector<long long>> q(r, std::vector<long long>(c));
    for (int i = 0; i < r; i++)
      for (int j = 0; j < c; j++) q[i][j] = d[rp[i]][cp[j]];
    CHECK(gda::smith_invariants(from_dense(q, c)) == base);
  }
}

TEST_CASE("direct sum renormalizes the divisibility chain") {
  GradedAbelianGroup a{1, big({2})};
  GradedAbelianGroup b{0, big({2})};
  GradedAbelianGroup c{2, {}};
  auto s = gda::direct_sum({a, b, c});
  CHECK(s.free_rank == 3);
  CHECK(s.torsion == big({2, 2}));

  GradedAbelianGroup d{0, big({4})};
  GradedAbelianGroup e{0, big({6})};
  auto s2 = gda::direct_sum({d, e});
  CHECK(s2.free_rank == 0);
  CHECK(s2.torsion == big({2, 12}));  // Z/4 + Z/6 = Z/2 + Z/12

  CHECK(gda::direct_sum({}).to_string() == "0");
  CHECK(s.to_string() == "Z^3 + Z/2 + Z/2");
}

TEST_CASE("group to_string") {
  CHECK(GradedAbelianGroup{0, {}}.to_string() == "0");
  CHECK(GradedAbelianGroup{1, {}}.to_string() == "Z");
  CHECK(GradedAbelianGroup{0, big({2})}.to_string() == "Z/2");
  CHECK(GradedAbelianGroup{1, big({2})}.to_string() == "Z + Z/2");
}

TEST_CASE("span oracle membership") {
  using Row = std::vector<std::pair<int, gda::BigInt>>;
  gda::SpanOracle sp(3);
  CHECK(sp.rank() == 0);
  CHECK(sp.absorb(Row{{0, 1}, {1, 1}}));
  CHECK(sp.absorb(Row{{1, 2}}));
  CHECK(sp.rank() == 2);
  // rational span: e1 = (2 e1)/2, e0 = (e0+e1) - e1
  CHECK(sp.contains(Row{{1, 1}}));
  CHECK(sp.contains(Row{{0, 1}}));
  CHECK(sp.contains(Row{{0, 3}, {1, -5}}));
  CHECK(!sp.contains(Row{{2, 1}}));
  CHECK(!sp.absorb(Row{{0, 7}}));
  CHECK(sp.absorb(Row{{2, -4}}));
  CHECK(sp.rank() == 3);
  CHECK(sp.contains(Row{}));
}

TEST_CASE("span oracle agrees with rational rank on random rows") {
  gda_test::Lcg rng(20260822);
  for (int trial = 0; trial < 60; trial++) {
    int r = 1 + (int)(rng.next() % 7), c = 1 + (int)(rng.next() % 7);
    std::vector<std::vector<long long>> d(r, std::vector<long long>(c));
    for (auto& row : d)
      for (auto& x : row) x = rng.range(-3, 3);
    gda::SparseIntMatrix m = from_dense(d, c);
    gda::SpanOracle sp(c);
    for (const auto& row : m.data) sp.absorb(row);
    CHECK(sp.rank() == gda::rational_rank(m));

    // a random combination of the rows is contained
    std::vector<std::pair<int, gda::BigInt>> combo;
    {
      std::vector<long long> acc(c, 0);
      for (int i = 0; i < r; i++) {
        long long f = rng.range(-2, 2);
        for (int j = 0; j < c; j++) acc[j] += f * d[i][j];
      }
      for (int j = 0; j < c; j++)
        if (acc[j]) combo.push_back({j, acc[j]});
    }
    CHECK(sp.contains(combo));

    // a probe vector is contained exactly when stacking it keeps the rank
    std::vector<std::pair<int, gda::BigInt>> probe = combo;
    int pc = (int)(rng.next() % c);
    probe.push_back({pc, 1 + (long long)(rng.next() % 3)});
    gda::SparseIntMatrix stacked = m;
    stacked.add_row(probe);
    bool in_span = gda::rational_rank(stacked) == sp.rank();
    CHECK(sp.contains(probe) == in_span);
  }
}
