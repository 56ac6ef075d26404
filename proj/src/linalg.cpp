#include "gda/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

namespace gda {

void SparseIntMatrix::set(int r, int c, const BigInt& v) {
  if (r < 0 || r >= rows || c < 0 || c >= cols)
    throw std::out_of_range("SparseIntMatrix::set index");
  auto& row = data[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (v == 0)
      row.erase(it);
    else
      it->second = v;
  } else if (v != 0) {
    row.insert(it, {c, v});
  }
}

BigInt SparseIntMatrix::get(int r, int c) const {
  const auto& row = data[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return 0;
}

void SparseIntMatrix::add_row(const std::vector<std::pair<int, BigInt>>& entries) {
  std::vector<std::pair<int, BigInt>> row;
  for (const auto& [c, v] : entries) {
    if (c < 0 || c >= cols) throw std::out_of_range("SparseIntMatrix::add_row col");
    if (v != 0) row.push_back({c, v});
  }
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // repeated columns accumulate into one entry
  std::vector<std::pair<int, BigInt>> merged;
  for (auto& e : row) {
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(std::move(e));
  }
  std::erase_if(merged, [](const auto& e) { return e.second == 0; });
  data.push_back(std::move(merged));
  rows++;
}

size_t SparseIntMatrix::nonzeros() const {
  size_t n = 0;
  for (const auto& r : data) n += r.size();
  return n;
}

std::string GradedAbelianGroup::to_string() const {
  if (free_rank == 0 && torsion.empty()) return "0";
  std::string s;
  if (free_rank == 1)
    s = "Z";
  else if (free_rank > 1)
    s = "Z^" + std::to_string(free_rank);
  for (const auto& d : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.str();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Dense Smith normal form, minimal-magnitude pivoting.

namespace {

std::vector<BigInt> dense_snf(std::vector<std::vector<BigInt>> a) {
  const int R = static_cast<int>(a.size());
  const int C = R ? static_cast<int>(a[0].size()) : 0;
  std::vector<BigInt> inv;
  int t = 0;
  while (t < R && t < C) {
    // minimal |nonzero| pivot in the trailing submatrix
    int pi = -1, pj = -1;
    BigInt best = 0;
    for (int i = t; i < R; i++)
      for (int j = t; j < C; j++)
        if (a[i][j] != 0) {
          BigInt m = abs(a[i][j]);
          if (pi < 0 || m < best) {
            best = m;
            pi = i;
            pj = j;
          }
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    if (pj != t)
      for (int i = 0; i < R; i++) std::swap(a[i][t], a[i][pj]);

    bool stable = false;
    while (!stable) {
      stable = true;
      for (int i = t + 1; i < R && stable; i++) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        if (q != 0)
          for (int j = t; j < C; j++) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          stable = false;
        }
      }
      if (!stable) continue;
      for (int j = t + 1; j < C && stable; j++) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        if (q != 0)
          for (int i = t; i < R; i++) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (int i = 0; i < R; i++) std::swap(a[i][t], a[i][j]);
          stable = false;
        }
      }
      if (!stable) continue;
      // pivot must divide the rest of the submatrix
      for (int i = t + 1; i < R && stable; i++)
        for (int j = t + 1; j < C; j++)
          if (a[i][j] % a[t][t] != 0) {
            for (int jj = t; jj < C; jj++) a[t][jj] += a[i][jj];
            stable = false;
            break;
          }
    }
    inv.push_back(abs(a[t][t]));
    t++;
  }
  return inv;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hybrid SNF: unit pivots eliminated sparsely, dense reduction on the core.

std::vector<BigInt> smith_invariants(const SparseIntMatrix& M) {
  std::vector<std::map<int, BigInt>> rows(M.rows);
  std::vector<std::set<int>> col_rows(M.cols);
  for (int r = 0; r < M.rows; r++)
    for (const auto& [c, v] : M.data[r]) {
      rows[r][c] = v;
      col_rows[c].insert(r);
    }
  std::vector<bool> row_live(M.rows, true), col_live(M.cols, true);
  long long units = 0;

  for (;;) {
    // best +-1 pivot by Markowitz fill score
    int br = -1, bc = -1;
    long long bscore = 0;
    for (int r = 0; r < M.rows; r++) {
      if (!row_live[r] || rows[r].empty()) continue;
      for (const auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        long long score = (long long)(rows[r].size() - 1) *
                          (long long)(col_rows[c].size() - 1);
        if (br < 0 || score < bscore) {
          br = r;
          bc = c;
          bscore = score;
        }
        if (bscore == 0) break;
      }
      if (br >= 0 && bscore == 0) break;
    }
    if (br < 0) break;

    BigInt pv = rows[br][bc];
    std::vector<int> touched(col_rows[bc].begin(), col_rows[bc].end());
    for (int r : touched) {
      if (r == br || !row_live[r]) continue;
      BigInt f = rows[r][bc] / pv;  // exact: pv is +-1
      for (const auto& [c, v] : rows[br]) {
        auto it = rows[r].find(c);
        if (it == rows[r].end()) {
          rows[r][c] = -f * v;
          col_rows[c].insert(r);
        } else {
          it->second -= f * v;
          if (it->second == 0) {
            rows[r].erase(it);
            col_rows[c].erase(r);
          }
        }
      }
    }
    // pivot row and column leave the matrix; invariant factor 1
    for (const auto& [c, v] : rows[br]) col_rows[c].erase(br);
    rows[br].clear();
    row_live[br] = false;
    col_live[bc] = false;
    units++;
  }

  // compact the +-1-free core and finish densely
  std::vector<int> live_cols;
  for (int c = 0; c < M.cols; c++)
    if (col_live[c] && !col_rows[c].empty()) live_cols.push_back(c);
  std::vector<int> col_pos(M.cols, -1);
  for (size_t i = 0; i < live_cols.size(); i++) col_pos[live_cols[i]] = (int)i;
  std::vector<std::vector<BigInt>> core;
  for (int r = 0; r < M.rows; r++) {
    if (!row_live[r] || rows[r].empty()) continue;
    std::vector<BigInt> dr(live_cols.size(), 0);
    for (const auto& [c, v] : rows[r]) dr[col_pos[c]] = v;
    core.push_back(std::move(dr));
  }
  if (core.size() > 3000 || live_cols.size() > 3000)
    throw ResourceCapError("smith_invariants: dense core too large");

  std::vector<BigInt> inv(units, 1);
  auto rest = dense_snf(std::move(core));
  inv.insert(inv.end(), rest.begin(), rest.end());
  return inv;
}

GradedAbelianGroup cokernel(int generator_count, const SparseIntMatrix& M) {
  if (M.cols != generator_count)
    throw std::invalid_argument("cokernel: column count != generator count");
  auto inv = smith_invariants(M);
  GradedAbelianGroup g;
  g.free_rank = generator_count - (long long)inv.size();
  for (const auto& d : inv)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

// ---------------------------------------------------------------------------
// Rational rank: modular fast path, exact fraction-free fallback.

namespace {

uint64_t mod_pow(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = (__uint128_t)r * b % p;
    b = (__uint128_t)b * b % p;
    e >>= 1;
  }
  return r;
}

int rank_mod(const SparseIntMatrix& M, uint64_t p, const std::vector<int>& rank_of_col) {
  using Row = std::vector<std::pair<int, uint64_t>>;
  std::vector<Row> queue;
  queue.reserve(M.rows);
  for (const auto& src : M.data) {
    Row row;
    row.reserve(src.size());
    for (const auto& [c, v] : src) {
      BigInt m = v % (long long)p;
      if (m < 0) m += (long long)p;
      uint64_t mv = m.convert_to<uint64_t>();
      if (mv) row.push_back({rank_of_col[c], mv});
    }
    if (!row.empty()) {
      std::sort(row.begin(), row.end());
      queue.push_back(std::move(row));
    }
  }
  std::sort(queue.begin(), queue.end(),
            [](const Row& a, const Row& b) {
              if (a[0].first != b[0].first) return a[0].first < b[0].first;
              return a.size() < b.size();
            });

  std::vector<Row> pivot_rows(M.cols);
  std::vector<bool> has_pivot(M.cols, false);
  int rank = 0;
  Row tmp;
  for (auto& row : queue) {
    while (!row.empty()) {
      int lead = row[0].first;
      if (!has_pivot[lead]) {
        uint64_t inv = mod_pow(row[0].second, p - 2, p);
        for (auto& e : row) e.second = (__uint128_t)e.second * inv % p;
        pivot_rows[lead] = std::move(row);
        has_pivot[lead] = true;
        rank++;
        break;
      }
      const Row& pr = pivot_rows[lead];
      uint64_t f = row[0].second;  // pr lead is 1
      tmp.clear();
      size_t i = 0, j = 0;
      while (i < row.size() || j < pr.size()) {
        if (j >= pr.size() || (i < row.size() && row[i].first < pr[j].first)) {
          tmp.push_back(row[i++]);
        } else if (i >= row.size() || pr[j].first < row[i].first) {
          uint64_t sub = (__uint128_t)f * pr[j].second % p;
          if (sub) tmp.push_back({pr[j].first, p - sub});
          j++;
        } else {
          uint64_t sub = (__uint128_t)f * pr[j].second % p;
          uint64_t nv = (row[i].second + p - sub) % p;
          if (nv) tmp.push_back({row[i].first, nv});
          i++;
          j++;
        }
      }
      row.swap(tmp);
    }
  }
  return rank;
}

int rank_exact(const SparseIntMatrix& M) {
  // dense fraction-free Gaussian elimination (Bareiss)
  const int R = M.rows, C = M.cols;
  if ((long long)R * C > 9000000)
    throw ResourceCapError("rank_exact: matrix too large for exact fallback");
  std::vector<std::vector<BigInt>> a(R, std::vector<BigInt>(C, 0));
  for (int r = 0; r < R; r++)
    for (const auto& [c, v] : M.data[r]) a[r][c] = v;
  int rank = 0;
  BigInt prev = 1;
  for (int c = 0; c < C && rank < R; c++) {
    int piv = -1;
    for (int r = rank; r < R; r++)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (int r = rank + 1; r < R; r++) {
      for (int j = c + 1; j < C; j++)
        a[r][j] = (a[r][j] * a[rank][c] - a[r][c] * a[rank][j]) / prev;
      a[r][c] = 0;
    }
    prev = a[rank][c];
    rank++;
  }
  return rank;
}

}  // namespace

int rational_rank(const SparseIntMatrix& M, const std::vector<int>* col_order) {
  std::vector<int> rank_of_col(M.cols);
  if (col_order) {
    if ((int)col_order->size() != M.cols)
      throw std::invalid_argument("rational_rank: col_order size mismatch");
    for (int i = 0; i < M.cols; i++) rank_of_col[(*col_order)[i]] = i;
  } else {
    std::iota(rank_of_col.begin(), rank_of_col.end(), 0);
  }
  // fixed word-size primes; disagreement falls back to the exact path
  const uint64_t p1 = 2147483629ULL, p2 = 2147483587ULL;
  int r1 = rank_mod(M, p1, rank_of_col);
  int r2 = rank_mod(M, p2, rank_of_col);
  if (r1 == r2) return r1;
  return rank_exact(M);
}

// ---------------------------------------------------------------------------
// Incremental echelon forms for rational span membership.

namespace {

struct FpEchelon {
  using Row = std::vector<std::pair<int, uint64_t>>;
  uint64_t p;
  std::vector<Row> pivot;
  std::vector<bool> has;

  FpEchelon(uint64_t p_, int cols) : p(p_), pivot(cols), has(cols, false) {}

  Row to_fp(const std::vector<std::pair<int, BigInt>>& row) const {
    std::map<int, uint64_t> acc;
    for (const auto& [c, v] : row) {
      BigInt m = v % (long long)p;
      if (m < 0) m += (long long)p;
      uint64_t mv = m.convert_to<uint64_t>();
      if (mv) acc[c] = (acc[c] + mv) % p;
    }
    Row r;
    for (const auto& [c, v] : acc)
      if (v) r.push_back({c, v});
    return r;
  }

  // eliminate leading entries against pivots until the head is free
  Row reduce(Row row) const {
    Row tmp;
    while (!row.empty()) {
      int lead = row[0].first;
      if (!has[lead]) break;
      const Row& pr = pivot[lead];
      uint64_t f = row[0].second;  // pivot lead is 1
      tmp.clear();
      size_t i = 0, j = 0;
      while (i < row.size() || j < pr.size()) {
        if (j >= pr.size() || (i < row.size() && row[i].first < pr[j].first)) {
          tmp.push_back(row[i++]);
        } else if (i >= row.size() || pr[j].first < row[i].first) {
          uint64_t sub = (__uint128_t)f * pr[j].second % p;
          if (sub) tmp.push_back({pr[j].first, p - sub});
          j++;
        } else {
          uint64_t sub = (__uint128_t)f * pr[j].second % p;
          uint64_t nv = (row[i].second + p - sub) % p;
          if (nv) tmp.push_back({row[i].first, nv});
          i++;
          j++;
        }
      }
      row.swap(tmp);
    }
    return row;
  }

  bool absorb(const Row& fp) {
    Row r = reduce(fp);
    if (r.empty()) return false;
    uint64_t inv = mod_pow(r[0].second, p - 2, p);
    for (auto& e : r) e.second = (__uint128_t)e.second * inv % p;
    int lead = r[0].first;
    pivot[lead] = std::move(r);
    has[lead] = true;
    return true;
  }
};

}  // namespace

struct SpanOracle::Impl {
  FpEchelon e1, e2;
  int r1 = 0, r2 = 0;
  Impl(int cols) : e1(2147483629ULL, cols), e2(2147483587ULL, cols) {}
};

SpanOracle::SpanOracle(int cols) : impl(std::make_unique<Impl>(cols)) {}
SpanOracle::~SpanOracle() = default;
SpanOracle::SpanOracle(SpanOracle&&) noexcept = default;
SpanOracle& SpanOracle::operator=(SpanOracle&&) noexcept = default;

bool SpanOracle::absorb(const std::vector<std::pair<int, BigInt>>& row) {
  bool a1 = impl->e1.absorb(impl->e1.to_fp(row));
  bool a2 = impl->e2.absorb(impl->e2.to_fp(row));
  impl->r1 += a1;
  impl->r2 += a2;
  return a1;
}

bool SpanOracle::contains(const std::vector<std::pair<int, BigInt>>& row) const {
  return impl->e1.reduce(impl->e1.to_fp(row)).empty() &&
         impl->e2.reduce(impl->e2.to_fp(row)).empty();
}

int SpanOracle::rank() const {
  if (impl->r1 != impl->r2)
    throw ResourceCapError("SpanOracle: modular ranks disagree");
  return impl->r1;
}

// ---------------------------------------------------------------------------
// Direct sum with divisibility-chain renormalization.

GradedAbelianGroup direct_sum(const std::vector<GradedAbelianGroup>& parts) {
  GradedAbelianGroup out;
  std::map<BigInt, std::vector<int>> prime_exponents;
  for (const auto& g : parts) {
    out.free_rank += g.free_rank;
    for (BigInt d : g.torsion) {
      for (BigInt p = 2; p * p <= d && p < 1000000; p++) {
        if (d % p != 0) continue;
        int e = 0;
        while (d % p == 0) {
          d /= p;
          e++;
        }
        prime_exponents[p].push_back(e);
      }
      if (d > 1) {
        if (d >= 1000000000000LL)
          throw ResourceCapError("direct_sum: torsion coefficient too large to factor");
        prime_exponents[d].push_back(1);
      }
    }
  }
  size_t chain_len = 0;
  for (auto& [p, es] : prime_exponents) {
    std::sort(es.begin(), es.end(), std::greater<int>());
    chain_len = std::max(chain_len, es.size());
  }
  std::vector<BigInt> chain(chain_len, 1);  // chain[0] = largest factor
  for (auto& [p, es] : prime_exponents)
    for (size_t i = 0; i < es.size(); i++)
      for (int e = 0; e < es[i]; e++) chain[i] *= p;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    if (*it > 1) out.torsion.push_back(*it);
  return out;
}

}  // namespace gda
