#pragma once
// Exact integer sparse linear algebra: Smith normal form, rational rank,
// cokernel presentation of finitely generated abelian groups.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gda {

using BigInt = boost::multiprecision::cpp_int;

struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sparse integer matrix; rows hold (col, value) pairs sorted by column,
// values never zero.
struct SparseIntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, BigInt>>> data;

  SparseIntMatrix() = default;
  SparseIntMatrix(int r, int c) : rows(r), cols(c), data(r) {}

  void set(int r, int c, const BigInt& v);
  BigInt get(int r, int c) const;
  void add_row(const std::vector<std::pair<int, BigInt>>& entries);
  size_t nonzeros() const;
};

// Free rank plus torsion coefficients d1 | d2 | ... , each >= 2.
struct GradedAbelianGroup {
  long long free_rank = 0;
  std::vector<BigInt> torsion;

  bool operator==(const GradedAbelianGroup&) const = default;
  std::string to_string() const;  // "0", "Z", "Z^2 + Z/2", ...
};

// Invariant factors d1 | d2 | ... of M (positive, 1s included).
// Hybrid algorithm: sparse elimination on +-1 pivots first, then a dense
// minimal-magnitude-pivot reduction on the remaining block.
std::vector<BigInt> smith_invariants(const SparseIntMatrix& M);

// Cokernel of Z^rows -> Z^n given by the relation rows of M (n = M.cols).
GradedAbelianGroup cokernel(int generator_count, const SparseIntMatrix& M);

// Rank over Q. Modular fast path with two fixed word-size primes; exact
// fraction-free fallback when they disagree.
// col_order, when given, is a priority permutation: columns earlier in the
// list are preferred as pivots (elimination order hint for structured rows).
int rational_rank(const SparseIntMatrix& M,
                  const std::vector<int>* col_order = nullptr);

// Direct sum, renormalized into a single divisibility chain.
GradedAbelianGroup direct_sum(const std::vector<GradedAbelianGroup>& parts);

// Incremental rational span of integer rows, kept as row echelons over the
// same two word-size primes as rational_rank. contains() answers membership
// in the Q-span of the absorbed rows; a wrong answer needs both primes to
// fail simultaneously.
class SpanOracle {
 public:
  explicit SpanOracle(int cols);
  ~SpanOracle();
  SpanOracle(SpanOracle&&) noexcept;
  SpanOracle& operator=(SpanOracle&&) noexcept;

  // true when the row enlarged the span
  bool absorb(const std::vector<std::pair<int, BigInt>>& row);
  bool contains(const std::vector<std::pair<int, BigInt>>& row) const;
  int rank() const;  // throws ResourceCapError when the primes disagree

 private:
  struct Impl;
  std::unique_ptr<Impl> impl;
};

}  // namespace gda
