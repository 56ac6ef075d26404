#pragma once
// Gauss codes of oriented knots and their low-degree invariants: c2 (the
// Conway z^2 coefficient), v3 (degree 3, normalized so the right trefoil
// gives +1), and arf = c2 mod 2. c2 and v3 are signed counts of arrow
// patterns in the code; an independent Alexander-matrix oracle recomputes c2
// for planar-realizable codes.

#include <stdexcept>
#include <string>
#include <vector>

namespace gda {

enum class Passage { Over, Under };

struct GaussToken {
  int label = 0;
  Passage passage = Passage::Over;
  int sign = 1;

  bool operator==(const GaussToken&) const = default;
};

// Token sequence along the knot; each label appears exactly twice, once over
// and once under, both with the same sign. Realizability in the plane is not
// required.
struct GaussCode {
  std::vector<GaussToken> tokens;

  bool operator==(const GaussCode&) const = default;
};

struct GaussParseError : std::runtime_error {
  enum class Kind {
    MalformedToken,
    LabelMultiplicity,
    PassageInconsistency,
    SignInconsistency,
  };

  GaussParseError(Kind k, const std::string& what)
      : std::runtime_error(what), kind(k) {}

  Kind kind;
};

// Whitespace-separated tokens `[OU]<int>[+-]`; empty text is the unknot.
GaussCode parse_gauss(const std::string& text);
std::string format_gauss(const GaussCode& code);

long long c2(const GaussCode& code);
long long v3(const GaussCode& code);
int arf(const GaussCode& code);

// Concatenation at the base points; labels renumbered by first occurrence.
GaussCode connected_sum(const GaussCode& a, const GaussCode& b);
// Swap every passage and flip every sign.
GaussCode mirror(const GaussCode& code);
// Traverse the knot backwards.
GaussCode reverse(const GaussCode& code);
// Move the base point r tokens forward.
GaussCode rotate(const GaussCode& code, int r);

// True when some crossing-by-crossing choice of local embedding closes up
// with Euler characteristic 2.
bool planar_realizable(const GaussCode& code);

// z^2 coefficient of the Conway polynomial via the Alexander matrix of the
// arc structure; rejects codes that are not planar-realizable.
long long conway_c2_oracle(const GaussCode& code);

struct CorpusEntry {
  std::string name;
  GaussCode code;
};

// One knot per line, `name: <gauss tokens>`; errors carry the line number.
std::vector<CorpusEntry> read_corpus(const std::string& path);
std::string invariants_csv(const std::vector<CorpusEntry>& entries);

}  // namespace gda
