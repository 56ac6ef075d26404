#include "gda/gauss.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "gda/linalg.hpp"

namespace gda {

namespace {

using Kind = GaussParseError::Kind;

struct PatternTerm {
  const char* pattern;
  long long coeff;
};

// signed arrow-pattern tables; value = (signed count) / den
constexpr long long c2_den = 1;
constexpr PatternTerm c2_terms[] = {
    {"O1U2U1O2", 1},
};
constexpr long long v3_den = 1;
constexpr PatternTerm v3_terms[] = {
    {"U1U2O1U3O2O3", 1}, {"U1O2U3O1U2O3", 1}, {"O1U2O3U1O2U3", 1},
    {"O1O2U3U1O3U2", 1}, {"O1U2U3O2U1O3", 1},
};

struct Arrow {
  int o_pos = -1;
  int u_pos = -1;
  int sign = 1;
  int first() const { return std::min(o_pos, u_pos); }
};

// arrows ordered by first passage; input is assumed validated
std::vector<Arrow> arrows_of(const GaussCode& code) {
  std::map<int, Arrow> by_label;
  for (int p = 0; p < static_cast<int>(code.tokens.size()); p++) {
    const GaussToken& t = code.tokens[p];
    Arrow& a = by_label[t.label];
    (t.passage == Passage::Over ? a.o_pos : a.u_pos) = p;
    a.sign = t.sign;
  }
  std::vector<Arrow> out;
  for (const auto& [label, a] : by_label) out.push_back(a);
  std::sort(out.begin(), out.end(),
            [](const Arrow& x, const Arrow& y) { return x.first() < y.first(); });
  return out;
}

template <class Fn>
void for_subsets(int n, int m, std::vector<int>& pick, int from, Fn&& fn) {
  if (static_cast<int>(pick.size()) == m) {
    fn(pick);
    return;
  }
  for (int i = from; i <= n - (m - static_cast<int>(pick.size())); i++) {
    pick.push_back(i);
    for_subsets(n, m, pick, i + 1, fn);
    pick.pop_back();
  }
}

template <size_t N>
long long signed_pattern_sum(const GaussCode& code, const PatternTerm (&terms)[N],
                             long long den) {
  std::map<std::string, long long> table;
  std::vector<int> sizes;
  for (const PatternTerm& t : terms) {
    table[t.pattern] = t.coeff;
    int m = static_cast<int>(std::string(t.pattern).size()) / 4;
    if (std::find(sizes.begin(), sizes.end(), m) == sizes.end())
      sizes.push_back(m);
  }
  std::vector<Arrow> arrows = arrows_of(code);
  int n = static_cast<int>(arrows.size());
  long long total = 0;
  std::vector<int> pick;
  for (int m : sizes) {
    for_subsets(n, m, pick, 0, [&](const std::vector<int>& sub) {
      std::vector<std::pair<int, std::pair<int, char>>> slots;
      long long w = 1;
      for (int i : sub) {
        slots.push_back({arrows[i].o_pos, {i, 'O'}});
        slots.push_back({arrows[i].u_pos, {i, 'U'}});
        w *= arrows[i].sign;
      }
      std::sort(slots.begin(), slots.end());
      std::map<int, int> name;
      std::string key;
      for (const auto& [pos, iu] : slots) {
        auto [i, type] = iu;
        if (!name.count(i)) name[i] = static_cast<int>(name.size()) + 1;
        key += type;
        key += static_cast<char>('0' + name[i]);
      }
      auto it = table.find(key);
      if (it != table.end()) total += it->second * w;
    });
  }
  if (total % den != 0)
    throw std::logic_error("pattern sum not divisible by its denominator");
  return total / den;
}

// ---- Laurent-free integer polynomials in one variable ----

using Poly = std::map<int, BigInt>;

void p_add(Poly& a, const Poly& b) {
  for (const auto& [e, c] : b) {
    BigInt& v = a[e];
    v += c;
    if (v == 0) a.erase(e);
  }
}

Poly p_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [e1, c1] : a)
    for (const auto& [e2, c2] : b) {
      BigInt& v = r[e1 + e2];
      v += c1 * c2;
      if (v == 0) r.erase(e1 + e2);
    }
  return r;
}

Poly p_sub(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [e, c] : b) {
    BigInt& v = r[e];
    v -= c;
    if (v == 0) r.erase(e);
  }
  return r;
}

Poly p_divexact(Poly a, const Poly& b) {
  Poly q;
  if (a.empty()) return q;
  int db = b.rbegin()->first;
  const BigInt& lb = b.rbegin()->second;
  while (!a.empty()) {
    int da = a.rbegin()->first;
    const BigInt& ca = a.rbegin()->second;
    if (da < db || ca % lb != 0)
      throw std::logic_error("inexact polynomial division");
    BigInt qc = ca / lb;
    q[da - db] = qc;
    a = p_sub(a, p_mul({{da - db, qc}}, b));
  }
  return q;
}

// fraction-free determinant over the polynomial ring
Poly bareiss_det(std::vector<std::vector<Poly>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return {{0, 1}};
  int sign = 1;
  Poly prev = {{0, 1}};
  for (int k = 0; k + 1 < n; k++) {
    if (m[k][k].empty()) {
      int piv = -1;
      for (int r = k + 1; r < n; r++)
        if (!m[r][k].empty()) {
          piv = r;
          break;
        }
      if (piv < 0) return {};
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; i++) {
      for (int j = k + 1; j < n; j++) {
        Poly num = p_sub(p_mul(m[i][j], m[k][k]), p_mul(m[i][k], m[k][j]));
        m[i][j] = num.empty() ? Poly{} : p_divexact(std::move(num), prev);
      }
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  Poly d = m[n - 1][n - 1];
  if (sign < 0)
    for (auto& [e, c] : d) c = -c;
  return d;
}

void validate(const GaussCode& code) {
  struct Seen {
    int overs = 0, unders = 0, total = 0;
    int sign = 0;
    bool sign_clash = false;
  };
  std::map<int, Seen> seen;
  for (const GaussToken& t : code.tokens) {
    Seen& s = seen[t.label];
    s.total++;
    (t.passage == Passage::Over ? s.overs : s.unders)++;
    if (s.sign != 0 && s.sign != t.sign) s.sign_clash = true;
    s.sign = t.sign;
  }
  for (const auto& [label, s] : seen) {
    std::string where = "label " + std::to_string(label);
    if (s.total != 2)
      throw GaussParseError(Kind::LabelMultiplicity,
                            where + " appears " + std::to_string(s.total) +
                                " times, expected 2");
    if (s.overs != 1)
      throw GaussParseError(Kind::PassageInconsistency,
                            where + " needs one over and one under passage");
    if (s.sign_clash)
      throw GaussParseError(Kind::SignInconsistency,
                            where + " carries both signs");
  }
}

GaussCode relabeled_by_first_occurrence(std::vector<GaussToken> tokens) {
  std::map<int, int> relab;
  for (GaussToken& t : tokens) {
    auto it = relab.find(t.label);
    if (it == relab.end())
      it = relab.insert({t.label, static_cast<int>(relab.size()) + 1}).first;
    t.label = it->second;
  }
  return GaussCode{std::move(tokens)};
}

}  // namespace

GaussCode parse_gauss(const std::string& text) {
  GaussCode code;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    bool ok = tok.size() >= 3 && (tok[0] == 'O' || tok[0] == 'U') &&
              (tok.back() == '+' || tok.back() == '-');
    std::string digits = ok ? tok.substr(1, tok.size() - 2) : "";
    ok = ok && !digits.empty() &&
         std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); });
    if (!ok)
      throw GaussParseError(Kind::MalformedToken,
                            "malformed token '" + tok + "'");
    GaussToken t;
    t.label = std::stoi(digits);
    t.passage = tok[0] == 'O' ? Passage::Over : Passage::Under;
    t.sign = tok.back() == '+' ? 1 : -1;
    code.tokens.push_back(t);
  }
  validate(code);
  return code;
}

std::string format_gauss(const GaussCode& code) {
  std::string out;
  for (const GaussToken& t : code.tokens) {
    if (!out.empty()) out += ' ';
    out += t.passage == Passage::Over ? 'O' : 'U';
    out += std::to_string(t.label);
    out += t.sign > 0 ? '+' : '-';
  }
  return out;
}

long long c2(const GaussCode& code) {
  return signed_pattern_sum(code, c2_terms, c2_den);
}

long long v3(const GaussCode& code) {
  return signed_pattern_sum(code, v3_terms, v3_den);
}

int arf(const GaussCode& code) {
  return static_cast<int>(((c2(code) % 2) + 2) % 2);
}

GaussCode connected_sum(const GaussCode& a, const GaussCode& b) {
  std::vector<GaussToken> tokens = a.tokens;
  int shift = 0;
  for (const GaussToken& t : a.tokens) shift = std::max(shift, t.label);
  for (GaussToken t : b.tokens) {
    t.label += shift;
    tokens.push_back(t);
  }
  return relabeled_by_first_occurrence(std::move(tokens));
}

GaussCode mirror(const GaussCode& code) {
  GaussCode out = code;
  for (GaussToken& t : out.tokens) {
    t.passage = t.passage == Passage::Over ? Passage::Under : Passage::Over;
    t.sign = -t.sign;
  }
  return out;
}

GaussCode reverse(const GaussCode& code) {
  GaussCode out = code;
  std::reverse(out.tokens.begin(), out.tokens.end());
  return out;
}

GaussCode rotate(const GaussCode& code, int r) {
  GaussCode out = code;
  int n = static_cast<int>(out.tokens.size());
  if (n == 0) return out;
  r = ((r % n) + n) % n;
  std::rotate(out.tokens.begin(), out.tokens.begin() + r, out.tokens.end());
  return out;
}

bool planar_realizable(const GaussCode& code) {
  int n2 = static_cast<int>(code.tokens.size());
  int n = n2 / 2;
  if (n == 0) return true;
  if (n > 16) throw ResourceCapError("realizability search capped at 16 crossings");

  // arc p runs from token p to token p+1; half-edges 2p (tail), 2p+1 (head)
  std::map<int, std::vector<int>> pos_of;
  for (int p = 0; p < n2; p++) pos_of[code.tokens[p].label].push_back(p);
  struct Corner {
    int in_p, out_p, in_q, out_q;
  };
  std::vector<Corner> corners;
  for (const auto& [label, ps] : pos_of) {
    int p = ps[0], q = ps[1];
    corners.push_back({2 * ((p - 1 + n2) % n2) + 1, 2 * p,
                       2 * ((q - 1 + n2) % n2) + 1, 2 * q});
  }

  std::vector<int> rot_next(2 * n2);
  std::vector<char> visited(2 * n2);
  for (long mask = 0; mask < (1L << n); mask++) {
    for (int i = 0; i < n; i++) {
      const Corner& c = corners[i];
      // both strands pass straight through; the two local embeddings differ
      // by which side the second strand enters
      int cyc[4];
      if ((mask >> i) & 1) {
        cyc[0] = c.in_p, cyc[1] = c.out_q, cyc[2] = c.out_p, cyc[3] = c.in_q;
      } else {
        cyc[0] = c.in_p, cyc[1] = c.in_q, cyc[2] = c.out_p, cyc[3] = c.out_q;
      }
      for (int j = 0; j < 4; j++) rot_next[cyc[j]] = cyc[(j + 1) % 4];
    }
    std::fill(visited.begin(), visited.end(), 0);
    int faces = 0;
    for (int h = 0; h < 2 * n2; h++) {
      if (visited[h]) continue;
      faces++;
      int cur = h;
      while (!visited[cur]) {
        visited[cur] = 1;
        cur = rot_next[cur ^ 1];
      }
    }
    if (n - n2 + faces == 2) return true;
  }
  return false;
}

long long conway_c2_oracle(const GaussCode& code) {
  int n2 = static_cast<int>(code.tokens.size());
  int n = n2 / 2;
  if (n == 0) return 0;
  if (!planar_realizable(code))
    throw std::invalid_argument("code is not planar-realizable");

  // arcs end at under-passages; arc j terminates at the j-th under token
  std::vector<int> u_pos;
  for (int p = 0; p < n2; p++)
    if (code.tokens[p].passage == Passage::Under) u_pos.push_back(p);
  auto arc_of = [&](int p) {
    for (int j = 0; j < n; j++)
      if (u_pos[j] >= p) return j;
    return 0;
  };

  std::map<int, std::pair<int, int>> passages;  // label -> (over pos, under pos)
  std::map<int, int> sign_of;
  for (int p = 0; p < n2; p++) {
    const GaussToken& t = code.tokens[p];
    if (t.passage == Passage::Over)
      passages[t.label].first = p;
    else
      passages[t.label].second = p;
    sign_of[t.label] = t.sign;
  }

  std::vector<std::vector<Poly>> rows;
  for (const auto& [label, pu] : passages) {
    auto [op, up] = pu;
    int a_in = arc_of(up);
    int a_out = (a_in + 1) % n;
    int a_over = arc_of(op);
    std::vector<Poly> row(n);
    if (sign_of[label] > 0) {
      p_add(row[a_out], {{0, 1}});
      p_add(row[a_in], {{1, -1}});
      p_add(row[a_over], {{1, 1}, {0, -1}});
    } else {
      p_add(row[a_out], {{1, 1}});
      p_add(row[a_in], {{0, -1}});
      p_add(row[a_over], {{0, 1}, {1, -1}});
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::vector<Poly>> minor;
  for (int i = 0; i + 1 < n; i++)
    minor.push_back({rows[i].begin(), rows[i].end() - 1});
  Poly delta = bareiss_det(std::move(minor));
  if (delta.empty())
    throw std::runtime_error("vanishing Alexander determinant");

  int m0 = delta.begin()->first;
  int span = delta.rbegin()->first - m0;
  if (span % 2 != 0)
    throw std::runtime_error("odd-span Alexander polynomial");
  BigInt at_one = 0;
  for (const auto& [e, c] : delta) at_one += c;
  if (at_one != 1 && at_one != -1)
    throw std::runtime_error("Alexander polynomial not normalizable");

  BigInt dd = 0;
  for (const auto& [e, c] : delta) {
    long long m = e - m0 - span / 2;
    dd += c * m * (m - 1);
  }
  if (at_one == -1) dd = -dd;
  if (dd % 2 != 0) throw std::logic_error("odd second derivative");
  BigInt result = dd / 2;
  return result.convert_to<long long>();
}

std::vector<CorpusEntry> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path);
  std::vector<CorpusEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": missing ':' separator");
    std::string name = line.substr(0, colon);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty())
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": empty knot name");
    try {
      out.push_back({name, parse_gauss(line.substr(colon + 1))});
    } catch (const GaussParseError& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " +
                               e.what());
    }
  }
  return out;
}

std::string invariants_csv(const std::vector<CorpusEntry>& entries) {
  std::string out = "name,c2,v3,arf\n";
  for (const CorpusEntry& e : entries) {
    out += e.name + "," + std::to_string(c2(e.code)) + "," +
           std::to_string(v3(e.code)) + "," + std::to_string(arf(e.code)) +
           "\n";
  }
  return out;
}

}  // namespace gda
