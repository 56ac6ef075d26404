#include "gda/relations.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gda/canonical.hpp"

namespace gda {

std::string to_string(RelTag tag) {
  switch (tag) {
    case RelTag::SelfNeg: return "SELF_NEG";
    case RelTag::Ihx: return "IHX";
    case RelTag::Stu: return "STU";
    case RelTag::Decomposable: return "DECOMPOSABLE";
    case RelTag::Decomposable1T: return "DECOMPOSABLE_1T";
    case RelTag::LoopCut: return "LOOP_CUT";
  }
  return "?";
}

Basis Basis::from(std::vector<Diagram> ds) {
  Basis b;
  b.diagrams = std::move(ds);
  b.keys.reserve(b.diagrams.size());
  for (int i = 0; i < static_cast<int>(b.diagrams.size()); i++) {
    SignedCanonical c = canonical_form(b.diagrams[i]);
    b.keys.push_back(c.key);
    b.signs.push_back(c.sign);
    b.self_neg.push_back(c.self_negative);
    if (!b.index.emplace(c.key, i).second)
      throw std::logic_error("basis: duplicate class " + c.key);
  }
  return b;
}

namespace {

void add_term(std::map<std::string, long long>& entries, const Diagram& d,
              long long coeff) {
  SignedCanonical c = canonical_form(d);
  entries[c.key] += coeff * c.sign;
}

void prune_zeros(std::map<std::string, long long>& entries) {
  for (auto it = entries.begin(); it != entries.end();)
    it = it->second == 0 ? entries.erase(it) : std::next(it);
}

void check_keys(const Basis& b, const RelationRow& row) {
  for (const auto& [key, coeff] : row.entries)
    if (!b.index.count(key))
      throw std::logic_error("relation " + to_string(row.tag) + " from " +
                             row.provenance + " references unknown class " + key);
}

// Both rewirings of an internal edge x-y. The four bystander stubs around
// the edge move to fixed slots of the rebuilt x and y, and a fresh edge
// bridges them; everything else keeps its address.
std::array<Diagram, 2> ihx_terms(const Diagram& d, HalfRef ex, HalfRef ey) {
  int x = ex.v, y = ey.v;
  std::array<HalfRef, 4> src = {
      HalfRef{x, (ex.s + 1) % 3}, HalfRef{x, (ex.s + 2) % 3},
      HalfRef{y, (ey.s + 1) % 3}, HalfRef{y, (ey.s + 2) % 3}};
  struct Plan {
    std::array<HalfRef, 4> dst;
    HalfRef bx, by;
  };
  Plan plan_i{{HalfRef{x, 1}, HalfRef{y, 1}, HalfRef{y, 2}, HalfRef{x, 0}},
              {x, 2},
              {y, 0}};
  Plan plan_x{{HalfRef{x, 1}, HalfRef{y, 1}, HalfRef{x, 2}, HalfRef{y, 2}},
              {x, 0},
              {y, 0}};
  auto build = [&](const Plan& p) {
    Diagram out = d;
    auto addr = [&](HalfRef h) {
      for (int i = 0; i < 4; i++)
        if (h == src[i]) return p.dst[i];
      return h;
    };
    for (int v = 0; v < d.num_vertices(); v++)
      for (int s = 0; s < d.valence[v]; s++) {
        HalfRef h{v, s}, q = d.partner(h);
        if (!(h < q)) continue;
        if (h == ex && q == ey) continue;
        out.connect(addr(h), addr(q));
      }
    out.connect(p.bx, p.by);
    return out;
  };
  return {build(plan_i), build(plan_x)};
}

// Merge of two circle-adjacent legs: the first becomes a trivalent vertex
// holding the far ends of both leg edges plus a fresh edge to the second,
// which stays the lone leg of the site. A lone chord collapses to a looped
// vertex instead.
Diagram stu_merged(const Diagram& d, int p) {
  int u = static_cast<int>(d.circle.size());
  int l1 = d.circle[p], l2 = d.circle[(p + 1) % u];
  HalfRef n1 = d.partner({l1, 0}), n2 = d.partner({l2, 0});
  Diagram s = d;
  s.valence[l1] = 3;
  if (n1 == HalfRef{l2, 0}) {
    s.connect({l1, 0}, {l1, 1});
    s.connect({l1, 2}, {l2, 0});
  } else {
    s.connect({l1, 0}, n2);
    s.connect({l1, 1}, n1);
    s.connect({l1, 2}, {l2, 0});
  }
  s.circle.clear();
  for (int q : d.circle)
    if (q != l1) s.circle.push_back(q);
  return s;
}

Diagram stu_swapped(const Diagram& d, int p) {
  int u = static_cast<int>(d.circle.size());
  Diagram w = d;
  std::swap(w.circle[p], w.circle[(p + 1) % u]);
  return w;
}

// True when the dashed components can be cut into two nonempty groups
// living on complementary circle arcs.
bool splits_on_arcs(const Diagram& d) {
  if (!d.closed) return false;
  std::vector<int> comp = components(d);
  int nc = num_components(d);
  if (nc < 2) return false;
  int u = static_cast<int>(d.circle.size());
  std::vector<int> cpos(u);
  for (int i = 0; i < u; i++) cpos[i] = comp[d.circle[i]];
  for (int st = 0; st < u; st++) {
    std::vector<char> inside(nc, 0);
    for (int len = 1; len < u; len++) {
      inside[cpos[(st + len - 1) % u]] = 1;
      bool clean = true;
      for (int q = 0; q < u && clean; q++) {
        if ((q - st + u) % u < len) continue;
        if (inside[cpos[q]]) clean = false;
      }
      if (clean) return true;
    }
    std::fill(inside.begin(), inside.end(), 0);
  }
  return false;
}

// A dashed component that is a single chord whose legs sit next to each
// other on the circle.
bool has_adjacent_chord(const Diagram& d) {
  if (!d.closed) return false;
  int u = static_cast<int>(d.circle.size());
  for (int p = 0; p < u; p++) {
    int a = d.circle[p], b = d.circle[(p + 1) % u];
    if (a != b && d.partner({a, 0}) == HalfRef{b, 0}) return true;
  }
  return false;
}

}  // namespace

std::vector<RelationRow> as_rows(const Basis& b) {
  std::vector<RelationRow> rows;
  for (int i = 0; i < static_cast<int>(b.diagrams.size()); i++) {
    if (!b.self_neg[i]) continue;
    RelationRow row;
    row.tag = RelTag::SelfNeg;
    row.provenance = b.keys[i];
    row.entries[b.keys[i]] = 2;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RelationRow> ihx_rows(const Basis& b) {
  return ihx_rows(b, 0, static_cast<int>(b.diagrams.size()));
}

std::vector<RelationRow> ihx_rows(const Basis& b, int lo, int hi) {
  std::vector<RelationRow> rows;
  for (int i = lo; i < hi; i++) {
    const Diagram& d = b.diagrams[i];
    for (int v = 0; v < d.num_vertices(); v++)
      for (int s = 0; s < d.valence[v]; s++) {
        HalfRef h{v, s}, q = d.partner(h);
        if (!(h < q)) continue;
        if (h.v == q.v) continue;
        if (d.valence[h.v] != 3 || d.valence[q.v] != 3) continue;
        auto [term_i, term_x] = ihx_terms(d, h, q);
        RelationRow row;
        row.tag = RelTag::Ihx;
        row.provenance =
            b.keys[i] + "@E" + std::to_string(h.v) + "." + std::to_string(h.s);
        add_term(row.entries, term_i, 1);
        row.entries[b.keys[i]] += -1LL * b.signs[i];
        add_term(row.entries, term_x, 1);
        prune_zeros(row.entries);
        check_keys(b, row);
        rows.push_back(std::move(row));
      }
  }
  return rows;
}

std::vector<RelationRow> stu_rows(const Basis& b) {
  return stu_rows(b, 0, static_cast<int>(b.diagrams.size()));
}

std::vector<RelationRow> stu_rows(const Basis& b, int lo, int hi) {
  std::vector<RelationRow> rows;
  for (int i = lo; i < hi; i++) {
    const Diagram& d = b.diagrams[i];
    if (!d.closed)
      throw std::invalid_argument("stu_rows: open diagram in basis");
    int u = static_cast<int>(d.circle.size());
    if (u < 2) continue;
    for (int p = 0; p < u; p++) {
      RelationRow row;
      row.tag = RelTag::Stu;
      row.provenance = b.keys[i] + "@P" + std::to_string(p);
      add_term(row.entries, stu_merged(d, p), 1);
      row.entries[b.keys[i]] += -1LL * b.signs[i];
      add_term(row.entries, stu_swapped(d, p), 1);
      prune_zeros(row.entries);
      check_keys(b, row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<RelationRow> decomposable_rows(const Basis& b) {
  std::vector<RelationRow> rows;
  for (int i = 0; i < static_cast<int>(b.diagrams.size()); i++) {
    if (!splits_on_arcs(b.diagrams[i])) continue;
    RelationRow row;
    row.tag = RelTag::Decomposable;
    row.provenance = b.keys[i];
    row.entries[b.keys[i]] = b.signs[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RelationRow> one_chord_rows(const Basis& b) {
  std::vector<RelationRow> rows;
  for (int i = 0; i < static_cast<int>(b.diagrams.size()); i++) {
    if (!has_adjacent_chord(b.diagrams[i])) continue;
    RelationRow row;
    row.tag = RelTag::Decomposable1T;
    row.provenance = b.keys[i];
    row.entries[b.keys[i]] = b.signs[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string relations_csv(const std::vector<RelationRow>& rows) {
  std::ostringstream out;
  out << "row_id,key,coeff,tag,provenance\n";
  for (int id = 0; id < static_cast<int>(rows.size()); id++)
    for (const auto& [key, coeff] : rows[id].entries)
      out << id << ",\"" << key << "\"," << coeff << "," << to_string(rows[id].tag)
          << ",\"" << rows[id].provenance << "\"\n";
  return out.str();
}

}  // namespace gda
