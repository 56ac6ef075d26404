#include "gda/canonical.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gda {

namespace {

using Cells = std::vector<std::vector<int>>;

// Individualization-refinement over vertex labelings. Legs of a closed
// diagram are pinned to labels 0..u-1 by circle position, one pass per
// rotation. Every leaf with the minimal edge encoding is visited, so an
// orientation-reversing symmetry always shows up as two minimal leaves of
// opposite parity.
struct Searcher {
  const Diagram& d;
  int n, u;
  std::vector<std::pair<HalfRef, HalfRef>> edges;
  std::vector<std::array<int, 3>> edge_at;
  bool has_loop = false;

  std::vector<std::pair<int, int>> best;
  bool have_best = false;
  int best_parity = 0;
  bool mixed_parity = false;

  explicit Searcher(const Diagram& dd)
      : d(dd), n(dd.num_vertices()), u(dd.num_univalent()) {
    edge_at.assign(n, {-1, -1, -1});
    for (int v = 0; v < n; v++)
      for (int s = 0; s < d.valence[v]; s++) {
        HalfRef h{v, s}, p = d.adj[v][s];
        if (p < h) continue;
        int e = static_cast<int>(edges.size());
        edges.push_back({h, p});
        edge_at[h.v][h.s] = e;
        edge_at[p.v][p.s] = e;
        if (h.v == p.v) has_loop = true;
      }
  }

  void run() {
    if (!d.closed) {
      Cells cells;
      std::vector<int> legs, internals;
      for (int v = 0; v < n; v++) (d.valence[v] == 1 ? legs : internals).push_back(v);
      if (!legs.empty()) cells.push_back(std::move(legs));
      if (!internals.empty()) cells.push_back(std::move(internals));
      refine(cells);
      branch(cells);
      return;
    }
    for (int r = 0; r < u; r++) {
      Cells cells;
      for (int i = 0; i < u; i++) cells.push_back({d.circle[(r + i) % u]});
      std::vector<int> internals;
      for (int v = 0; v < n; v++)
        if (d.valence[v] == 3) internals.push_back(v);
      if (!internals.empty()) cells.push_back(std::move(internals));
      refine(cells);
      branch(cells);
    }
  }

  // split cells by sorted neighbor-color multisets until stable
  void refine(Cells& cells) const {
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<int> color(n, 0);
      for (size_t ci = 0; ci < cells.size(); ci++)
        for (int v : cells[ci]) color[v] = static_cast<int>(ci);
      Cells out;
      for (auto& cell : cells) {
        if (cell.size() == 1) {
          out.push_back(cell);
          continue;
        }
        std::map<std::vector<int>, std::vector<int>> split;
        for (int v : cell) {
          std::vector<int> sig;
          for (int s = 0; s < d.valence[v]; s++) sig.push_back(color[d.adj[v][s].v]);
          std::sort(sig.begin(), sig.end());
          split[sig].push_back(v);
        }
        if (split.size() > 1) changed = true;
        for (auto& [sig, vs] : split) out.push_back(std::move(vs));
      }
      cells.swap(out);
    }
  }

  void branch(Cells& cells) {
    int target = -1;
    for (size_t i = 0; i < cells.size(); i++)
      if (cells[i].size() > 1) {
        target = static_cast<int>(i);
        break;
      }
    if (target < 0) {
      leaf(cells);
      return;
    }
    for (int v : cells[target]) {
      Cells next;
      next.reserve(cells.size() + 1);
      for (size_t i = 0; i < cells.size(); i++) {
        if (static_cast<int>(i) != target) {
          next.push_back(cells[i]);
          continue;
        }
        next.push_back({v});
        std::vector<int> rest;
        for (int w : cells[i])
          if (w != v) rest.push_back(w);
        next.push_back(std::move(rest));
      }
      refine(next);
      branch(next);
    }
  }

  void leaf(const Cells& cells) {
    std::vector<int> lab(n, 0);
    for (size_t i = 0; i < cells.size(); i++) lab[cells[i][0]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> enc;
    enc.reserve(edges.size());
    for (const auto& [h, p] : edges) {
      int a = lab[h.v], b = lab[p.v];
      enc.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(enc.begin(), enc.end());
    if (!have_best || enc < best) {
      best = std::move(enc);
      have_best = true;
      best_parity = has_loop ? 0 : parity(lab);
      mixed_parity = false;
    } else if (enc == best && !has_loop && !mixed_parity) {
      if (parity(lab) != best_parity) mixed_parity = true;
    }
  }

  // Parity of this diagram's slot orders against the labeling's reference
  // orientation: at each trivalent vertex, edges sorted by canonical id give
  // the reference cyclic order. Parallel edges between a vertex pair take
  // instance numbers by slot order at the lower-labeled endpoint, which both
  // endpoints share, so the total parity is labeling-intrinsic.
  int parity(const std::vector<int>& lab) const {
    std::map<std::pair<int, int>, std::vector<int>> parallel;
    for (size_t i = 0; i < edges.size(); i++) {
      int a = lab[edges[i].first.v], b = lab[edges[i].second.v];
      parallel[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(i));
    }
    std::vector<int> inst(edges.size(), 0);
    for (auto& [key, group] : parallel) {
      if (group.size() < 2) continue;
      int lo = key.first;
      auto slot_at_lo = [&](int e) {
        const auto& [h, p] = edges[e];
        return lab[h.v] == lo ? h.s : p.s;
      };
      std::sort(group.begin(), group.end(),
                [&](int a, int b) { return slot_at_lo(a) < slot_at_lo(b); });
      for (size_t k = 0; k < group.size(); k++) inst[group[k]] = static_cast<int>(k);
    }
    int p = 0;
    for (int v = 0; v < n; v++) {
      if (d.valence[v] != 3) continue;
      std::array<std::array<int, 3>, 3> id;
      for (int s = 0; s < 3; s++) {
        int e = edge_at[v][s];
        int a = lab[edges[e].first.v], b = lab[edges[e].second.v];
        id[s] = {std::min(a, b), std::max(a, b), inst[e]};
      }
      int m = 0;
      for (int s = 1; s < 3; s++)
        if (id[s] < id[m]) m = s;
      if (!(id[(m + 1) % 3] < id[(m + 2) % 3])) p ^= 1;
    }
    return p;
  }

  std::string key() const {
    std::ostringstream os;
    os << (d.closed ? 'C' : 'O') << n << '.' << u << ':';
    for (size_t i = 0; i < best.size(); i++) {
      if (i) os << ',';
      os << best[i].first << '-' << best[i].second;
    }
    return os.str();
  }
};

}  // namespace

SignedCanonical canonical_form(const Diagram& d) {
  if (d.num_vertices() == 0)
    return {d.closed ? "C0.0:" : "O0.0:", 1, false};
  Searcher s(d);
  s.run();
  if (!s.have_best)
    throw std::invalid_argument("canonical_form: no admissible labeling");
  bool neg = s.has_loop || s.mixed_parity;
  return {s.key(), neg ? 1 : (s.best_parity ? -1 : 1), neg};
}

bool self_negative_automorphism(const Diagram& d) {
  return canonical_form(d).self_negative;
}

}  // namespace gda
