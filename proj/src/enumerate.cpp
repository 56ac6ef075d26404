#include "gda/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

#include "gda/canonical.hpp"

namespace gda {

namespace {

// internal multigraph on trivalent-capacity vertices; loops stored once
struct IGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> deg;
};

// spare capacity becomes legs, one univalent vertex per free slot
Diagram fill_legs(const IGraph& g) {
  Diagram d;
  for (int i = 0; i < g.n; i++) d.add_vertex(3);
  std::vector<int> next(g.n, 0);
  for (auto [a, b] : g.edges) {
    int sa = next[a]++;
    int sb = next[b]++;
    d.connect({a, sa}, {b, sb});
  }
  for (int v = 0; v < g.n; v++)
    while (next[v] < 3) {
      int l = d.add_vertex(1);
      d.connect({v, next[v]++}, {l, 0});
    }
  return d;
}

// future vertices each bring between 1 and 3 edges
bool feasible(int edges_now, int vertices_left, int e_target) {
  return edges_now <= e_target && edges_now + vertices_left <= e_target &&
         edges_now + 3 * vertices_left >= e_target;
}

void insert_state(std::map<std::string, IGraph>& level, IGraph&& g) {
  std::string key = canonical_form(fill_legs(g)).key;
  level.emplace(std::move(key), std::move(g));
}

// attach a fresh vertex to g by an edge multiset into the spare capacity,
// optionally with a self-loop; at least one edge must reach g
void augment(const IGraph& g, int t, int e, std::map<std::string, IGraph>& out) {
  int i = g.n;
  for (int loop = 0; loop <= 1; loop++) {
    int cap = 3 - 2 * loop;
    std::vector<int> mult(i, 0);
    auto place = [&](auto&& self, int j, int left, int total) -> void {
      if (j == i) {
        if (total == 0) return;
        int e_new = static_cast<int>(g.edges.size()) + loop + total;
        if (!feasible(e_new, t - i - 1, e)) return;
        IGraph h = g;
        h.n = i + 1;
        h.deg.push_back(2 * loop + total);
        if (loop) h.edges.push_back({i, i});
        for (int v = 0; v < i; v++) {
          h.deg[v] += mult[v];
          for (int m = 0; m < mult[v]; m++) h.edges.push_back({v, i});
        }
        insert_state(out, std::move(h));
        return;
      }
      int room = std::min(left, 3 - g.deg[j]);
      for (int m = 0; m <= room; m++) {
        mult[j] = m;
        self(self, j + 1, left - m, total + m);
      }
      mult[j] = 0;
    };
    place(place, 0, cap, 0);
  }
}

// connected multigraphs on t vertices, max degree 3, exactly e edges
std::vector<IGraph> internal_graphs(int t, int e) {
  if (t <= 0 || e < t - 1) return {};
  std::map<std::string, IGraph> level;
  for (int loop = 0; loop <= 1; loop++) {
    if (!feasible(loop, t - 1, e)) continue;
    IGraph g;
    g.n = 1;
    g.deg = {2 * loop};
    if (loop) g.edges.push_back({0, 0});
    insert_state(level, std::move(g));
  }
  for (int i = 1; i < t; i++) {
    std::map<std::string, IGraph> next;
    for (const auto& [key, g] : level) augment(g, t, e, next);
    level.swap(next);
  }
  std::vector<IGraph> out;
  for (auto& [key, g] : level)
    if (static_cast<int>(g.edges.size()) == e) out.push_back(std::move(g));
  return out;
}

std::vector<Diagram> sorted_by_key(std::vector<std::pair<std::string, Diagram>>&& keyed) {
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Diagram> out;
  out.reserve(keyed.size());
  for (auto& [key, d] : keyed) out.push_back(std::move(d));
  return out;
}

// places the legs of several component instances around the circle; equal
// instances are interchangeable, so they enter in order of first appearance,
// and position 0 always takes the first leg of instance 0
struct Arranger {
  Diagram base;                        // dashed union, circle left empty
  std::vector<std::vector<int>> legs;  // global leg ids per instance
  std::vector<int> prev_same;          // previous identical instance, or -1
  std::map<std::string, Diagram>* classes = nullptr;
  std::map<std::string, long long>* signed_sums = nullptr;

  int total = 0;
  std::vector<int> circle;
  std::vector<std::vector<char>> used;
  std::vector<int> placed;

  void run() {
    for (const auto& l : legs) total += static_cast<int>(l.size());
    if (total == 0) return;
    circle.assign(total, -1);
    used.clear();
    for (const auto& l : legs) used.push_back(std::vector<char>(l.size(), 0));
    placed.assign(legs.size(), 0);
    circle[0] = legs[0][0];
    used[0][0] = 1;
    placed[0] = 1;
    rec(1);
  }

  void rec(int pos) {
    if (pos == total) {
      base.circle = circle;
      auto c = canonical_form(base);
      if (classes) classes->emplace(c.key, base);
      if (signed_sums) (*signed_sums)[c.key] += c.sign;
      return;
    }
    for (size_t inst = 0; inst < legs.size(); inst++) {
      if (placed[inst] == 0 && prev_same[inst] >= 0 && placed[prev_same[inst]] == 0)
        continue;
      for (size_t l = 0; l < legs[inst].size(); l++) {
        if (used[inst][l]) continue;
        used[inst][l] = 1;
        placed[inst]++;
        circle[pos] = legs[inst][l];
        rec(pos + 1);
        placed[inst]--;
        used[inst][l] = 0;
      }
    }
  }
};

Arranger make_arranger(const std::vector<const Diagram*>& instances,
                       const std::vector<int>& type_of) {
  Arranger ar;
  ar.base.closed = true;
  for (const Diagram* c : instances) {
    int off = ar.base.num_vertices();
    for (int w = 0; w < c->num_vertices(); w++) ar.base.add_vertex(c->valence[w]);
    for (int w = 0; w < c->num_vertices(); w++)
      for (int s = 0; s < c->valence[w]; s++) {
        HalfRef p = c->adj[w][s];
        ar.base.adj[off + w][s] = {off + p.v, p.s};
      }
    std::vector<int> lg;
    for (int w = 0; w < c->num_vertices(); w++)
      if (c->valence[w] == 1) lg.push_back(off + w);
    ar.legs.push_back(std::move(lg));
  }
  ar.prev_same.assign(instances.size(), -1);
  for (size_t i = 1; i < instances.size(); i++)
    if (type_of[i] == type_of[i - 1]) ar.prev_same[i] = static_cast<int>(i) - 1;
  return ar;
}

}  // namespace

std::vector<Diagram> connected_open(int v) {
  if (v < 1)
    throw std::invalid_argument("connected_open: degree must be at least 1");
  std::vector<std::pair<std::string, Diagram>> keyed;
  if (v == 1) {
    Diagram s;
    int a = s.add_vertex(1), b = s.add_vertex(1);
    s.connect({a, 0}, {b, 0});
    keyed.push_back({canonical_form(s).key, std::move(s)});
  }
  for (int t = std::max(1, v - 1); t <= 2 * v - 1; t++) {
    int e = 2 * t - v;
    if (e < 0) continue;
    for (const auto& g : internal_graphs(t, e)) {
      Diagram d = fill_legs(g);
      keyed.push_back({canonical_form(d).key, std::move(d)});
    }
  }
  return sorted_by_key(std::move(keyed));
}

std::vector<Diagram> closed_diagrams(int k, bool connected_only) {
  if (k < 1)
    throw std::invalid_argument("closed_diagrams: degree must be at least 1");
  std::vector<std::vector<Diagram>> cat(k + 1);
  for (int v = 1; v <= k; v++) cat[v] = connected_open(v);

  std::map<std::string, Diagram> classes;
  auto emit = [&](const std::vector<std::pair<int, int>>& picked) {
    std::vector<const Diagram*> instances;
    std::vector<int> type_of;
    int type = -1;
    for (size_t i = 0; i < picked.size(); i++) {
      if (i == 0 || picked[i] != picked[i - 1]) type++;
      instances.push_back(&cat[picked[i].first][picked[i].second]);
      type_of.push_back(type);
    }
    Arranger ar = make_arranger(instances, type_of);
    ar.classes = &classes;
    ar.run();
  };

  if (connected_only) {
    for (size_t i = 0; i < cat[k].size(); i++) emit({{k, static_cast<int>(i)}});
  } else {
    std::vector<std::pair<int, int>> picked;
    auto choose = [&](auto&& self, int remaining, int lo_v, int lo_i) -> void {
      if (remaining == 0) {
        emit(picked);
        return;
      }
      for (int v = lo_v; v <= remaining; v++)
        for (int i = (v == lo_v ? lo_i : 0); i < static_cast<int>(cat[v].size()); i++) {
          picked.push_back({v, i});
          self(self, remaining - v, v, i);
          picked.pop_back();
        }
    };
    choose(choose, k, 1, 0);
  }

  std::vector<std::pair<std::string, Diagram>> keyed;
  for (auto& [key, d] : classes) keyed.push_back({key, std::move(d)});
  return sorted_by_key(std::move(keyed));
}

std::vector<Diagram> enumerate_diagrams(const EnumSpec& spec) {
  std::vector<Diagram> base;
  if (spec.space == Space::B) {
    if (spec.degree < 2)
      throw std::invalid_argument("open diagram spaces start at degree 2");
    if (spec.grading == Grading::Vassiliev) {
      base = connected_open(spec.degree);
    } else {
      for (int v = 2; v <= spec.degree; v++)
        for (auto& d : connected_open(v))
          if (first_betti(d) == spec.degree - v) base.push_back(std::move(d));
    }
  } else {
    if (spec.degree < 1)
      throw std::invalid_argument("closed diagram spaces start at degree 1");
    bool conn = spec.space == Space::AConnected;
    if (spec.grading == Grading::Vassiliev) {
      base = closed_diagrams(spec.degree, conn);
    } else {
      for (int v = 1; v <= spec.degree; v++)
        for (auto& d : closed_diagrams(v, conn))
          if (first_betti(d) == spec.degree - v) base.push_back(std::move(d));
    }
  }
  std::vector<std::pair<std::string, Diagram>> keyed;
  for (auto& d : base) {
    int b1 = first_betti(d);
    if (b1 < spec.loop_min) continue;
    if (spec.loop_max >= 0 && b1 > spec.loop_max) continue;
    keyed.push_back({canonical_form(d).key, std::move(d)});
  }
  return sorted_by_key(std::move(keyed));
}

namespace {

Arranger single_instance(const Diagram& open) {
  if (open.closed)
    throw std::invalid_argument("attach_legs: diagram is already closed");
  if (open.num_univalent() == 0)
    throw std::invalid_argument("attach_legs: diagram has no legs");
  return make_arranger({&open}, {0});
}

}  // namespace

std::vector<Diagram> attach_legs(const Diagram& open) {
  std::map<std::string, Diagram> classes;
  Arranger ar = single_instance(open);
  ar.classes = &classes;
  ar.run();
  std::vector<std::pair<std::string, Diagram>> keyed;
  for (auto& [key, d] : classes) keyed.push_back({key, std::move(d)});
  return sorted_by_key(std::move(keyed));
}

std::map<std::string, long long> chi_vector(const Diagram& open) {
  std::map<std::string, long long> sums;
  Arranger ar = single_instance(open);
  ar.signed_sums = &sums;
  ar.run();
  for (auto it = sums.begin(); it != sums.end();)
    it = it->second == 0 ? sums.erase(it) : std::next(it);
  return sums;
}

}  // namespace gda
