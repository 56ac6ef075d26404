#pragma once
// Hand-built diagrams shared across test binaries, plus isomorphism helpers
// for invariance tests.

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "gda/diagram.hpp"
#include "lcg.hpp"

namespace gda_test {

inline gda::Diagram strut() {
  gda::Diagram d;
  int a = d.add_vertex(1), b = d.add_vertex(1);
  d.connect({a, 0}, {b, 0});
  return d;
}

inline gda::Diagram tripod() {
  gda::Diagram d;
  int c = d.add_vertex(3);
  for (int i = 0; i < 3; i++) {
    int l = d.add_vertex(1);
    d.connect({c, i}, {l, 0});
  }
  return d;
}

// two trivalent vertices joined by a parallel pair, one leg each
inline gda::Diagram bubble() {
  gda::Diagram d;
  int x = d.add_vertex(3), y = d.add_vertex(3);
  int a = d.add_vertex(1), b = d.add_vertex(1);
  d.connect({x, 0}, {y, 0});
  d.connect({x, 1}, {y, 1});
  d.connect({x, 2}, {a, 0});
  d.connect({y, 2}, {b, 0});
  return d;
}

// open H shape: two trivalent vertices joined once, two legs each
inline gda::Diagram h_graph() {
  gda::Diagram d;
  int x = d.add_vertex(3), y = d.add_vertex(3);
  d.connect({x, 0}, {y, 0});
  for (int s : {1, 2}) {
    int l = d.add_vertex(1), m = d.add_vertex(1);
    d.connect({x, s}, {l, 0});
    d.connect({y, s}, {m, 0});
  }
  return d;
}

// cycle of w trivalent vertices, one leg each
inline gda::Diagram wheel(int w) {
  gda::Diagram d;
  for (int i = 0; i < w; i++) d.add_vertex(3);
  for (int i = 0; i < w; i++) d.connect({i, 0}, {(i + 1) % w, 1});
  for (int i = 0; i < w; i++) {
    int l = d.add_vertex(1);
    d.connect({i, 2}, {l, 0});
  }
  return d;
}

// open tadpole: self-loop vertex joined to a leg through one edge
inline gda::Diagram tadpole() {
  gda::Diagram d;
  int x = d.add_vertex(3), l = d.add_vertex(1);
  d.connect({x, 0}, {x, 1});
  d.connect({x, 2}, {l, 0});
  return d;
}

inline gda::Diagram chord() {
  gda::Diagram d = strut();
  d.closed = true;
  d.circle = {0, 1};
  return d;
}

inline gda::Diagram noose() {
  gda::Diagram d = tadpole();
  d.closed = true;
  d.circle = {1};
  return d;
}

inline gda::Diagram mercedes() {
  gda::Diagram d = tripod();
  d.closed = true;
  d.circle = {1, 2, 3};
  return d;
}

// two chords, legs interleaved around the circle
inline gda::Diagram crossed_chords() {
  gda::Diagram d;
  int a = d.add_vertex(1), b = d.add_vertex(1);
  int c = d.add_vertex(1), e = d.add_vertex(1);
  d.connect({a, 0}, {c, 0});
  d.connect({b, 0}, {e, 0});
  d.closed = true;
  d.circle = {a, b, c, e};
  return d;
}

// two chords, legs on disjoint arcs
inline gda::Diagram parallel_chords() {
  gda::Diagram d;
  int a = d.add_vertex(1), b = d.add_vertex(1);
  int c = d.add_vertex(1), e = d.add_vertex(1);
  d.connect({a, 0}, {b, 0});
  d.connect({c, 0}, {e, 0});
  d.closed = true;
  d.circle = {a, b, c, e};
  return d;
}

// apply a vertex permutation: vertex v becomes perm[v], slots untouched
inline gda::Diagram remap(const gda::Diagram& d, const std::vector<int>& perm) {
  gda::Diagram out;
  out.closed = d.closed;
  out.valence.resize(d.valence.size());
  out.adj.resize(d.adj.size());
  for (int v = 0; v < d.num_vertices(); v++) out.valence[perm[v]] = d.valence[v];
  for (int v = 0; v < d.num_vertices(); v++)
    for (int s = 0; s < d.valence[v]; s++) {
      gda::HalfRef p = d.adj[v][s];
      out.adj[perm[v]][s] = {perm[p.v], p.s};
    }
  for (int v : d.circle) out.circle.push_back(perm[v]);
  return out;
}

// permute the slot contents of trivalent vertex v: the half-edge at slot s
// moves to slot sp[s]
inline gda::Diagram slot_permute(const gda::Diagram& d, int v, const std::array<int, 3>& sp) {
  auto move = [&](gda::HalfRef h) {
    return h.v == v ? gda::HalfRef{v, sp[h.s]} : h;
  };
  gda::Diagram out = d;
  for (int w = 0; w < d.num_vertices(); w++)
    for (int s = 0; s < d.valence[w]; s++) {
      gda::HalfRef src = move({w, s});
      out.adj[src.v][src.s] = move(d.adj[w][s]);
    }
  return out;
}

inline gda::Diagram rotate_slots(const gda::Diagram& d, int v) {
  return slot_permute(d, v, {1, 2, 0});
}

inline gda::Diagram swap_slots(const gda::Diagram& d, int v, int s1, int s2) {
  std::array<int, 3> sp = {0, 1, 2};
  std::swap(sp[s1], sp[s2]);
  return slot_permute(d, v, sp);
}

inline std::vector<int> random_perm(int n, Lcg& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; i--) std::swap(p[i], p[rng.next() % (i + 1)]);
  return p;
}

// random orientation-preserving relabeling: vertex permutation plus random
// slot rotations at trivalent vertices, plus a circle rotation when closed
inline gda::Diagram random_iso(const gda::Diagram& d, Lcg& rng) {
  gda::Diagram out = remap(d, random_perm(d.num_vertices(), rng));
  for (int v = 0; v < out.num_vertices(); v++)
    if (out.valence[v] == 3)
      for (int k = rng.next() % 3; k > 0; k--) out = rotate_slots(out, v);
  if (out.closed && !out.circle.empty()) {
    int r = (int)(rng.next() % out.circle.size());
    std::rotate(out.circle.begin(), out.circle.begin() + r, out.circle.end());
  }
  return out;
}

}  // namespace gda_test
