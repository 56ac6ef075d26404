#pragma once

#include <array>
#include <string>
#include <vector>

namespace gda {

// A half-edge is addressed by its vertex and slot index.
// Trivalent vertices own slots 0..2 in cyclic order, univalent vertices slot 0.
struct HalfRef {
  int v = -1;
  int s = -1;
  bool operator==(const HalfRef&) const = default;
  bool operator<(const HalfRef& o) const { return v != o.v ? v < o.v : s < o.s; }
};

// Uni-trivalent multigraph, optionally closed by an oriented circle through
// all univalent vertices (legs). Self-loops and parallel edges are allowed.
// adj is a fixed-point-free involution on the occupied slots.
struct Diagram {
  std::vector<int> valence;                 // 1 or 3 per vertex
  std::vector<std::array<HalfRef, 3>> adj;  // adj[v][s] = paired half-edge
  bool closed = false;
  std::vector<int> circle;  // closed only: leg vertex ids in cyclic order

  int num_vertices() const { return static_cast<int>(valence.size()); }
  int num_univalent() const;
  int num_trivalent() const;
  int num_edges() const;  // dashed edges; a self-loop counts once

  int add_vertex(int val);  // returns the new vertex id
  void connect(HalfRef a, HalfRef b);
  HalfRef partner(HalfRef h) const { return adj[h.v][h.s]; }

  bool operator==(const Diagram&) const = default;
};

struct Degrees {
  int vassiliev;  // half the vertex count of the dashed part
  int grope;      // vassiliev + loops
  int euler;      // trivalent vertices with no univalent neighbor
  int loops;      // first Betti number of the dashed part
};

// Structural checks; throws std::invalid_argument with a reason.
// Closed diagrams additionally need every dashed component to reach the
// circle through at least one leg, and the circle to list each leg once.
void validate(const Diagram& d);

// Component id per vertex (dashed edges only), ids dense from 0.
std::vector<int> components(const Diagram& d);
int num_components(const Diagram& d);
bool is_connected(const Diagram& d);

int first_betti(const Diagram& d);
Degrees degrees(const Diagram& d);

// Closed diagrams only: same dashed part, circle traversed backwards.
Diagram reverse_circle(const Diagram& d);

// Text exchange format. One item per line:
//   v<id>: h<a> h<b> h<c>   trivalent vertex, slots in cyclic order
//   v<id>: h<a>             univalent vertex
//   e: h<a> h<b>            dashed edge pairing two half-edges
//   circle: h<a> h<b> ...   leg half-edges in circle order (closed only)
// format_diagram numbers half-edges densely by (vertex, slot).
std::string format_diagram(const Diagram& d);
Diagram parse_diagram(const std::string& text);

}  // namespace gda
