#pragma once

#include <map>
#include <string>
#include <vector>

#include "gda/diagram.hpp"

namespace gda {

enum class RelTag { SelfNeg, Ihx, Stu, Decomposable, Decomposable1T, LoopCut };
std::string to_string(RelTag tag);

// One integer relation among basis classes, entries keyed by canonical key.
// Coefficients are expressed against the reference orientation of each class.
struct RelationRow {
  std::map<std::string, long long> entries;
  RelTag tag = RelTag::SelfNeg;
  std::string provenance;
};

// Enumerated diagrams with their canonical keys and a key index.
struct Basis {
  std::vector<Diagram> diagrams;
  std::vector<std::string> keys;
  std::vector<int> signs;
  std::vector<bool> self_neg;
  std::map<std::string, int> index;
  static Basis from(std::vector<Diagram> ds);
};

// 2D = 0 for every class with an orientation-reversing symmetry.
std::vector<RelationRow> as_rows(const Basis& b);

// One row per internal non-loop edge between distinct trivalent vertices:
// the edge is contracted and re-expanded in the two other directions, and
// the three terms cancel. Produced keys must lie in the basis.
// The (lo, hi) forms emit rows for the diagram index range [lo, hi) only,
// against the full basis, so generation can be chunked.
std::vector<RelationRow> ihx_rows(const Basis& b);
std::vector<RelationRow> ihx_rows(const Basis& b, int lo, int hi);

// Closed bases: one row per ordered pair of circle-adjacent legs. The two
// legs either merge into a trivalent vertex or trade places, and the three
// terms cancel. Produced keys must lie in the basis.
std::vector<RelationRow> stu_rows(const Basis& b);
std::vector<RelationRow> stu_rows(const Basis& b, int lo, int hi);

// Closed diagrams whose dashed components split over two disjoint circle
// arcs die in the indecomposable quotient.
std::vector<RelationRow> decomposable_rows(const Basis& b);

// Closed diagrams containing a lone chord with circle-adjacent legs die in
// the unframed theory.
std::vector<RelationRow> one_chord_rows(const Basis& b);

// row_id,key,coeff,tag,provenance with quoted text fields
std::string relations_csv(const std::vector<RelationRow>& rows);

}  // namespace gda
