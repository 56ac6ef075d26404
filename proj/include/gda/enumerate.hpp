#pragma once

#include <map>
#include <string>
#include <vector>

#include "gda/diagram.hpp"

namespace gda {

enum class Grading { Vassiliev, Grope };
enum class Space { B, A, AConnected };

struct EnumSpec {
  Space space = Space::B;
  Grading grading = Grading::Vassiliev;
  int degree = 0;
  int loop_min = 0;   // restrict the dashed first Betti number
  int loop_max = -1;  // -1 = unbounded
};

// Connected open diagrams of Vassiliev degree v >= 1, one per isomorphism
// class, sorted by canonical key. Degree 1 holds the strut and the tadpole.
std::vector<Diagram> connected_open(int v);

// Closed diagrams of Vassiliev degree k >= 1: disjoint unions of connected
// open pieces, every piece with a leg, legs interleaved on the circle in all
// inequivalent ways. connected_only keeps one-piece dashed parts.
std::vector<Diagram> closed_diagrams(int k, bool connected_only);

// Degree/space/filter driven enumeration. Open spaces reject degree < 2,
// closed spaces reject degree < 1. Grope grading selects diagrams with
// vassiliev + loops equal to the degree.
std::vector<Diagram> enumerate_diagrams(const EnumSpec& spec);

// All inequivalent closings of an open diagram: its legs distributed around
// a circle. attach_legs lists the distinct classes; chi_vector sums the
// orientation signs of every cyclic leg order per canonical key, dropping
// cancelled entries.
std::vector<Diagram> attach_legs(const Diagram& open);
std::map<std::string, long long> chi_vector(const Diagram& open);

}  // namespace gda
