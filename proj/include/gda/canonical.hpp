#pragma once

#include <string>

#include "gda/diagram.hpp"

namespace gda {

// Certificate of a diagram up to isomorphism. Isomorphisms respect valences,
// may rotate the circle of a closed diagram (never reflect it), and act on
// slots at trivalent vertices up to cyclic rotation. sign is the parity of
// this diagram's slot orders against the reference orientation of its class;
// self_negative marks classes with an orientation-reversing symmetry, where
// sign is fixed to +1.
struct SignedCanonical {
  std::string key;
  int sign = 1;
  bool self_negative = false;
};

SignedCanonical canonical_form(const Diagram& d);
bool self_negative_automorphism(const Diagram& d);

}  // namespace gda
