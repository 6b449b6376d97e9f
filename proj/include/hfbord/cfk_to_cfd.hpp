#pragma once
// Type-D module of the 0-framed knot complement from a simplified CFK complex.

#include <map>
#include <string>

#include "hfbord/cfk.hpp"
#include "hfbord/typed.hpp"

namespace hfb {

struct Translation {
  TypeDModule module;
  std::map<std::string, std::string> correspondence;  // CFK generator -> i0 generator
};

// Needs a reduced complex whose arrows are pure U- or V-powers, in a basis
// that is vertically and horizontally simplified. Only framing 0 is supported.
Translation translate(const CFKComplex& c, int tau, int framing = 0);

// Minus the Alexander grading (relative to the symmetry centre) of the
// generator of vertical homology.
int default_tau(const CFKComplex& c);

}  // namespace hfb
