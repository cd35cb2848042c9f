#pragma once

#include <string>

namespace okb::demo {

// The worked geometry example: triangle A, square B, trapeze C, plus the sets
// S = A ∪ B ∪ C, S1 = A ∪ B, S2 = A ∪ C.  Identical to demo/geometry.kb.
const std::string& geometry_kb();

// Five number objects and the class R whose qualitative properties are the
// integer/natural/fractional/negative/even checks of the conformity-matrix
// example.  Identical to demo/numbers.kb.
const std::string& numbers_kb();

}  // namespace okb::demo
