#include <okb/demo.hpp>

namespace okb::demo {

// These strings are verbatim copies of demo/geometry.kb and demo/numbers.kb;
// a test compares them against the files to catch drift.

const std::string& geometry_kb() {
    static const std::string text = R"kb(# Plane figures: a triangle, a square, and a trapeze.
#
# All three share the counting/measuring properties (number of sides, sizes
# of sides, sizes of angles) and the perimeter method, so those four land in
# the core of any class derived from them.  The triangle-inequality and
# parallel-sides checks and the three distinct area formulas are figure-
# specific and stay in the projections.

object A {
    quant sides_count "count" = 3
    quant side_sizes "cm" = [3, 4, 5]
    quant angle_sizes "degrees" = [36.87, 53.13, 90]
    qual triangle_inequality = max(x) < sum(x) - max(x)
    method perimeter(sides) = sum(sides)
    method area(base, height) = base * height / 2
}

object B {
    quant sides_count "count" = 4
    quant side_sizes "cm" = [4, 4, 4, 4]
    quant angle_sizes "degrees" = [90, 90, 90, 90]
    method perimeter(sides) = sum(sides)
    method area(side) = side * side
}

object C {
    quant sides_count "count" = 4
    quant side_sizes "cm" = [3, 5, 4, 5]
    quant angle_sizes "degrees" = [63.43, 116.57, 116.57, 63.43]
    qual parallel_sides = x >= 1
    method perimeter(sides) = sum(sides)
    method area(a, b, height) = (a + b) / 2 * height
}

set S = union(A, B, C)
set S1 = union(A, B) mode set
set S2 = union(A, C) mode set
)kb";
    return text;
}

const std::string& numbers_kb() {
    static const std::string text = R"kb(# Real numbers as objects, plus the class R of number kinds.
#
# Each object carries its value as a single quantitative property; the class
# describes five qualitative checks evaluated on that value.  `fract` is the
# fractional part (x minus its truncation), so fract(x) == 0 means "integer".
#
# Known deviation: even(-7.48) evaluates to 0 here.  A published conformity
# table marks that cell 1, but a number with a fractional part cannot be even
# under the integer-product definition below; the printed 1 is treated as a
# misprint and the 0 is asserted explicitly in the test suite.

object 3 { quant value "number" = 3 }
object 2.75 { quant value "number" = 2.75 }
object -16 { quant value "number" = -16 }
object 4 { quant value "number" = 4 }
object -7.48 { quant value "number" = -7.48 }

class R {
    qual integer = fract(x) == 0
    qual natural = (fract(x) == 0) * (x > 0)
    qual fractional = fract(x) != 0
    qual negative = x < 0
    qual even = (fract(x) == 0) * (fract(x / 2) == 0)
}
)kb";
    return text;
}

}  // namespace okb::demo
