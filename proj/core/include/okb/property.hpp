#pragma once

#include <okb/expr.hpp>

#include <optional>
#include <string>
#include <variant>

namespace okb {

// A named attribute carrying a measured value and a units token.  Units are
// opaque tokens compared for exact equality; no conversion table exists, so
// "kg" and "g" are simply different.  Class descriptions reuse this type with
// `value` absent: the units keep their meaning, the measurement does not.
struct QuantitativeProperty {
    std::string name;
    std::string units;
    std::optional<Value> value;
};

// A degree-of-satisfaction function over one free argument.  `raw` is the
// expression as written (kept for display and serialization); `key` is the
// canonical form — constant-folded, commutative operands sorted, the argument
// renamed to `x` — and is the only thing equality looks at.
struct VerificationExpression {
    ExprPtr raw;
    std::string arg;  // original free-argument name ("x" when none appears)
    ExprPtr key;
};

// Builds a VerificationExpression from a raw tree.  The tree must mention at
// most one distinct free name; anything else throws EvalError.
VerificationExpression make_verification(ExprPtr raw);

// Evaluates a verification expression at x and clamps the result into [0,1].
// Evaluation failures (division by zero, non-finite input or result) throw
// EvalError — a degree is never silently coerced to 0.
double evaluate_verification(const VerificationExpression& vf, double x);

// A named attribute defined by its verification function.
struct QualitativeProperty {
    std::string name;
    VerificationExpression vf;
};

using Property = std::variant<QuantitativeProperty, QualitativeProperty>;

const std::string& property_name(const Property& p);

// Equivalence of properties: quantitative pairs compare unit tokens (values
// are ignored), qualitative pairs compare canonical verification forms, and
// mixed kinds are never equivalent.
bool property_equivalent(const Property& p, const Property& q);

// Total order used for canonical output: by name, then kind (quantitative
// first), then units / canonical verification form.
int property_compare(const Property& p, const Property& q);

// Equality of stored measurements (exact; both-absent counts as equal).
bool values_equal(const std::optional<Value>& a, const std::optional<Value>& b);

// Strips the measured value, leaving the abstract shape used in class
// descriptions.  Qualitative properties are already abstract.
Property abstract_property(const Property& p);

}  // namespace okb
