#pragma once

#include <okb/property.hpp>

#include <cstddef>
#include <vector>

namespace okb {

// A named operation attached to an object.  The body is optional: a method
// may be declared symbolically (name + parameter list only) or carry an
// evaluable expression over its parameters.
struct MethodDescriptor {
    std::string name;
    std::vector<std::string> params;
    ExprPtr body;  // null when declared without a definition
};

// Canonical comparison key: the normalized body (parameters renamed
// positionally, then canonicalized) when a body exists, null otherwise —
// bodyless methods compare by (name, arity) instead.
ExprPtr method_key(const MethodDescriptor& f);

// Equivalence of methods: identical canonical keys.  Two bodied methods are
// equivalent iff their normalized bodies coincide (names are irrelevant);
// two bodyless methods iff name and arity agree; a bodied and a bodyless
// method are never equivalent.
bool method_equivalent(const MethodDescriptor& f, const MethodDescriptor& g);

// Total order for canonical output: bodyless methods first by (name, arity),
// then bodied methods by key, with (name, arity) as a tiebreak.
int method_compare(const MethodDescriptor& f, const MethodDescriptor& g);

// An object: identifier, specification (ordered property vector), signature
// (ordered method vector).  Declaration order is preserved; every comparison
// below first re-sorts into canonical order, and identifiers never influence
// any predicate.
struct ObjectInstance {
    std::string id;
    std::vector<Property> specification;
    std::vector<MethodDescriptor> signature;
};

// Number of properties.
std::size_t dimension(const ObjectInstance& a);

// Indices of spec/signature entries in canonical order.
std::vector<std::size_t> canonical_order(const std::vector<Property>& spec);
std::vector<std::size_t> canonical_order(const std::vector<MethodDescriptor>& sig);

// Same dimension and pairwise-equivalent properties after canonical ordering
// by name.
bool objects_similar(const ObjectInstance& a, const ObjectInstance& b);

// Equal length and pairwise method equivalence after canonical ordering.
bool signatures_equivalent(const std::vector<MethodDescriptor>& f,
                           const std::vector<MethodDescriptor>& g);

// Similar, with position-wise equal quantitative values and equivalent
// signatures; identifiers are ignored, so an object always equals its clones.
bool object_equal(const ObjectInstance& a, const ObjectInstance& b);

}  // namespace okb
