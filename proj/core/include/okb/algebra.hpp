#pragma once

#include <okb/object.hpp>

#include <map>
#include <optional>
#include <stdexcept>

namespace okb {

// Raised when an algebra operation is invoked outside its contract (empty
// operand lists, strict-mode duplicates, bad clone index).
class AlgebraError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The shared part of an inhomogeneous class: property and method shapes that
// every constituent object exhibits.  May be empty (a pure difference class
// has no core).  Properties are abstract — quantitative members keep their
// units but carry no value.
struct ClassCore {
    std::vector<Property> properties;
    std::vector<MethodDescriptor> methods;
};

// The object-specific remainder: members of one constituent object that found
// no counterpart in the core.  `owner` records which object they came from.
struct Projection {
    std::string owner;
    std::vector<Property> properties;
    std::vector<MethodDescriptor> methods;
};

// A class of similar objects: one specification and signature shared by all
// members (abstract, like ClassCore).
struct HomogeneousClass {
    std::vector<Property> specification;
    std::vector<MethodDescriptor> signature;
};

// A class described as core + per-object projections.  Zero projections is a
// legal degenerate shape (intersection results are core-only).
struct InhomogeneousClass {
    ClassCore core;
    std::vector<Projection> projections;
};

using ObjectClass = std::variant<HomogeneousClass, InhomogeneousClass>;

// The properties/methods a class requires of every member: the specification
// for homogeneous classes, the core for inhomogeneous ones.
const std::vector<Property>& class_properties(const ObjectClass& k);
const std::vector<MethodDescriptor>& class_methods(const ObjectClass& k);

enum class CollectionMode { Set, Multiset };

// A set or multiset of objects with its inferred class.  `multiplicity` maps
// each distinct member's representative identifier (first occurrence) to its
// count; the counts always sum to |members|.  In set mode every count is 1
// and member pairs are pairwise unequal.
struct ObjectCollection {
    CollectionMode mode = CollectionMode::Set;
    std::vector<ObjectInstance> members;
    ObjectClass klass;
    std::map<std::string, std::size_t> multiplicity;
};

// Derives the class of a non-empty object family: homogeneous when all pairs
// are similar with equivalent signatures, otherwise core + projections where
// the core holds every property/method shape present in every operand and
// each projection holds exactly one operand's unmatched members.  Every slot
// of every operand is accounted for exactly once.
ObjectClass infer_class(const std::vector<ObjectInstance>& objs);

// One union operand: a bare object or a previously built collection.
using UnionOperand = std::variant<ObjectInstance, ObjectCollection>;

// Union of ≥2 operands.  Flattens collections, then either deduplicates by
// object equality (set mode; first occurrence is kept) or retains duplicates
// and counts them (multiset mode).  The class is inferred over the distinct
// representatives.  With `strict` set, set mode refuses duplicate members
// instead of merging them.
ObjectCollection union_objects(const std::vector<UnionOperand>& operands,
                               CollectionMode mode, bool strict = false);

// Intersection of two objects: a core-only class holding every property and
// method of `a` that has an equivalent counterpart in `b`.  Empty result
// ("does not exist") is expressed as nullopt, not an error.
std::optional<ObjectClass> intersection(const ObjectInstance& a, const ObjectInstance& b);

// Difference a \ b: a coreless class with one projection holding every member
// of `a` without an equivalent counterpart in `b`; nullopt when everything
// matched.
std::optional<ObjectClass> difference(const ObjectInstance& a, const ObjectInstance& b);

// Symmetric difference: a coreless class projecting each side's unmatched
// members (a side that matched completely contributes no projection); nullopt
// when both sides matched fully.
std::optional<ObjectClass> symmetric_difference(const ObjectInstance& a,
                                                const ObjectInstance& b);

// Copy of `a` under the derived identifier "<a.id>_<i>".  Requires i ≥ 1.
ObjectInstance clone(const ObjectInstance& a, std::size_t i);

// 1 iff some member occurs more than once.
bool is_multiset(const ObjectCollection& c);

// 1 iff all pairs are similar with equivalent signatures; empty input errors.
bool is_homogeneous(const std::vector<ObjectInstance>& objs);

// Degrees of conformity of `a` to the class, one per class property in the
// class's stored order.  Qualitative class properties evaluate their
// verification function on the object's scalar value (the property with the
// same name when present, otherwise the object's sole quantitative value);
// quantitative class properties score 1 iff the object possesses a property
// with equal units.  Evaluation failures throw EvalError naming the property.
std::vector<double> classify(const ObjectInstance& a, const ObjectClass& k);

}  // namespace okb
