#pragma once

#include <okb/dsl.hpp>

#include <string>

namespace okb {

// Canonical interchange documents: UTF-8 JSON, two-space indentation, fields
// in fixed order, properties and members in stored order, numbers in shortest
// round-trip decimal.  Equal inputs serialize byte-identically, and
// parse_document() reads every form back.
std::string serialize(const ObjectInstance& value);
std::string serialize(const ObjectClass& value);
std::string serialize(const ObjectCollection& value);

// The whole-document form: top-level `format` (= 1), `objects`, `classes`,
// `sets`, each map in name order.
std::string serialize(const KnowledgeBase& kb);

}  // namespace okb
