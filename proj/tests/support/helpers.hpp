#pragma once

#include <okb/algebra.hpp>
#include <okb/dsl.hpp>
#include <okb/serialize.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Shared construction and comparison helpers for the unit, property, and
// acceptance suites.
namespace okbt {

using namespace okb;

inline ExprPtr expr(const std::string& text) {
    ExpressionResult r = parse_expression(text);
    if (!r.expr) throw std::runtime_error("bad test expression: " + text);
    return r.expr;
}

inline Property quant(std::string name, std::string units, double value) {
    return QuantitativeProperty{std::move(name), std::move(units), Value{value}};
}

inline Property quant_seq(std::string name, std::string units, std::vector<double> values) {
    return QuantitativeProperty{std::move(name), std::move(units), Value{std::move(values)}};
}

inline Property quant_abstract(std::string name, std::string units) {
    return QuantitativeProperty{std::move(name), std::move(units), std::nullopt};
}

inline Property qual(std::string name, const std::string& vf_text) {
    return QualitativeProperty{std::move(name), make_verification(expr(vf_text))};
}

inline MethodDescriptor method(std::string name, std::vector<std::string> params,
                               const std::string& body_text = "") {
    MethodDescriptor m{std::move(name), std::move(params), nullptr};
    if (!body_text.empty()) m.body = expr(body_text);
    return m;
}

inline ObjectInstance object(std::string id, std::vector<Property> props,
                             std::vector<MethodDescriptor> methods = {}) {
    return ObjectInstance{std::move(id), std::move(props), std::move(methods)};
}

// Canonical serialization is deterministic, so byte equality of documents is
// a faithful structural-equality test.
template <typename T>
bool structurally_equal(const T& a, const T& b) {
    return serialize(a) == serialize(b);
}

inline std::vector<std::string> sorted_names(const std::vector<Property>& props) {
    std::vector<std::string> out;
    for (const Property& p : props) out.push_back(property_name(p));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> sorted_names(const std::vector<MethodDescriptor>& methods) {
    std::vector<std::string> out;
    for (const MethodDescriptor& m : methods) out.push_back(m.name);
    std::sort(out.begin(), out.end());
    return out;
}

inline const Projection* projection_of(const InhomogeneousClass& k, const std::string& owner) {
    for (const Projection& pr : k.projections) {
        if (pr.owner == owner) return &pr;
    }
    return nullptr;
}

// Greedy multiset matching under an equivalence predicate (sound because the
// predicates used here are transitive).
template <typename T, typename Eq>
bool equivalent_multiset(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const T& x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j] || !eq(x, b[j])) continue;
            used[j] = true;
            found = true;
            break;
        }
        if (!found) return false;
    }
    return true;
}

inline KnowledgeBase parse_or_throw(const std::string& text, bool strict = false) {
    ParseResult r = parse_document(text, ParseOptions{strict});
    if (!r.ok()) {
        std::string msg = "document failed to parse:";
        for (const Diagnostic& d : r.diagnostics) msg += "\n  " + format_diagnostic(d);
        throw std::runtime_error(msg);
    }
    return std::move(r.kb);
}

inline std::string read_file_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace okbt
