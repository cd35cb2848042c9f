#include <okb/serialize.hpp>

#include <json.hpp>

namespace okb {

namespace {

using ordered = nlohmann::ordered_json;

ordered value_to_json(const Value& v) {
    if (const double* d = std::get_if<double>(&v)) return ordered(*d);
    return ordered(std::get<std::vector<double>>(v));
}

ordered property_to_json(const Property& p) {
    ordered j = ordered::object();
    if (const auto* q = std::get_if<QuantitativeProperty>(&p)) {
        j["kind"] = "quant";
        j["name"] = q->name;
        j["units"] = q->units;
        if (q->value) j["value"] = value_to_json(*q->value);
    } else {
        const auto& l = std::get<QualitativeProperty>(p);
        j["kind"] = "qual";
        j["name"] = l.name;
        j["vf"] = to_string(l.vf.raw);
    }
    return j;
}

ordered method_to_json(const MethodDescriptor& m) {
    ordered j = ordered::object();
    j["name"] = m.name;
    j["params"] = m.params;
    if (m.body) j["body"] = to_string(m.body);
    return j;
}

ordered members_to_json(const std::vector<Property>& props,
                        const std::vector<MethodDescriptor>& methods) {
    ordered j = ordered::object();
    j["properties"] = ordered::array();
    for (const Property& p : props) j["properties"].push_back(property_to_json(p));
    j["methods"] = ordered::array();
    for (const MethodDescriptor& m : methods) j["methods"].push_back(method_to_json(m));
    return j;
}

ordered object_to_json(const ObjectInstance& o) {
    ordered j = ordered::object();
    j["id"] = o.id;
    ordered members = members_to_json(o.specification, o.signature);
    j["properties"] = std::move(members["properties"]);
    j["methods"] = std::move(members["methods"]);
    return j;
}

// Every class document carries the Def-14 tuple shape (core, projections);
// homogeneous classes simply have their specification as the core and no
// projections.
ordered class_to_json(const ObjectClass& k) {
    ordered j = ordered::object();
    if (const auto* h = std::get_if<HomogeneousClass>(&k)) {
        j["kind"] = "homogeneous";
        j["core"] = members_to_json(h->specification, h->signature);
        j["projections"] = ordered::array();
        return j;
    }
    const auto& in = std::get<InhomogeneousClass>(k);
    j["kind"] = "inhomogeneous";
    j["core"] = members_to_json(in.core.properties, in.core.methods);
    j["projections"] = ordered::array();
    for (const Projection& pr : in.projections) {
        ordered p = ordered::object();
        p["owner"] = pr.owner;
        ordered members = members_to_json(pr.properties, pr.methods);
        p["properties"] = std::move(members["properties"]);
        p["methods"] = std::move(members["methods"]);
        j["projections"].push_back(std::move(p));
    }
    return j;
}

ordered collection_to_json(const ObjectCollection& c) {
    ordered j = ordered::object();
    j["mode"] = c.mode == CollectionMode::Set ? "set" : "multiset";
    j["members"] = ordered::array();
    for (const ObjectInstance& m : c.members) j["members"].push_back(object_to_json(m));
    j["multiplicity"] = ordered::object();
    for (const auto& [id, count] : c.multiplicity) j["multiplicity"][id] = count;
    j["class"] = class_to_json(c.klass);
    return j;
}

ordered kb_to_json(const KnowledgeBase& kb) {
    ordered j = ordered::object();
    j["format"] = 1;
    j["objects"] = ordered::object();
    for (const auto& [name, o] : kb.objects) j["objects"][name] = object_to_json(o);
    j["classes"] = ordered::object();
    for (const auto& [name, k] : kb.classes) j["classes"][name] = class_to_json(k);
    j["sets"] = ordered::object();
    for (const auto& [name, s] : kb.sets) j["sets"][name] = collection_to_json(s);
    return j;
}

}  // namespace

std::string serialize(const ObjectInstance& value) { return object_to_json(value).dump(2); }
std::string serialize(const ObjectClass& value) { return class_to_json(value).dump(2); }
std::string serialize(const ObjectCollection& value) { return collection_to_json(value).dump(2); }
std::string serialize(const KnowledgeBase& kb) { return kb_to_json(kb).dump(2); }

}  // namespace okb
