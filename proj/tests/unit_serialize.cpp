#include <doctest.h>

#include "support/helpers.hpp"

#include <okb/demo.hpp>

#include <json.hpp>

using namespace okbt;
using nlohmann::ordered_json;

namespace {

KnowledgeBase geometry() { return parse_or_throw(demo::geometry_kb()); }

}  // namespace

TEST_SUITE("serialize") {
    TEST_CASE("the embedded demo documents match the files on disk") {
        CHECK(demo::geometry_kb() == read_file_or_throw(OKB_DEMO_DIR "/geometry.kb"));
        CHECK(demo::numbers_kb() == read_file_or_throw(OKB_DEMO_DIR "/numbers.kb"));
    }

    TEST_CASE("a document serializes deterministically") {
        KnowledgeBase kb = geometry();
        std::string once = serialize(kb);
        std::string twice = serialize(kb);
        CHECK(once == twice);
    }

    TEST_CASE("documents round-trip byte-identically") {
        for (const std::string* text : {&demo::geometry_kb(), &demo::numbers_kb()}) {
            std::string first = serialize(parse_or_throw(*text));
            std::string second = serialize(parse_or_throw(first));
            CHECK(first == second);
        }
    }

    TEST_CASE("the document layout: format marker and name-ordered maps") {
        ordered_json doc = ordered_json::parse(serialize(geometry()));
        std::vector<std::string> keys;
        for (const auto& [k, v] : doc.items()) keys.push_back(k);
        CHECK(keys == std::vector<std::string>{"format", "objects", "classes", "sets"});
        CHECK(doc["format"] == 1);

        std::vector<std::string> names;
        for (const auto& [k, v] : doc["objects"].items()) names.push_back(k);
        CHECK(names == std::vector<std::string>{"A", "B", "C"});

        names.clear();
        for (const auto& [k, v] : doc["sets"].items()) names.push_back(k);
        CHECK(names == std::vector<std::string>{"S", "S1", "S2"});
    }

    TEST_CASE("objects embed their full specification and signature") {
        ordered_json doc = ordered_json::parse(serialize(geometry()));
        const ordered_json& a = doc["objects"]["A"];
        CHECK(a["id"] == "A");
        REQUIRE(a["properties"].size() == 4);

        const ordered_json& sides = a["properties"][1];
        CHECK(sides["kind"] == "quant");
        CHECK(sides["name"] == "side_sizes");
        CHECK(sides["units"] == "cm");
        CHECK(sides["value"] == ordered_json::array({3.0, 4.0, 5.0}));

        // The verification function keeps its spelling as written.
        const ordered_json& ti = a["properties"][3];
        CHECK(ti["kind"] == "qual");
        CHECK(ti["vf"] == "max(x) < sum(x) - max(x)");

        REQUIRE(a["methods"].size() == 2);
        CHECK(a["methods"][1]["name"] == "area");
        CHECK(a["methods"][1]["params"] == ordered_json::array({"base", "height"}));
        CHECK(a["methods"][1]["body"] == "base * height / 2");
    }

    TEST_CASE("a core-only class serializes with an explicit empty projection list") {
        KnowledgeBase kb = geometry();
        auto k = intersection(kb.objects.at("A"), kb.objects.at("B"));
        REQUIRE(k.has_value());
        ordered_json doc = ordered_json::parse(serialize(*k));
        CHECK(doc["kind"] == "inhomogeneous");
        CHECK(doc["core"]["properties"].size() == 3);
        CHECK(doc["core"]["methods"].size() == 1);
        CHECK(doc["projections"].is_array());
        CHECK(doc["projections"].empty());
        // Abstract members: no value field at all.
        for (const ordered_json& p : doc["core"]["properties"]) {
            CHECK_FALSE(p.contains("value"));
        }
    }

    TEST_CASE("a homogeneous class serializes its specification as the core") {
        KnowledgeBase kb = parse_or_throw(demo::numbers_kb());
        ordered_json doc = ordered_json::parse(serialize(kb.classes.at("R")));
        CHECK(doc["kind"] == "homogeneous");
        REQUIRE(doc["core"]["properties"].size() == 5);
        CHECK(doc["core"]["properties"][0]["name"] == "integer");
        CHECK(doc["core"]["properties"][0]["vf"] == "fract(x) == 0");
        CHECK(doc["projections"].empty());
    }

    TEST_CASE("collections carry mode, members, multiplicity, and class") {
        KnowledgeBase kb = geometry();
        ObjectCollection u = union_objects({kb.sets.at("S1"), kb.sets.at("S2")},
                                           CollectionMode::Multiset);
        ordered_json doc = ordered_json::parse(serialize(u));
        CHECK(doc["mode"] == "multiset");
        REQUIRE(doc["members"].size() == 4);
        std::vector<std::string> ids;
        for (const ordered_json& m : doc["members"]) ids.push_back(m["id"]);
        CHECK(ids == std::vector<std::string>{"A", "B", "A", "C"});
        CHECK(doc["multiplicity"]["A"] == 2);
        CHECK(doc["multiplicity"]["B"] == 1);
        CHECK(doc["multiplicity"]["C"] == 1);
        CHECK(doc["class"]["kind"] == "inhomogeneous");
        // Members are embedded whole, not referenced by name.
        CHECK(doc["members"][0]["properties"].size() == 4);
    }

    TEST_CASE("serialized algebra results parse back as documents embed them") {
        KnowledgeBase kb = geometry();
        std::string jsonified = serialize(kb);
        KnowledgeBase back = parse_or_throw(jsonified);
        CHECK(structurally_equal(kb, back));
        CHECK(back.sets.at("S1").mode == CollectionMode::Set);
        CHECK(object_equal(back.objects.at("A"), kb.objects.at("A")));
    }

    TEST_CASE("expression spellings use canonical spacing") {
        // Whatever the author wrote, printing normalizes the whitespace (but
        // not the structure: operand order and parentheses are preserved).
        KnowledgeBase kb = parse_or_throw(
            "object X { qual p = x>0; method f(a,b) = (a+b)/2 }");
        ordered_json doc = ordered_json::parse(serialize(kb.objects.at("X")));
        CHECK(doc["properties"][0]["vf"] == "x > 0");
        CHECK(doc["methods"][0]["body"] == "(a + b) / 2");
    }
}
