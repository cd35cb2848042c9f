#include <doctest.h>

#include "support/helpers.hpp"

#include <okb/demo.hpp>

using namespace okbt;

namespace {

std::string first_error(const ParseResult& r) {
    for (const Diagnostic& d : r.diagnostics) {
        if (d.severity == Severity::Error) return format_diagnostic(d);
    }
    return "";
}

}  // namespace

TEST_SUITE("dsl") {
    TEST_CASE("the geometry document parses completely") {
        KnowledgeBase kb = parse_or_throw(demo::geometry_kb());
        CHECK(kb.objects.size() == 3);
        CHECK(kb.objects.count("A") == 1);
        CHECK(kb.objects.count("B") == 1);
        CHECK(kb.objects.count("C") == 1);
        CHECK(kb.classes.empty());
        CHECK(kb.sets.size() == 3);
        CHECK(kb.sets.at("S").members.size() == 3);
        CHECK(kb.sets.at("S1").members.size() == 2);
        CHECK(kb.sets.at("S2").members.size() == 2);

        const ObjectInstance& a = kb.objects.at("A");
        CHECK(dimension(a) == 4);
        CHECK(a.signature.size() == 2);
        const auto& sides = std::get<QuantitativeProperty>(a.specification[1]);
        CHECK(sides.units == "cm");
        CHECK(values_equal(sides.value, Value{std::vector<double>{3, 4, 5}}));
    }

    TEST_CASE("the numbers document parses with numeric object names") {
        KnowledgeBase kb = parse_or_throw(demo::numbers_kb());
        CHECK(kb.objects.size() == 5);
        CHECK(kb.objects.count("3") == 1);
        CHECK(kb.objects.count("2.75") == 1);
        CHECK(kb.objects.count("-16") == 1);
        CHECK(kb.objects.count("-7.48") == 1);
        REQUIRE(kb.classes.count("R") == 1);
        const auto& r = std::get<HomogeneousClass>(kb.classes.at("R"));
        REQUIRE(r.specification.size() == 5);
        // Declaration order is preserved for declared classes.
        CHECK(property_name(r.specification[0]) == "integer");
        CHECK(property_name(r.specification[1]) == "natural");
        CHECK(property_name(r.specification[2]) == "fractional");
        CHECK(property_name(r.specification[3]) == "negative");
        CHECK(property_name(r.specification[4]) == "even");
    }

    TEST_CASE("empty input is an empty knowledge base, not an error") {
        ParseResult r = parse_document("");
        CHECK(r.ok());
        CHECK(r.kb.objects.empty());
        ParseResult comments = parse_document("# nothing here\n\n# still nothing\n");
        CHECK(comments.ok());
    }

    TEST_CASE("duplicate property names inside one object are refused") {
        ParseResult r =
            parse_document("object X { quant w \"kg\" = 1; quant w \"g\" = 2 }");
        CHECK_FALSE(r.ok());
        CHECK(first_error(r).find("duplicate property") != std::string::npos);
        // Never-partial-results: the object must not survive.
        CHECK(r.kb.objects.empty());
    }

    TEST_CASE("name collisions across namespaces are refused") {
        ParseResult r = parse_document(
            "object X { quant w \"kg\" = 1 }\nclass X { qual p = x > 0 }");
        CHECK_FALSE(r.ok());
        CHECK(first_error(r).find('X') != std::string::npos);
        CHECK(r.kb.objects.empty());
        CHECK(r.kb.classes.empty());
    }

    TEST_CASE("class quantitative members carry no value") {
        KnowledgeBase kb = parse_or_throw("class K { quant width \"cm\" }");
        const auto& k = std::get<HomogeneousClass>(kb.classes.at("K"));
        REQUIRE(k.specification.size() == 1);
        CHECK_FALSE(std::get<QuantitativeProperty>(k.specification[0]).value.has_value());

        ParseResult bad = parse_document("class K { quant width \"cm\" = 3 }");
        CHECK_FALSE(bad.ok());
    }

    TEST_CASE("setdef executes the union at parse time") {
        KnowledgeBase kb = parse_or_throw(
            "object P { quant v \"n\" = 1 }\n"
            "object Q { quant v \"n\" = 2 }\n"
            "set S = union(P, Q, P) mode multiset\n"
            "set D = union(P, Q, P)\n");
        CHECK(kb.sets.at("S").members.size() == 3);
        CHECK(kb.sets.at("S").multiplicity.at("P") == 2);
        // Mode omitted → set.
        CHECK(kb.sets.at("D").members.size() == 2);
        CHECK(kb.sets.at("D").mode == CollectionMode::Set);
    }

    TEST_CASE("sets of sets flatten") {
        KnowledgeBase kb = parse_or_throw(
            "object P { quant v \"n\" = 1 }\n"
            "object Q { quant v \"n\" = 2 }\n"
            "set S1 = union(P, Q)\n"
            "set S2 = union(S1, P) mode multiset\n");
        CHECK(kb.sets.at("S2").members.size() == 3);
        CHECK(kb.sets.at("S2").multiplicity.at("P") == 2);
    }

    TEST_CASE("strict mode turns set-union duplicates into diagnostics") {
        std::string text =
            "object P { quant v \"n\" = 1 }\n"
            "object Q { quant v \"n\" = 1 }\n"  // equal to P
            "set S = union(P, Q)\n";
        CHECK(parse_document(text).ok());
        ParseResult strict = parse_document(text, ParseOptions{true});
        CHECK_FALSE(strict.ok());
        CHECK(strict.kb.sets.empty());
    }

    TEST_CASE("diagnostics carry positions and parsing never throws") {
        const char* garbage[] = {
            "object",
            "object X",
            "object X {",
            "object X { quant }",
            "object X { quant w = 1 }",           // missing units
            "object X { qual p = }",              // missing expression
            "object X { method f( = 1 }",         // broken parameter list
            "class",
            "set S = intersect(P, Q)",            // not a union
            "set S = union(P)",                   // too few operands
            "set S = union(P, Q) mode bag",       // unknown mode
            "object X { quant w \"kg\" = [1, }",  // broken sequence
            "object X { quant w \"kg\" = 1 } trailing",
            "\xff\xfe binary trash \x01",
            "object X { qual p = a + b }",        // two free names
            "object 12notaname. { }",
        };
        for (const char* text : garbage) {
            ParseResult r = parse_document(text);
            CHECK_FALSE(r.ok());
            REQUIRE_FALSE(r.diagnostics.empty());
            const Diagnostic& d = r.diagnostics.front();
            CHECK(format_diagnostic(d).find("error") != std::string::npos);
            CHECK(r.kb.objects.empty());
        }
    }

    TEST_CASE("diagnostic positions point at the offending token") {
        ParseResult r = parse_document("object X {\n  quant w = 1\n}");
        REQUIRE_FALSE(r.ok());
        CHECK(r.diagnostics.front().location.line == 2);
        std::string shown = format_diagnostic(r.diagnostics.front());
        CHECK(shown.substr(0, 2) == "2:");
    }

    TEST_CASE("negative-number object names round-trip through references") {
        KnowledgeBase kb = parse_or_throw(
            "object -16 { quant value \"number\" = -16 }\n"
            "object 4 { quant value \"number\" = 4 }\n"
            "set S = union(-16, 4)\n");
        CHECK(kb.sets.at("S").members.size() == 2);
        CHECK(kb.sets.at("S").members[0].id == "-16");
    }

    TEST_CASE("semicolons and whitespace are optional decoration") {
        KnowledgeBase compact = parse_or_throw(
            "object A{quant w \"kg\"=1;qual p=x>0;method f(a)=a*2}");
        KnowledgeBase spread = parse_or_throw(
            "object A {\n\n  quant w \"kg\" = 1\n\n  qual p = x > 0\n\n"
            "  method f(a) = a * 2\n\n}\n");
        CHECK(structurally_equal(compact, spread));
    }

    TEST_CASE("expression parsing honors precedence and reports errors") {
        CHECK(expr_equal(expr("1 + 2 * 3"), expr("1 + (2 * 3)")));
        CHECK_FALSE(expr_equal(expr("(1 + 2) * 3"), expr("1 + (2 * 3)")));
        CHECK(expr_equal(expr("a < b"), expr("(a) < ((b))")));

        ExpressionResult bad = parse_expression("1 +");
        CHECK(bad.expr == nullptr);
        CHECK_FALSE(bad.diagnostics.empty());

        ExpressionResult arity = parse_expression("ramp(x)");
        CHECK(arity.expr == nullptr);
        CHECK_FALSE(arity.diagnostics.empty());
    }

    TEST_CASE("expression evaluation oracles") {
        Bindings sides{{"sides", Value{std::vector<double>{3, 4, 5}}}};
        CHECK(std::get<double>(eval_value(expr("sum(sides)"), sides)) == 12.0);

        Bindings x75{{"x", Value{75.0}}};
        CHECK(std::get<double>(eval_value(expr("ramp(x, 0, 150)"), x75)) ==
              doctest::Approx(0.5).epsilon(1e-12));

        Bindings zero{{"x", Value{1.0}}, {"y", Value{0.0}}};
        CHECK_THROWS_AS(eval_value(expr("x / y"), zero), EvalError);
    }

    TEST_CASE("run_algebra resolves names and reports the unknown ones") {
        KnowledgeBase kb = parse_or_throw(demo::geometry_kb());

        AlgebraOutcome inter = run_algebra(kb, "intersect(A, B)");
        CHECK(inter.operation == "intersect");
        CHECK_FALSE(inter.does_not_exist);
        REQUIRE(inter.klass.has_value());

        AlgebraOutcome self = run_algebra(kb, "diff(A, A)");
        CHECK(self.does_not_exist);

        AlgebraOutcome u = run_algebra(kb, "union(S1, S2) mode multiset");
        REQUIRE(u.collection.has_value());
        CHECK(u.collection->members.size() == 4);

        AlgebraOutcome c = run_algebra(kb, "clone(A, 2)");
        REQUIRE(c.object.has_value());
        CHECK(c.object->id == "A_2");

        CHECK_THROWS_WITH_AS(run_algebra(kb, "union(A, Z)"),
                             doctest::Contains("unknown object Z"), CommandError);
        CHECK_THROWS_AS(run_algebra(kb, "frobnicate(A)"), CommandError);
        CHECK_THROWS_AS(run_algebra(kb, "union(A,)"), CommandError);
        CHECK_THROWS_AS(run_algebra(kb, "intersect(S1, S2)"), CommandError);
        CHECK_THROWS_AS(run_algebra(kb, "clone(A, x)"), CommandError);
        CHECK_THROWS_AS(run_algebra(kb, ""), CommandError);
    }

    TEST_CASE("run_algebra honors strict mode") {
        KnowledgeBase kb = parse_or_throw(
            "object P { quant v \"n\" = 1 }\nobject Q { quant v \"n\" = 1 }\n");
        CHECK_NOTHROW(run_algebra(kb, "union(P, Q)"));
        CHECK_THROWS_AS(run_algebra(kb, "union(P, Q)", /*strict=*/true), AlgebraError);
    }

    TEST_CASE("JSON documents are detected and ingested") {
        KnowledgeBase kb = parse_or_throw(demo::geometry_kb());
        std::string json = serialize(kb);
        REQUIRE_FALSE(json.empty());
        CHECK(json.front() == '{');
        KnowledgeBase back = parse_or_throw(json);
        CHECK(back.objects.size() == kb.objects.size());
        CHECK(structurally_equal(back, kb));
    }

    TEST_CASE("malformed JSON documents produce diagnostics, not exceptions") {
        const char* bad[] = {
            "{",
            "{}",
            "{\"format\": 2, \"objects\": {}, \"classes\": {}, \"sets\": {}}",
            "{\"format\": 1, \"objects\": [], \"classes\": {}, \"sets\": {}}",
            "{\"format\": 1, \"objects\": {\"X\": {\"properties\": "
            "[{\"kind\": \"mystery\", \"name\": \"p\"}], \"methods\": []}}, "
            "\"classes\": {}, \"sets\": {}}",
        };
        for (const char* text : bad) {
            ParseResult r = parse_document(text);
            CHECK_FALSE(r.ok());
            CHECK_FALSE(r.diagnostics.empty());
            CHECK(r.kb.objects.empty());
        }
    }
}
