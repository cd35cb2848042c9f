#include <doctest.h>

#include "support/helpers.hpp"

using namespace okbt;

namespace {

// The three plane figures from the demo document, built directly.
ObjectInstance triangle() {
    return object("A",
                  {quant("sides_count", "count", 3), quant_seq("side_sizes", "cm", {3, 4, 5}),
                   quant_seq("angle_sizes", "degrees", {36.87, 53.13, 90}),
                   qual("triangle_inequality", "max(x) < sum(x) - max(x)")},
                  {method("perimeter", {"sides"}, "sum(sides)"),
                   method("area", {"base", "height"}, "base * height / 2")});
}

ObjectInstance square() {
    return object("B",
                  {quant("sides_count", "count", 4), quant_seq("side_sizes", "cm", {4, 4, 4, 4}),
                   quant_seq("angle_sizes", "degrees", {90, 90, 90, 90})},
                  {method("perimeter", {"sides"}, "sum(sides)"),
                   method("area", {"side"}, "side * side")});
}

}  // namespace

TEST_SUITE("object") {
    TEST_CASE("dimension counts properties, not methods") {
        CHECK(dimension(triangle()) == 4);
        CHECK(dimension(square()) == 3);
        CHECK(dimension(object("empty", {})) == 0);
    }

    TEST_CASE("bodied methods compare by normalized body, not by name") {
        MethodDescriptor p1 = method("perimeter", {"sides"}, "sum(sides)");
        MethodDescriptor p2 = method("perimeter", {"edge_list"}, "sum(edge_list)");
        CHECK(method_equivalent(p1, p2));  // parameter names are invisible

        MethodDescriptor renamed = method("boundary_length", {"sides"}, "sum(sides)");
        CHECK(method_equivalent(p1, renamed));  // method names are invisible too

        MethodDescriptor a1 = method("area", {"base", "height"}, "base * height / 2");
        MethodDescriptor a2 = method("area", {"side"}, "side * side");
        CHECK_FALSE(method_equivalent(a1, a2));
        CHECK(method_equivalent(a1, a1));
    }

    TEST_CASE("parameter order matters for bodies that are not commutative") {
        MethodDescriptor f = method("f", {"a", "b"}, "a / b");
        MethodDescriptor g = method("f", {"b", "a"}, "a / b");
        CHECK_FALSE(method_equivalent(f, g));
        MethodDescriptor h = method("f", {"u", "v"}, "u / v");
        CHECK(method_equivalent(f, h));
    }

    TEST_CASE("bodyless methods compare by name and arity") {
        MethodDescriptor t1 = method("tag", {"t"});
        MethodDescriptor t2 = method("tag", {"label"});
        MethodDescriptor t3 = method("tag", {"u", "v"});
        MethodDescriptor other = method("mark", {"t"});
        CHECK(method_equivalent(t1, t2));
        CHECK_FALSE(method_equivalent(t1, t3));
        CHECK_FALSE(method_equivalent(t1, other));
        // A declaration is never equivalent to a definition.
        CHECK_FALSE(method_equivalent(t1, method("tag", {"t"}, "t")));
    }

    TEST_CASE("similarity needs equal dimension and matching property shapes") {
        ObjectInstance a = triangle();
        CHECK(objects_similar(a, a));
        CHECK(objects_similar(a, clone(a, 1)));
        CHECK_FALSE(objects_similar(a, square()));  // dimensions 4 vs 3

        // Same shapes, different values and declaration order: still similar.
        ObjectInstance x = object("x", {quant("value", "number", 3), qual("pos", "x > 0")});
        ObjectInstance y = object("y", {qual("pos", "v > 0"), quant("value", "number", -16)});
        CHECK(objects_similar(x, y));

        // One unit token off: not similar.
        ObjectInstance z = object("z", {quant("value", "numbers", 3), qual("pos", "x > 0")});
        CHECK_FALSE(objects_similar(x, z));
    }

    TEST_CASE("similarity ignores signatures") {
        ObjectInstance a = object("a", {quant("w", "kg", 1)}, {method("halve", {"v"}, "v / 2")});
        ObjectInstance b = object("b", {quant("w", "kg", 2)});
        CHECK(objects_similar(a, b));
        CHECK_FALSE(object_equal(a, b));  // the signature gap breaks equality
    }

    TEST_CASE("signatures_equivalent matches methods in canonical order") {
        std::vector<MethodDescriptor> f = {method("perimeter", {"s"}, "sum(s)"),
                                           method("area", {"a", "b"}, "a * b / 2")};
        std::vector<MethodDescriptor> g = {method("area", {"x", "y"}, "x * y / 2"),
                                           method("perimeter", {"e"}, "sum(e)")};
        CHECK(signatures_equivalent(f, g));
        CHECK_FALSE(signatures_equivalent(f, {f[0]}));
        CHECK(signatures_equivalent({}, {}));
    }

    TEST_CASE("object equality adds value, and signature agreement to similarity") {
        ObjectInstance a = triangle();
        CHECK(object_equal(a, a));
        CHECK(object_equal(a, clone(a, 1)));  // identifiers are ignored
        CHECK_FALSE(object_equal(a, square()));

        ObjectInstance bigger = triangle();
        std::get<QuantitativeProperty>(bigger.specification[1]).value =
            Value{std::vector<double>{6, 8, 10}};
        CHECK(objects_similar(a, bigger));
        CHECK_FALSE(object_equal(a, bigger));

        ObjectInstance other_area = triangle();
        other_area.signature[1] = method("area", {"side"}, "side * side");
        CHECK(objects_similar(a, other_area));
        CHECK_FALSE(object_equal(a, other_area));
    }

    TEST_CASE("equality never holds where similarity fails") {
        ObjectInstance objs[] = {triangle(), square(), object("e", {}),
                                 object("n", {quant("value", "number", 3)})};
        for (const ObjectInstance& a : objs) {
            for (const ObjectInstance& b : objs) {
                if (object_equal(a, b)) CHECK(objects_similar(a, b));
            }
        }
    }

    TEST_CASE("canonical order sorts properties by name and methods by kind") {
        ObjectInstance a = triangle();
        std::vector<std::size_t> order = canonical_order(a.specification);
        std::vector<std::string> names;
        for (std::size_t i : order) names.push_back(property_name(a.specification[i]));
        CHECK(names == std::vector<std::string>{"angle_sizes", "side_sizes", "sides_count",
                                                "triangle_inequality"});

        std::vector<MethodDescriptor> sig = {method("area", {"s"}, "s * s"),
                                             method("tag", {"t"}),
                                             method("perimeter", {"s"}, "sum(s)")};
        std::vector<std::size_t> morder = canonical_order(sig);
        // Bodyless declarations sort before definitions.
        CHECK(sig[morder[0]].name == "tag");
    }

    TEST_CASE("method_compare is a total order consistent with equivalence") {
        std::vector<MethodDescriptor> pool = {
            method("perimeter", {"s"}, "sum(s)"), method("area", {"a", "b"}, "a * b"),
            method("area", {"s"}, "s * s"), method("tag", {"t"}), method("tag", {"u", "v"})};
        for (const auto& f : pool) {
            for (const auto& g : pool) {
                CHECK((method_compare(f, g) == 0) == method_equivalent(f, g));
                CHECK(method_compare(f, g) == -method_compare(g, f));
            }
        }
    }
}
