#include <benchmark/benchmark.h>

#include <okb/demo.hpp>
#include <okb/dsl.hpp>
#include <okb/serialize.hpp>

using namespace okb;

namespace {

const KnowledgeBase& geometry() {
    static KnowledgeBase kb = parse_document(demo::geometry_kb()).kb;
    return kb;
}

std::vector<ObjectInstance> figures() {
    const KnowledgeBase& kb = geometry();
    return {kb.objects.at("A"), kb.objects.at("B"), kb.objects.at("C")};
}

void bm_parse_document(benchmark::State& state) {
    const std::string& text = demo::geometry_kb();
    for (auto _ : state) {
        ParseResult r = parse_document(text);
        benchmark::DoNotOptimize(r.kb.objects.size());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}

void bm_parse_expression(benchmark::State& state) {
    for (auto _ : state) {
        ExpressionResult r = parse_expression("max(x) < sum(x) - max(x)");
        benchmark::DoNotOptimize(r.expr.get());
    }
}

void bm_canonical(benchmark::State& state) {
    ExprPtr e = parse_expression("(b + a) * 2 + max(3, 1, x) - ramp(x, 0, 150)").expr;
    for (auto _ : state) {
        ExprPtr c = canonical(e);
        benchmark::DoNotOptimize(c.get());
    }
}

void bm_infer_class(benchmark::State& state) {
    std::vector<ObjectInstance> objs = figures();
    for (auto _ : state) {
        ObjectClass k = infer_class(objs);
        benchmark::DoNotOptimize(&k);
    }
}

void bm_union_multiset(benchmark::State& state) {
    std::vector<ObjectInstance> objs = figures();
    std::vector<UnionOperand> operands;
    for (int i = 0; i < 4; ++i) {
        for (const ObjectInstance& o : objs) operands.push_back(o);
    }
    for (auto _ : state) {
        ObjectCollection c = union_objects(operands, CollectionMode::Multiset);
        benchmark::DoNotOptimize(c.members.size());
    }
}

void bm_object_equal(benchmark::State& state) {
    std::vector<ObjectInstance> objs = figures();
    ObjectInstance copy = objs[0];
    copy.id = "copy";
    for (auto _ : state) {
        benchmark::DoNotOptimize(object_equal(objs[0], copy));
        benchmark::DoNotOptimize(object_equal(objs[0], objs[1]));
    }
}

void bm_classify(benchmark::State& state) {
    KnowledgeBase kb = parse_document(demo::numbers_kb()).kb;
    const ObjectClass& r = kb.classes.at("R");
    const ObjectInstance& n = kb.objects.at("-7.48");
    for (auto _ : state) {
        std::vector<double> degrees = classify(n, r);
        benchmark::DoNotOptimize(degrees.data());
    }
}

void bm_serialize(benchmark::State& state) {
    const KnowledgeBase& kb = geometry();
    std::size_t bytes = 0;
    for (auto _ : state) {
        std::string doc = serialize(kb);
        bytes += doc.size();
        benchmark::DoNotOptimize(doc.data());
    }
    state.SetBytesProcessed(static_cast<int64_t>(bytes));
}

void bm_round_trip(benchmark::State& state) {
    std::string doc = serialize(geometry());
    for (auto _ : state) {
        ParseResult r = parse_document(doc);
        benchmark::DoNotOptimize(r.kb.sets.size());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * doc.size()));
}

BENCHMARK(bm_parse_document);
BENCHMARK(bm_parse_expression);
BENCHMARK(bm_canonical);
BENCHMARK(bm_infer_class);
BENCHMARK(bm_union_multiset);
BENCHMARK(bm_object_equal);
BENCHMARK(bm_classify);
BENCHMARK(bm_serialize);
BENCHMARK(bm_round_trip);

}  // namespace

BENCHMARK_MAIN();
