#include <okb/object.hpp>

#include <algorithm>
#include <numeric>

namespace okb {

namespace {

template <typename T, typename Cmp>
std::vector<std::size_t> sorted_indices(const std::vector<T>& items, Cmp cmp) {
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return cmp(items[i], items[j]) < 0;
    });
    return order;
}

}  // namespace

ExprPtr method_key(const MethodDescriptor& f) {
    if (!f.body) return nullptr;
    ExprPtr b = f.body;
    // Positional parameter names use a '$' prefix the surface language cannot
    // produce, so normalized bodies never collide with user identifiers.
    for (std::size_t i = 0; i < f.params.size(); ++i) {
        b = rename_var(b, f.params[i], "$" + std::to_string(i));
    }
    return canonical(b);
}

bool method_equivalent(const MethodDescriptor& f, const MethodDescriptor& g) {
    if (static_cast<bool>(f.body) != static_cast<bool>(g.body)) return false;
    if (!f.body) return f.name == g.name && f.params.size() == g.params.size();
    return expr_equal(method_key(f), method_key(g));
}

int method_compare(const MethodDescriptor& f, const MethodDescriptor& g) {
    int kf = f.body ? 1 : 0;
    int kg = g.body ? 1 : 0;
    if (kf != kg) return kf < kg ? -1 : 1;
    if (kf == 1) {
        if (int r = compare(method_key(f), method_key(g))) return r;
    }
    if (int r = f.name.compare(g.name)) return r < 0 ? -1 : 1;
    if (f.params.size() != g.params.size()) return f.params.size() < g.params.size() ? -1 : 1;
    return 0;
}

std::size_t dimension(const ObjectInstance& a) {
    return a.specification.size();
}

std::vector<std::size_t> canonical_order(const std::vector<Property>& spec) {
    return sorted_indices(spec, property_compare);
}

std::vector<std::size_t> canonical_order(const std::vector<MethodDescriptor>& sig) {
    return sorted_indices(sig, method_compare);
}

bool objects_similar(const ObjectInstance& a, const ObjectInstance& b) {
    if (dimension(a) != dimension(b)) return false;
    auto oa = canonical_order(a.specification);
    auto ob = canonical_order(b.specification);
    for (std::size_t i = 0; i < oa.size(); ++i) {
        if (!property_equivalent(a.specification[oa[i]], b.specification[ob[i]])) return false;
    }
    return true;
}

bool signatures_equivalent(const std::vector<MethodDescriptor>& f,
                           const std::vector<MethodDescriptor>& g) {
    if (f.size() != g.size()) return false;
    auto of = canonical_order(f);
    auto og = canonical_order(g);
    for (std::size_t i = 0; i < of.size(); ++i) {
        if (!method_equivalent(f[of[i]], g[og[i]])) return false;
    }
    return true;
}

bool object_equal(const ObjectInstance& a, const ObjectInstance& b) {
    if (!objects_similar(a, b)) return false;
    auto oa = canonical_order(a.specification);
    auto ob = canonical_order(b.specification);
    for (std::size_t i = 0; i < oa.size(); ++i) {
        const auto* pa = std::get_if<QuantitativeProperty>(&a.specification[oa[i]]);
        const auto* pb = std::get_if<QuantitativeProperty>(&b.specification[ob[i]]);
        if (!pa != !pb) return false;  // kinds already match via similarity
        if (pa && !values_equal(pa->value, pb->value)) return false;
    }
    return signatures_equivalent(a.signature, b.signature);
}

}  // namespace okb
