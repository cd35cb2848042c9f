#include <okb/property.hpp>

#include <cmath>

namespace okb {

VerificationExpression make_verification(ExprPtr raw) {
    std::vector<std::string> names = free_vars(raw);
    if (names.size() > 1) {
        throw EvalError("verification expression uses " + std::to_string(names.size()) +
                        " free names, expected at most one");
    }
    std::string arg = names.empty() ? "x" : names.front();
    ExprPtr key = canonical(arg == "x" ? raw : rename_var(raw, arg, "x"));
    return VerificationExpression{std::move(raw), std::move(arg), std::move(key)};
}

double evaluate_verification(const VerificationExpression& vf, double x) {
    if (!std::isfinite(x)) throw EvalError("verification input is not finite");
    double v = eval_expression(vf.raw, Bindings{{vf.arg, x}});
    return std::min(std::max(v, 0.0), 1.0);
}

const std::string& property_name(const Property& p) {
    return std::visit([](const auto& alt) -> const std::string& { return alt.name; }, p);
}

bool property_equivalent(const Property& p, const Property& q) {
    if (const auto* a = std::get_if<QuantitativeProperty>(&p)) {
        const auto* b = std::get_if<QuantitativeProperty>(&q);
        return b && a->units == b->units;
    }
    const auto* a = std::get_if<QualitativeProperty>(&p);
    const auto* b = std::get_if<QualitativeProperty>(&q);
    return b && expr_equal(a->vf.key, b->vf.key);
}

int property_compare(const Property& p, const Property& q) {
    if (int r = property_name(p).compare(property_name(q))) return r < 0 ? -1 : 1;
    int kp = static_cast<int>(p.index());
    int kq = static_cast<int>(q.index());
    if (kp != kq) return kp < kq ? -1 : 1;
    if (const auto* a = std::get_if<QuantitativeProperty>(&p)) {
        int r = a->units.compare(std::get<QuantitativeProperty>(q).units);
        return r < 0 ? -1 : (r > 0 ? 1 : 0);
    }
    return compare(std::get<QualitativeProperty>(p).vf.key,
                   std::get<QualitativeProperty>(q).vf.key);
}

bool values_equal(const std::optional<Value>& a, const std::optional<Value>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return *a == *b;
}

Property abstract_property(const Property& p) {
    if (const auto* q = std::get_if<QuantitativeProperty>(&p)) {
        return QuantitativeProperty{q->name, q->units, std::nullopt};
    }
    return p;
}

}  // namespace okb
