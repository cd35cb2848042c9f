#include <okb/algebra.hpp>

#include <algorithm>

namespace okb {

namespace {

// Members of one object in canonical order, ready for pairing.
std::vector<Property> ordered_properties(const ObjectInstance& o) {
    std::vector<Property> out;
    out.reserve(o.specification.size());
    for (std::size_t i : canonical_order(o.specification)) out.push_back(o.specification[i]);
    return out;
}

std::vector<MethodDescriptor> ordered_methods(const ObjectInstance& o) {
    std::vector<MethodDescriptor> out;
    out.reserve(o.signature.size());
    for (std::size_t i : canonical_order(o.signature)) out.push_back(o.signature[i]);
    return out;
}

// Greedy one-to-one pairing of a's members against b's, both visited in
// canonical order.  Equivalence is transitive, so the greedy pairing realizes
// the per-equivalence-class minimum-count match; `matched` receives a's paired
// members and `leftover` the rest, both in canonical order.
template <typename T, typename Eq>
void pair_members(const std::vector<T>& a, const std::vector<T>& b, Eq eq,
                  std::vector<T>& matched, std::vector<T>& leftover) {
    std::vector<bool> used(b.size(), false);
    for (const T& m : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j] || !eq(m, b[j])) continue;
            used[j] = true;
            found = true;
            break;
        }
        (found ? matched : leftover).push_back(m);
    }
}

struct PairResult {
    std::vector<Property> matched_props, leftover_props;
    std::vector<MethodDescriptor> matched_methods, leftover_methods;
};

PairResult pair_objects(const ObjectInstance& a, const ObjectInstance& b) {
    PairResult r;
    pair_members(ordered_properties(a), ordered_properties(b), property_equivalent,
                 r.matched_props, r.leftover_props);
    pair_members(ordered_methods(a), ordered_methods(b), method_equivalent,
                 r.matched_methods, r.leftover_methods);
    return r;
}

std::vector<Property> abstract_all(const std::vector<Property>& props) {
    std::vector<Property> out;
    out.reserve(props.size());
    for (const Property& p : props) out.push_back(abstract_property(p));
    return out;
}

// Splits each operand's members (given in canonical order) into core-matched
// slots and per-operand leftovers.  A member shape joins the core as many
// times as every operand exhibits it (the minimum count across operands);
// each operand's surplus slots beyond that budget become its leftovers.
template <typename T, typename Eq, typename Abstract>
void split_core(const std::vector<std::vector<T>>& slots, Eq eq, Abstract abstr,
                std::vector<T>& core, std::vector<std::vector<T>>& leftovers) {
    struct Group {
        T rep;
        std::vector<std::size_t> count;
        std::size_t budget = 0;
    };
    const std::size_t n = slots.size();
    std::vector<Group> groups;
    std::vector<std::vector<std::size_t>> gid(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const T& s : slots[i]) {
            std::size_t g = groups.size();
            for (std::size_t k = 0; k < groups.size(); ++k) {
                if (eq(groups[k].rep, s)) {
                    g = k;
                    break;
                }
            }
            if (g == groups.size()) {
                groups.push_back(Group{abstr(s), std::vector<std::size_t>(n, 0), 0});
            }
            ++groups[g].count[i];
            gid[i].push_back(g);
        }
    }
    for (Group& g : groups) {
        g.budget = *std::min_element(g.count.begin(), g.count.end());
        for (std::size_t c = 0; c < g.budget; ++c) core.push_back(g.rep);
    }
    leftovers.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> consumed(groups.size(), 0);
        for (std::size_t t = 0; t < slots[i].size(); ++t) {
            std::size_t g = gid[i][t];
            if (consumed[g] < groups[g].budget) {
                ++consumed[g];
            } else {
                leftovers[i].push_back(abstr(slots[i][t]));
            }
        }
    }
}

ObjectClass core_only(ClassCore core) {
    return InhomogeneousClass{std::move(core), {}};
}

}  // namespace

const std::vector<Property>& class_properties(const ObjectClass& k) {
    if (const auto* h = std::get_if<HomogeneousClass>(&k)) return h->specification;
    return std::get<InhomogeneousClass>(k).core.properties;
}

const std::vector<MethodDescriptor>& class_methods(const ObjectClass& k) {
    if (const auto* h = std::get_if<HomogeneousClass>(&k)) return h->signature;
    return std::get<InhomogeneousClass>(k).core.methods;
}

ObjectClass infer_class(const std::vector<ObjectInstance>& objs) {
    if (objs.empty()) throw AlgebraError("class inference requires at least one object");
    bool homogeneous = true;
    for (std::size_t i = 1; i < objs.size() && homogeneous; ++i) {
        homogeneous = objects_similar(objs[0], objs[i]) &&
                      signatures_equivalent(objs[0].signature, objs[i].signature);
    }
    if (homogeneous) {
        HomogeneousClass h;
        h.specification = abstract_all(ordered_properties(objs[0]));
        h.signature = ordered_methods(objs[0]);
        return h;
    }

    const std::size_t n = objs.size();
    std::vector<std::vector<Property>> pslots(n);
    std::vector<std::vector<MethodDescriptor>> mslots(n);
    for (std::size_t i = 0; i < n; ++i) {
        pslots[i] = ordered_properties(objs[i]);
        mslots[i] = ordered_methods(objs[i]);
    }

    ClassCore core;
    std::vector<std::vector<Property>> pleft;
    std::vector<std::vector<MethodDescriptor>> mleft;
    split_core(pslots, property_equivalent, abstract_property, core.properties, pleft);
    split_core(
        mslots, method_equivalent, [](const MethodDescriptor& m) { return m; },
        core.methods, mleft);
    std::stable_sort(core.properties.begin(), core.properties.end(),
                     [](const Property& a, const Property& b) {
                         return property_compare(a, b) < 0;
                     });
    std::stable_sort(core.methods.begin(), core.methods.end(),
                     [](const MethodDescriptor& a, const MethodDescriptor& b) {
                         return method_compare(a, b) < 0;
                     });

    InhomogeneousClass k;
    k.core = std::move(core);
    for (std::size_t i = 0; i < n; ++i) {
        if (pleft[i].empty() && mleft[i].empty()) continue;  // fully covered operand
        k.projections.push_back(Projection{objs[i].id, std::move(pleft[i]), std::move(mleft[i])});
    }
    return k;
}

ObjectCollection union_objects(const std::vector<UnionOperand>& operands,
                               CollectionMode mode, bool strict) {
    if (operands.size() < 2) throw AlgebraError("union requires at least two operands");
    std::vector<ObjectInstance> flat;
    for (const UnionOperand& op : operands) {
        if (const auto* o = std::get_if<ObjectInstance>(&op)) {
            flat.push_back(*o);
        } else {
            const auto& c = std::get<ObjectCollection>(op);
            flat.insert(flat.end(), c.members.begin(), c.members.end());
        }
    }
    if (flat.empty()) throw AlgebraError("union has no members");

    std::vector<ObjectInstance> reps;
    std::map<std::string, std::size_t> mult;
    for (const ObjectInstance& m : flat) {
        std::size_t r = reps.size();
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (object_equal(reps[i], m)) {
                r = i;
                break;
            }
        }
        if (r == reps.size()) {
            // Distinct members must carry distinct identifiers or the
            // multiplicity map's representative keys would collide.
            if (mult.count(m.id)) {
                throw AlgebraError("distinct members share identifier '" + m.id + "'");
            }
            reps.push_back(m);
            mult[m.id] = 1;
        } else {
            if (strict && mode == CollectionMode::Set) {
                throw AlgebraError("strict set union: '" + m.id + "' duplicates '" +
                                   reps[r].id + "'");
            }
            ++mult[reps[r].id];
        }
    }

    ObjectCollection out;
    out.mode = mode;
    out.klass = infer_class(reps);
    if (mode == CollectionMode::Set) {
        out.members = std::move(reps);
        for (auto& [id, count] : mult) count = 1;
    } else {
        out.members = std::move(flat);
    }
    out.multiplicity = std::move(mult);
    return out;
}

std::optional<ObjectClass> intersection(const ObjectInstance& a, const ObjectInstance& b) {
    PairResult r = pair_objects(a, b);
    if (r.matched_props.empty() && r.matched_methods.empty()) return std::nullopt;
    return core_only(ClassCore{abstract_all(r.matched_props), std::move(r.matched_methods)});
}

std::optional<ObjectClass> difference(const ObjectInstance& a, const ObjectInstance& b) {
    PairResult r = pair_objects(a, b);
    if (r.leftover_props.empty() && r.leftover_methods.empty()) return std::nullopt;
    InhomogeneousClass k;
    k.projections.push_back(
        Projection{a.id, abstract_all(r.leftover_props), std::move(r.leftover_methods)});
    return ObjectClass{std::move(k)};
}

std::optional<ObjectClass> symmetric_difference(const ObjectInstance& a,
                                                const ObjectInstance& b) {
    PairResult ra = pair_objects(a, b);
    PairResult rb = pair_objects(b, a);
    bool a_rest = !ra.leftover_props.empty() || !ra.leftover_methods.empty();
    bool b_rest = !rb.leftover_props.empty() || !rb.leftover_methods.empty();
    if (!a_rest && !b_rest) return std::nullopt;
    InhomogeneousClass k;
    if (a_rest) {
        k.projections.push_back(
            Projection{a.id, abstract_all(ra.leftover_props), std::move(ra.leftover_methods)});
    }
    if (b_rest) {
        k.projections.push_back(
            Projection{b.id, abstract_all(rb.leftover_props), std::move(rb.leftover_methods)});
    }
    return ObjectClass{std::move(k)};
}

ObjectInstance clone(const ObjectInstance& a, std::size_t i) {
    if (i < 1) throw AlgebraError("clone index must be at least 1");
    return ObjectInstance{a.id + "_" + std::to_string(i), a.specification, a.signature};
}

bool is_multiset(const ObjectCollection& c) {
    for (const auto& [id, count] : c.multiplicity) {
        if (count >= 2) return true;
    }
    return false;
}

bool is_homogeneous(const std::vector<ObjectInstance>& objs) {
    if (objs.empty()) throw AlgebraError("homogeneity is undefined for an empty family");
    for (std::size_t i = 1; i < objs.size(); ++i) {
        if (!objects_similar(objs[0], objs[i]) ||
            !signatures_equivalent(objs[0].signature, objs[i].signature)) {
            return false;
        }
    }
    return true;
}

namespace {

// The scalar an object exposes to a class's verification function: the value
// of its quantitative property with the requested name when present, else the
// value of its sole quantitative property.
double conformity_input(const ObjectInstance& a, const std::string& prop_name) {
    const QuantitativeProperty* chosen = nullptr;
    std::size_t quant_count = 0;
    const QuantitativeProperty* sole = nullptr;
    for (const Property& p : a.specification) {
        const auto* q = std::get_if<QuantitativeProperty>(&p);
        if (!q) continue;
        ++quant_count;
        sole = q;
        if (q->name == prop_name) chosen = q;
    }
    if (!chosen && quant_count == 1) chosen = sole;
    if (!chosen) {
        throw EvalError("object '" + a.id + "' exposes no value for property '" +
                        prop_name + "'");
    }
    if (!chosen->value) {
        throw EvalError("property '" + chosen->name + "' of object '" + a.id +
                        "' carries no value");
    }
    const double* d = std::get_if<double>(&*chosen->value);
    if (!d) {
        throw EvalError("property '" + chosen->name + "' of object '" + a.id +
                        "' is a sequence, expected a scalar");
    }
    return *d;
}

}  // namespace

std::vector<double> classify(const ObjectInstance& a, const ObjectClass& k) {
    const std::vector<Property>& props = class_properties(k);
    std::vector<double> degrees;
    degrees.reserve(props.size());
    for (const Property& p : props) {
        if (const auto* qual = std::get_if<QualitativeProperty>(&p)) {
            try {
                degrees.push_back(evaluate_verification(qual->vf, conformity_input(a, qual->name)));
            } catch (const EvalError& e) {
                throw EvalError("classifying '" + a.id + "' against property '" + qual->name +
                                "': " + e.what());
            }
        } else {
            const auto& quant = std::get<QuantitativeProperty>(p);
            bool possessed = false;
            for (const Property& op : a.specification) {
                const auto* oq = std::get_if<QuantitativeProperty>(&op);
                if (oq && oq->units == quant.units) {
                    possessed = true;
                    break;
                }
            }
            degrees.push_back(possessed ? 1.0 : 0.0);
        }
    }
    return degrees;
}

}  // namespace okb
