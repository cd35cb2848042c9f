#include <okb/expr.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace okb {

namespace {

bool is_commutative(BinaryOp op) {
    return op == BinaryOp::Add || op == BinaryOp::Mul || op == BinaryOp::Eq ||
           op == BinaryOp::Ne;
}

int cmp_double(double a, double b) {
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

template <typename T>
int cmp_ord(T a, T b) {
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

double require_scalar(const Value& v, const char* context) {
    if (const double* d = std::get_if<double>(&v)) return *d;
    throw EvalError(std::string("sequence value in scalar context (") + context + ")");
}

double check_finite(double v) {
    if (!std::isfinite(v)) throw EvalError("non-finite result");
    return v;
}

void append_numbers(const Value& v, std::vector<double>& out) {
    if (const double* d = std::get_if<double>(&v)) {
        out.push_back(*d);
    } else {
        const auto& seq = std::get<std::vector<double>>(v);
        out.insert(out.end(), seq.begin(), seq.end());
    }
}

double apply_binary(BinaryOp op, double a, double b) {
    switch (op) {
        case BinaryOp::Add: return check_finite(a + b);
        case BinaryOp::Sub: return check_finite(a - b);
        case BinaryOp::Mul: return check_finite(a * b);
        case BinaryOp::Div:
            if (b == 0.0) throw EvalError("division by zero");
            return check_finite(a / b);
        case BinaryOp::Lt: return a < b ? 1.0 : 0.0;
        case BinaryOp::Le: return a <= b ? 1.0 : 0.0;
        case BinaryOp::Gt: return a > b ? 1.0 : 0.0;
        case BinaryOp::Ge: return a >= b ? 1.0 : 0.0;
        case BinaryOp::Eq: return a == b ? 1.0 : 0.0;
        case BinaryOp::Ne: return a != b ? 1.0 : 0.0;
    }
    throw EvalError("unknown operator");
}

const char* op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
    }
    return "?";
}

// Precedence tiers for printing: comparisons < additive < multiplicative < atoms.
int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge:
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 1;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 2;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 3;
    }
    return 0;
}

int node_rank(const Expr& e) {
    return static_cast<int>(e.node.index());
}

void print(const ExprPtr& e, std::string& out, int parent_prec, bool right_side);

void print_binary(const BinaryExpr& b, std::string& out, int parent_prec, bool right_side) {
    int prec = precedence(b.op);
    // A right-hand child at equal precedence keeps its parentheses so that
    // distinct trees render to distinct strings.
    bool parens = prec < parent_prec || (prec == parent_prec && right_side);
    if (parens) out.push_back('(');
    print(b.lhs, out, prec, false);
    out.push_back(' ');
    out += op_text(b.op);
    out.push_back(' ');
    print(b.rhs, out, prec, true);
    if (parens) out.push_back(')');
}

void print(const ExprPtr& e, std::string& out, int parent_prec, bool right_side) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberExpr>) {
                out += format_number(node.value);
            } else if constexpr (std::is_same_v<T, VarExpr>) {
                out += node.name;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                print_binary(node, out, parent_prec, right_side);
            } else {
                out += builtin_name(node.fn);
                out.push_back('(');
                for (std::size_t i = 0; i < node.args.size(); ++i) {
                    if (i) out += ", ";
                    print(node.args[i], out, 0, false);
                }
                out.push_back(')');
            }
        },
        e->node);
}

void collect_free(const ExprPtr& e, std::set<std::string>& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, VarExpr>) {
                out.insert(node.name);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                collect_free(node.lhs, out);
                collect_free(node.rhs, out);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                for (const auto& a : node.args) collect_free(a, out);
            }
        },
        e->node);
}

const NumberExpr* as_number(const ExprPtr& e) {
    return std::get_if<NumberExpr>(&e->node);
}

// Fold a call over constant arguments; returns nullptr when folding is not
// possible (ramp with lo == hi would divide by zero, non-finite results).
ExprPtr fold_call(Builtin fn, const std::vector<ExprPtr>& args) {
    std::vector<double> vals;
    vals.reserve(args.size());
    for (const auto& a : args) {
        const NumberExpr* n = as_number(a);
        if (!n) return nullptr;
        vals.push_back(n->value);
    }
    switch (fn) {
        case Builtin::Min:
            return number(*std::min_element(vals.begin(), vals.end()));
        case Builtin::Max:
            return number(*std::max_element(vals.begin(), vals.end()));
        case Builtin::Clamp:
            return number(std::min(std::max(vals[0], vals[1]), vals[2]));
        case Builtin::Ramp: {
            if (vals[2] == vals[1]) return nullptr;
            double t = (vals[0] - vals[1]) / (vals[2] - vals[1]);
            if (!std::isfinite(t)) return nullptr;
            return number(std::min(std::max(t, 0.0), 1.0));
        }
        case Builtin::Sum:
            return number(vals[0]);
        case Builtin::Fract:
            return number(vals[0] - std::trunc(vals[0]));
    }
    return nullptr;
}

}  // namespace

ExprPtr number(double value) {
    if (value == 0.0) value = 0.0;  // collapse -0.0
    return std::make_shared<Expr>(Expr{NumberExpr{value}});
}

ExprPtr var(std::string name) {
    return std::make_shared<Expr>(Expr{VarExpr{std::move(name)}});
}

ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<Expr>(Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}});
}

ExprPtr call(Builtin fn, std::vector<ExprPtr> args) {
    return std::make_shared<Expr>(Expr{CallExpr{fn, std::move(args)}});
}

int compare(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return 0;
    if (int r = cmp_ord(node_rank(*a), node_rank(*b))) return r;
    if (const auto* na = std::get_if<NumberExpr>(&a->node)) {
        return cmp_double(na->value, std::get<NumberExpr>(b->node).value);
    }
    if (const auto* va = std::get_if<VarExpr>(&a->node)) {
        int r = va->name.compare(std::get<VarExpr>(b->node).name);
        return r < 0 ? -1 : (r > 0 ? 1 : 0);
    }
    if (const auto* ba = std::get_if<BinaryExpr>(&a->node)) {
        const auto& bb = std::get<BinaryExpr>(b->node);
        if (int r = cmp_ord(static_cast<int>(ba->op), static_cast<int>(bb.op))) return r;
        if (int r = compare(ba->lhs, bb.lhs)) return r;
        return compare(ba->rhs, bb.rhs);
    }
    const auto& ca = std::get<CallExpr>(a->node);
    const auto& cb = std::get<CallExpr>(b->node);
    if (int r = cmp_ord(static_cast<int>(ca.fn), static_cast<int>(cb.fn))) return r;
    if (int r = cmp_ord(ca.args.size(), cb.args.size())) return r;
    for (std::size_t i = 0; i < ca.args.size(); ++i) {
        if (int r = compare(ca.args[i], cb.args[i])) return r;
    }
    return 0;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    return compare(a, b) == 0;
}

ExprPtr canonical(const ExprPtr& e) {
    return std::visit(
        [&](const auto& node) -> ExprPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberExpr>) {
                return number(node.value);
            } else if constexpr (std::is_same_v<T, VarExpr>) {
                return e;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                ExprPtr lhs = canonical(node.lhs);
                ExprPtr rhs = canonical(node.rhs);
                BinaryOp op = node.op;
                if (op == BinaryOp::Gt) {
                    op = BinaryOp::Lt;
                    std::swap(lhs, rhs);
                } else if (op == BinaryOp::Ge) {
                    op = BinaryOp::Le;
                    std::swap(lhs, rhs);
                }
                if (is_commutative(op) && compare(lhs, rhs) > 0) std::swap(lhs, rhs);
                if (as_number(lhs) && as_number(rhs)) {
                    // Fold only when the operation is defined and finite here;
                    // a constant division by zero stays unfolded and fails at
                    // evaluation instead.
                    try {
                        return number(apply_binary(op, as_number(lhs)->value,
                                                   as_number(rhs)->value));
                    } catch (const EvalError&) {
                    }
                }
                return binary(op, std::move(lhs), std::move(rhs));
            } else {
                std::vector<ExprPtr> args;
                args.reserve(node.args.size());
                for (const auto& a : node.args) args.push_back(canonical(a));
                if (node.fn == Builtin::Min || node.fn == Builtin::Max) {
                    std::sort(args.begin(), args.end(),
                              [](const ExprPtr& x, const ExprPtr& y) {
                                  return compare(x, y) < 0;
                              });
                }
                if (ExprPtr folded = fold_call(node.fn, args)) return folded;
                return call(node.fn, std::move(args));
            }
        },
        e->node);
}

std::string to_string(const ExprPtr& e) {
    std::string out;
    print(e, out, 0, false);
    return out;
}

std::vector<std::string> free_vars(const ExprPtr& e) {
    std::set<std::string> names;
    collect_free(e, names);
    return {names.begin(), names.end()};
}

ExprPtr rename_var(const ExprPtr& e, const std::string& from, const std::string& to) {
    return std::visit(
        [&](const auto& node) -> ExprPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberExpr>) {
                return e;
            } else if constexpr (std::is_same_v<T, VarExpr>) {
                return node.name == from ? var(to) : e;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                return binary(node.op, rename_var(node.lhs, from, to),
                              rename_var(node.rhs, from, to));
            } else {
                std::vector<ExprPtr> args;
                args.reserve(node.args.size());
                for (const auto& a : node.args) args.push_back(rename_var(a, from, to));
                return call(node.fn, std::move(args));
            }
        },
        e->node);
}

Value eval_value(const ExprPtr& e, const Bindings& bindings) {
    return std::visit(
        [&](const auto& node) -> Value {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberExpr>) {
                return node.value;
            } else if constexpr (std::is_same_v<T, VarExpr>) {
                auto it = bindings.find(node.name);
                if (it == bindings.end())
                    throw EvalError("unbound name '" + node.name + "'");
                return it->second;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                double a = require_scalar(eval_value(node.lhs, bindings), op_text(node.op));
                double b = require_scalar(eval_value(node.rhs, bindings), op_text(node.op));
                return apply_binary(node.op, a, b);
            } else {
                switch (node.fn) {
                    case Builtin::Min:
                    case Builtin::Max: {
                        std::vector<double> all;
                        for (const auto& a : node.args)
                            append_numbers(eval_value(a, bindings), all);
                        if (all.empty())
                            throw EvalError(std::string(builtin_name(node.fn)) +
                                            " of an empty sequence");
                        return node.fn == Builtin::Min
                                   ? *std::min_element(all.begin(), all.end())
                                   : *std::max_element(all.begin(), all.end());
                    }
                    case Builtin::Clamp: {
                        double x = require_scalar(eval_value(node.args[0], bindings), "clamp");
                        double lo = require_scalar(eval_value(node.args[1], bindings), "clamp");
                        double hi = require_scalar(eval_value(node.args[2], bindings), "clamp");
                        return std::min(std::max(x, lo), hi);
                    }
                    case Builtin::Ramp: {
                        double x = require_scalar(eval_value(node.args[0], bindings), "ramp");
                        double lo = require_scalar(eval_value(node.args[1], bindings), "ramp");
                        double hi = require_scalar(eval_value(node.args[2], bindings), "ramp");
                        if (hi == lo) throw EvalError("division by zero in ramp");
                        double t = check_finite((x - lo) / (hi - lo));
                        return std::min(std::max(t, 0.0), 1.0);
                    }
                    case Builtin::Sum: {
                        std::vector<double> all;
                        append_numbers(eval_value(node.args[0], bindings), all);
                        double s = 0.0;
                        for (double v : all) s = check_finite(s + v);
                        return s;
                    }
                    case Builtin::Fract: {
                        double x = require_scalar(eval_value(node.args[0], bindings), "fract");
                        return x - std::trunc(x);
                    }
                }
                throw EvalError("unknown builtin");
            }
        },
        e->node);
}

double eval_expression(const ExprPtr& e, const Bindings& bindings) {
    Value v = eval_value(e, bindings);
    if (const double* d = std::get_if<double>(&v)) return *d;
    throw EvalError("expression yields a sequence, expected a scalar");
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find('e') != std::string::npos || s.find('E') != std::string::npos) {
        // Exponent notation is not part of the surface language; re-render in
        // fixed notation (still shortest round-tripping in that form).
        char wide[1100];
        auto fixed = std::to_chars(wide, wide + sizeof(wide), v, std::chars_format::fixed);
        s.assign(wide, fixed.ptr);
    }
    if (s == "-0") s = "0";
    return s;
}

const char* builtin_name(Builtin fn) {
    switch (fn) {
        case Builtin::Min: return "min";
        case Builtin::Max: return "max";
        case Builtin::Clamp: return "clamp";
        case Builtin::Ramp: return "ramp";
        case Builtin::Sum: return "sum";
        case Builtin::Fract: return "fract";
    }
    return "?";
}

std::pair<std::size_t, std::size_t> builtin_arity(Builtin fn) {
    switch (fn) {
        case Builtin::Min:
        case Builtin::Max: return {1, SIZE_MAX};
        case Builtin::Clamp:
        case Builtin::Ramp: return {3, 3};
        case Builtin::Sum:
        case Builtin::Fract: return {1, 1};
    }
    return {0, 0};
}

}  // namespace okb
