#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace okb {

/// Raised when an expression cannot be evaluated (division by zero, unbound
/// name, sequence in scalar position). Evaluation failures are surfaced,
/// never coerced to a degree of 0.
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

enum class BinaryOp { Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne };

/// Built-in functions of the expression language. min/max/sum fold over
/// sequence arguments as well as scalars; comparisons yield 0 or 1.
enum class Builtin { Min, Max, Clamp, Ramp, Sum, Fract };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberExpr {
    double value;
};

struct VarExpr {
    std::string name;
};

struct BinaryExpr {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct CallExpr {
    Builtin fn;
    std::vector<ExprPtr> args;
};

/// Immutable expression tree node. Nodes are shared freely; nothing mutates
/// them after construction.
struct Expr {
    std::variant<NumberExpr, VarExpr, BinaryExpr, CallExpr> node;
};

ExprPtr number(double value);
ExprPtr var(std::string name);
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr call(Builtin fn, std::vector<ExprPtr> args);

/// A scalar or a finite sequence of scalars. Sequences appear as property
/// values and method operands (e.g. sum(sides)).
using Value = std::variant<double, std::vector<double>>;
using Bindings = std::map<std::string, Value>;

/// Three-way structural comparison under a fixed total order on trees.
/// Used both for commutative-operand sorting and as the definition of
/// expression identity (compare == 0).
int compare(const ExprPtr& a, const ExprPtr& b);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Normal form: constants folded, commutative operands (+, *, ==, !=, min,
/// max) sorted under the total order, > and >= mirrored into < and <=.
/// Idempotent: canonical(canonical(e)) == canonical(e).
ExprPtr canonical(const ExprPtr& e);

/// Canonical text rendering with minimal parentheses and fixed spacing.
/// Distinct trees render to distinct strings.
std::string to_string(const ExprPtr& e);

/// Names that occur free in the expression, sorted and deduplicated.
std::vector<std::string> free_vars(const ExprPtr& e);

/// Returns a tree with every occurrence of `from` renamed to `to`.
ExprPtr rename_var(const ExprPtr& e, const std::string& from, const std::string& to);

/// Evaluates the expression against the given bindings. The result may be a
/// sequence only when the expression is a bare sequence-valued name.
Value eval_value(const ExprPtr& e, const Bindings& bindings);

/// Evaluates to a scalar; a sequence result is an EvalError.
double eval_expression(const ExprPtr& e, const Bindings& bindings);

/// Shortest round-tripping decimal rendering, never in exponent form.
std::string format_number(double v);

const char* builtin_name(Builtin fn);

/// Number of arguments the builtin accepts: {min, max} when variadic.
std::pair<std::size_t, std::size_t> builtin_arity(Builtin fn);

}  // namespace okb
