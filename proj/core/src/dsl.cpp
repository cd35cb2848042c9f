#include <okb/dsl.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace okb {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
    Ident, Number, String,
    LBrace, RBrace, LParen, RParen, LBracket, RBracket,
    Comma, Semicolon, Assign,
    Plus, Minus, Star, Slash,
    Lt, Le, Gt, Ge, EqEq, NeEq,
    End, Bad,  // Bad carries its complaint in `text`
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan at;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto push = [&](Tok k, std::string text, SourceSpan at) {
        out.push_back(Token{k, std::move(text), at});
    };
    auto step = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        SourceSpan at{line, col};
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') step(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            step(1);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.' && j + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            push(Tok::Number, src.substr(i, j - i), at);
            step(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                      src[j] == '_')) {
                ++j;
            }
            push(Tok::Ident, src.substr(i, j - i), at);
            step(j - i);
            continue;
        }
        if (c == '"') {
            std::string text;
            std::size_t j = i + 1;
            bool closed = false;
            while (j < src.size()) {
                if (src[j] == '"') {
                    closed = true;
                    break;
                }
                if (src[j] == '\\' && j + 1 < src.size() &&
                    (src[j + 1] == '"' || src[j + 1] == '\\')) {
                    text.push_back(src[j + 1]);
                    j += 2;
                    continue;
                }
                if (src[j] == '\n') break;
                text.push_back(src[j]);
                ++j;
            }
            if (!closed) {
                push(Tok::Bad, "unterminated string", at);
                step(j - i);
                continue;
            }
            push(Tok::String, std::move(text), at);
            step(j + 1 - i);
            continue;
        }
        auto two = [&](char second) { return i + 1 < src.size() && src[i + 1] == second; };
        switch (c) {
            case '{': push(Tok::LBrace, "{", at); step(1); continue;
            case '}': push(Tok::RBrace, "}", at); step(1); continue;
            case '(': push(Tok::LParen, "(", at); step(1); continue;
            case ')': push(Tok::RParen, ")", at); step(1); continue;
            case '[': push(Tok::LBracket, "[", at); step(1); continue;
            case ']': push(Tok::RBracket, "]", at); step(1); continue;
            case ',': push(Tok::Comma, ",", at); step(1); continue;
            case ';': push(Tok::Semicolon, ";", at); step(1); continue;
            case '+': push(Tok::Plus, "+", at); step(1); continue;
            case '-': push(Tok::Minus, "-", at); step(1); continue;
            case '*': push(Tok::Star, "*", at); step(1); continue;
            case '/': push(Tok::Slash, "/", at); step(1); continue;
            case '<':
                if (two('=')) { push(Tok::Le, "<=", at); step(2); }
                else { push(Tok::Lt, "<", at); step(1); }
                continue;
            case '>':
                if (two('=')) { push(Tok::Ge, ">=", at); step(2); }
                else { push(Tok::Gt, ">", at); step(1); }
                continue;
            case '=':
                if (two('=')) { push(Tok::EqEq, "==", at); step(2); }
                else { push(Tok::Assign, "=", at); step(1); }
                continue;
            case '!':
                if (two('=')) {
                    push(Tok::NeEq, "!=", at);
                    step(2);
                    continue;
                }
                break;
            default: break;
        }
        push(Tok::Bad, std::string("unexpected character '") + c + "'", at);
        step(1);
    }
    out.push_back(Token{Tok::End, "", SourceSpan{line, col}});
    return out;
}

double parse_number_text(const std::string& text) {
    double v = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), v);
    return v;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser (expressions + document)
// ---------------------------------------------------------------------------

const std::map<std::string, Builtin>& builtin_table() {
    static const std::map<std::string, Builtin> table = {
        {"min", Builtin::Min},     {"max", Builtin::Max},  {"clamp", Builtin::Clamp},
        {"ramp", Builtin::Ramp},   {"sum", Builtin::Sum},  {"fract", Builtin::Fract},
    };
    return table;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diagnostics,
           ParseOptions options)
        : toks_(std::move(tokens)), diags_(diagnostics), options_(options) {}

    KnowledgeBase parse_kb() {
        KnowledgeBase kb;
        while (!at(Tok::End)) {
            if (accept_ident("object")) {
                parse_objectdef(kb);
            } else if (accept_ident("class")) {
                parse_classdef(kb);
            } else if (accept_ident("set")) {
                parse_setdef(kb);
            } else {
                error(peek().at, "expected 'object', 'class', or 'set', got " + describe(peek()));
                sync_toplevel();
            }
        }
        return kb;
    }

    ExprPtr parse_expr_entry() {
        ExprPtr e = parse_expr();
        if (e && !at(Tok::End)) {
            error(peek().at, "unexpected trailing input after expression");
            return nullptr;
        }
        return e;
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic>& diags_;
    ParseOptions options_;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_ident(const char* text) const {
        return peek().kind == Tok::Ident && peek().text == text;
    }
    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }
    bool accept_ident(const char* text) {
        if (!at_ident(text)) return false;
        ++pos_;
        return true;
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Tok::End: return "end of input";
            case Tok::Bad: return t.text;
            case Tok::Ident: return "'" + t.text + "'";
            case Tok::Number: return "number '" + t.text + "'";
            case Tok::String: return "string \"" + t.text + "\"";
            default: return "'" + t.text + "'";
        }
    }

    void error(SourceSpan at, std::string message) {
        diags_.push_back(Diagnostic{Severity::Error, std::move(message), at});
    }

    bool expect(Tok k, const char* what) {
        if (accept(k)) return true;
        error(peek().at, std::string("expected ") + what + ", got " + describe(peek()));
        return false;
    }

    // Skip to the next plausible top-level definition.
    void sync_toplevel() {
        int depth = 0;
        while (!at(Tok::End)) {
            if (depth == 0 && (at_ident("object") || at_ident("class") || at_ident("set"))) {
                return;
            }
            if (at(Tok::LBrace)) ++depth;
            if (at(Tok::RBrace) && depth > 0) --depth;
            ++pos_;
        }
    }

    // Skip the rest of a malformed member definition.
    void sync_member() {
        while (!at(Tok::End) && !at(Tok::RBrace) && !at(Tok::Semicolon) &&
               !at_ident("quant") && !at_ident("qual") && !at_ident("method")) {
            ++pos_;
        }
        accept(Tok::Semicolon);
    }

    // ---- names ----

    // Definition names and references: identifiers, or (possibly negative)
    // numbers — the conformity examples name objects after the values they
    // hold.
    bool parse_name(std::string& out, const char* what) {
        if (at(Tok::Ident) || at(Tok::Number)) {
            out = advance().text;
            return true;
        }
        if (at(Tok::Minus) && peek(1).kind == Tok::Number) {
            advance();
            out = "-" + advance().text;
            return true;
        }
        error(peek().at, std::string("expected ") + what + ", got " + describe(peek()));
        return false;
    }

    // ---- expressions ----

    ExprPtr parse_expr() { return parse_comparison(); }

    ExprPtr parse_comparison() {
        ExprPtr lhs = parse_additive();
        while (lhs) {
            BinaryOp op;
            if (accept(Tok::Lt)) op = BinaryOp::Lt;
            else if (accept(Tok::Le)) op = BinaryOp::Le;
            else if (accept(Tok::Gt)) op = BinaryOp::Gt;
            else if (accept(Tok::Ge)) op = BinaryOp::Ge;
            else if (accept(Tok::EqEq)) op = BinaryOp::Eq;
            else if (accept(Tok::NeEq)) op = BinaryOp::Ne;
            else break;
            ExprPtr rhs = parse_additive();
            if (!rhs) return nullptr;
            lhs = binary(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    ExprPtr parse_additive() {
        ExprPtr lhs = parse_term();
        while (lhs && (at(Tok::Plus) || at(Tok::Minus))) {
            BinaryOp op = advance().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
            ExprPtr rhs = parse_term();
            if (!rhs) return nullptr;
            lhs = binary(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        while (lhs && (at(Tok::Star) || at(Tok::Slash))) {
            BinaryOp op = advance().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
            ExprPtr rhs = parse_unary();
            if (!rhs) return nullptr;
            lhs = binary(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (accept(Tok::Minus)) {
            ExprPtr inner = parse_unary();
            if (!inner) return nullptr;
            if (const auto* n = std::get_if<NumberExpr>(&inner->node)) {
                return number(-n->value);
            }
            return binary(BinaryOp::Sub, number(0), std::move(inner));
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        if (at(Tok::Number)) {
            return number(parse_number_text(advance().text));
        }
        if (at(Tok::LParen)) {
            advance();
            ExprPtr e = parse_expr();
            if (!e) return nullptr;
            if (!expect(Tok::RParen, "')'")) return nullptr;
            return e;
        }
        if (at(Tok::Ident)) {
            Token name = advance();
            if (!at(Tok::LParen)) return var(name.text);
            advance();
            std::vector<ExprPtr> args;
            if (!at(Tok::RParen)) {
                do {
                    ExprPtr a = parse_expr();
                    if (!a) return nullptr;
                    args.push_back(std::move(a));
                } while (accept(Tok::Comma));
            }
            if (!expect(Tok::RParen, "')'")) return nullptr;
            auto it = builtin_table().find(name.text);
            if (it == builtin_table().end()) {
                error(name.at, "unknown function '" + name.text + "'");
                return nullptr;
            }
            auto [lo, hi] = builtin_arity(it->second);
            if (args.size() < lo || args.size() > hi) {
                std::string want = hi == SIZE_MAX ? "at least " + std::to_string(lo)
                                                  : std::to_string(lo);
                error(name.at, "'" + name.text + "' expects " + want + " argument(s), got " +
                                   std::to_string(args.size()));
                return nullptr;
            }
            return call(it->second, std::move(args));
        }
        error(peek().at, "expected an expression, got " + describe(peek()));
        return nullptr;
    }

    // ---- member definitions ----

    bool parse_value(std::optional<Value>& out) {
        auto signed_number = [&](double& v) {
            bool neg = accept(Tok::Minus);
            if (!at(Tok::Number)) {
                error(peek().at, "expected a number, got " + describe(peek()));
                return false;
            }
            v = parse_number_text(advance().text);
            if (neg) v = -v;
            return true;
        };
        if (accept(Tok::LBracket)) {
            std::vector<double> seq;
            do {
                double v;
                if (!signed_number(v)) return false;
                seq.push_back(v);
            } while (accept(Tok::Comma));
            if (!expect(Tok::RBracket, "']'")) return false;
            out = Value{std::move(seq)};
            return true;
        }
        double v;
        if (!signed_number(v)) return false;
        out = Value{v};
        return true;
    }

    // quant NAME "units" [= value] — the value is mandatory inside objects and
    // forbidden inside classes (class members are abstract).
    bool parse_quant(std::vector<Property>& props, std::set<std::string>& names,
                     bool in_class) {
        Token name = peek();
        if (!expect(Tok::Ident, "a property name")) return false;
        if (!at(Tok::String)) {
            error(peek().at, "expected a units string, got " + describe(peek()));
            return false;
        }
        Token units = advance();
        if (units.text.empty()) {
            error(units.at, "units must be non-empty");
            return false;
        }
        std::optional<Value> value;
        if (in_class) {
            if (at(Tok::Assign)) {
                error(peek().at, "class property '" + name.text + "' carries no value");
                return false;
            }
        } else {
            if (!expect(Tok::Assign, "'='")) return false;
            if (!parse_value(value)) return false;
        }
        if (!names.insert(name.text).second) {
            error(name.at, "duplicate property name '" + name.text + "'");
            return false;
        }
        props.push_back(QuantitativeProperty{name.text, units.text, std::move(value)});
        return true;
    }

    bool parse_qual(std::vector<Property>& props, std::set<std::string>& names) {
        Token name = peek();
        if (!expect(Tok::Ident, "a property name")) return false;
        if (!expect(Tok::Assign, "'='")) return false;
        ExprPtr e = parse_expr();
        if (!e) return false;
        std::vector<std::string> free = free_vars(e);
        if (free.size() > 1) {
            error(name.at, "verification function '" + name.text +
                               "' must use a single argument, found " +
                               std::to_string(free.size()));
            return false;
        }
        if (!names.insert(name.text).second) {
            error(name.at, "duplicate property name '" + name.text + "'");
            return false;
        }
        props.push_back(QualitativeProperty{name.text, make_verification(std::move(e))});
        return true;
    }

    bool parse_method(std::vector<MethodDescriptor>& methods) {
        Token name = peek();
        if (!expect(Tok::Ident, "a method name")) return false;
        if (!expect(Tok::LParen, "'('")) return false;
        std::vector<std::string> params;
        if (!at(Tok::RParen)) {
            do {
                Token p = peek();
                if (!expect(Tok::Ident, "a parameter name")) return false;
                if (std::find(params.begin(), params.end(), p.text) != params.end()) {
                    error(p.at, "duplicate parameter '" + p.text + "'");
                    return false;
                }
                params.push_back(p.text);
            } while (accept(Tok::Comma));
        }
        if (!expect(Tok::RParen, "')'")) return false;
        ExprPtr body;
        if (accept(Tok::Assign)) {
            body = parse_expr();
            if (!body) return false;
            for (const std::string& v : free_vars(body)) {
                if (std::find(params.begin(), params.end(), v) == params.end()) {
                    error(name.at, "method '" + name.text + "' uses unknown name '" + v + "'");
                    return false;
                }
            }
        }
        methods.push_back(MethodDescriptor{name.text, std::move(params), std::move(body)});
        return true;
    }

    // Shared body of objectdef and classdef: "{" members "}".
    bool parse_members(std::vector<Property>& props, std::vector<MethodDescriptor>& methods,
                       bool in_class) {
        if (!expect(Tok::LBrace, "'{'")) return false;
        std::set<std::string> names;
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            if (accept(Tok::Semicolon)) continue;
            if (accept_ident("quant")) {
                if (!parse_quant(props, names, in_class)) sync_member();
            } else if (accept_ident("qual")) {
                if (!parse_qual(props, names)) sync_member();
            } else if (accept_ident("method")) {
                if (!parse_method(methods)) sync_member();
            } else {
                error(peek().at,
                      "expected 'quant', 'qual', or 'method', got " + describe(peek()));
                sync_member();
            }
        }
        return expect(Tok::RBrace, "'}'");
    }

    bool claim_name(const std::string& name, SourceSpan at, KnowledgeBase& kb) {
        if (kb.spans.count(name)) {
            error(at, "duplicate definition of '" + name + "'");
            return false;
        }
        kb.spans[name] = at;
        return true;
    }

    void parse_objectdef(KnowledgeBase& kb) {
        SourceSpan at = peek().at;
        std::string name;
        if (!parse_name(name, "an object name")) {
            sync_toplevel();
            return;
        }
        ObjectInstance obj;
        obj.id = name;
        if (!parse_members(obj.specification, obj.signature, /*in_class=*/false)) {
            sync_toplevel();
            return;
        }
        if (claim_name(name, at, kb)) kb.objects.emplace(name, std::move(obj));
    }

    void parse_classdef(KnowledgeBase& kb) {
        SourceSpan at = peek().at;
        std::string name;
        if (!parse_name(name, "a class name")) {
            sync_toplevel();
            return;
        }
        HomogeneousClass k;
        if (!parse_members(k.specification, k.signature, /*in_class=*/true)) {
            sync_toplevel();
            return;
        }
        if (claim_name(name, at, kb)) kb.classes.emplace(name, ObjectClass{std::move(k)});
    }

    void parse_setdef(KnowledgeBase& kb) {
        SourceSpan at = peek().at;
        std::string name;
        if (!parse_name(name, "a set name")) {
            sync_toplevel();
            return;
        }
        if (!expect(Tok::Assign, "'='") || !expect_ident("union") ||
            !expect(Tok::LParen, "'('")) {
            sync_toplevel();
            return;
        }
        std::vector<UnionOperand> operands;
        bool ok = true;
        do {
            std::string ref;
            SourceSpan rat = peek().at;
            if (!parse_name(ref, "an object or set name")) {
                ok = false;
                break;
            }
            if (auto it = kb.objects.find(ref); it != kb.objects.end()) {
                operands.push_back(it->second);
            } else if (auto is = kb.sets.find(ref); is != kb.sets.end()) {
                operands.push_back(is->second);
            } else {
                error(rat, "unknown reference '" + ref + "' in set '" + name + "'");
                ok = false;
            }
        } while (accept(Tok::Comma));
        if (!expect(Tok::RParen, "')'")) ok = false;
        CollectionMode mode = CollectionMode::Set;
        if (ok && accept_ident("mode")) {
            if (accept_ident("set")) {
                mode = CollectionMode::Set;
            } else if (accept_ident("multiset")) {
                mode = CollectionMode::Multiset;
            } else {
                error(peek().at, "expected 'set' or 'multiset', got " + describe(peek()));
                ok = false;
            }
        }
        accept(Tok::Semicolon);
        if (!ok) {
            sync_toplevel();
            return;
        }
        if (!claim_name(name, at, kb)) return;
        try {
            kb.sets.emplace(name, union_objects(operands, mode, options_.strict));
        } catch (const AlgebraError& e) {
            error(at, "set '" + name + "': " + e.what());
        }
    }

    bool expect_ident(const char* text) {
        if (accept_ident(text)) return true;
        error(peek().at, std::string("expected '") + text + "', got " + describe(peek()));
        return false;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// JSON interchange ingestion
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

// Thrown internally while walking a malformed interchange document; converted
// into a single diagnostic by parse_json_document.
struct IngestError {
    std::string message;
};

[[noreturn]] void bad(const std::string& message) { throw IngestError{message}; }

const json& field(const json& j, const char* key, const char* context) {
    auto it = j.find(key);
    if (it == j.end()) bad(std::string(context) + ": missing field '" + key + "'");
    return *it;
}

std::string str_field(const json& j, const char* key, const char* context) {
    const json& f = field(j, key, context);
    if (!f.is_string()) bad(std::string(context) + ": field '" + key + "' must be a string");
    return f.get<std::string>();
}

ExprPtr expr_field(const json& j, const char* key, const char* context) {
    std::string text = str_field(j, key, context);
    ExpressionResult r = parse_expression(text);
    if (!r.expr) {
        bad(std::string(context) + ": bad expression '" + text + "': " +
            (r.diagnostics.empty() ? "parse error" : r.diagnostics.front().message));
    }
    return r.expr;
}

Value value_from_json(const json& j, const char* context) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array()) {
        std::vector<double> seq;
        for (const json& e : j) {
            if (!e.is_number()) bad(std::string(context) + ": sequence entries must be numbers");
            seq.push_back(e.get<double>());
        }
        if (seq.empty()) bad(std::string(context) + ": sequence value must be non-empty");
        return seq;
    }
    bad(std::string(context) + ": value must be a number or an array of numbers");
}

Property property_from_json(const json& j) {
    std::string kind = str_field(j, "kind", "property");
    std::string name = str_field(j, "name", "property");
    if (kind == "quant") {
        std::string units = str_field(j, "units", "property");
        if (units.empty()) bad("property '" + name + "': units must be non-empty");
        std::optional<Value> value;
        if (j.contains("value")) value = value_from_json(j["value"], "property");
        return QuantitativeProperty{std::move(name), std::move(units), std::move(value)};
    }
    if (kind == "qual") {
        ExprPtr vf = expr_field(j, "vf", "property");
        if (free_vars(vf).size() > 1) {
            bad("property '" + name + "': verification function must use a single argument");
        }
        return QualitativeProperty{std::move(name), make_verification(std::move(vf))};
    }
    bad("property '" + name + "': unknown kind '" + kind + "'");
}

MethodDescriptor method_from_json(const json& j) {
    MethodDescriptor m;
    m.name = str_field(j, "name", "method");
    const json& params = field(j, "params", "method");
    if (!params.is_array()) bad("method '" + m.name + "': params must be an array");
    for (const json& p : params) {
        if (!p.is_string()) bad("method '" + m.name + "': parameter names must be strings");
        m.params.push_back(p.get<std::string>());
    }
    if (j.contains("body") && !j["body"].is_null()) {
        m.body = expr_field(j, "body", "method");
    }
    return m;
}

template <typename T, typename F>
std::vector<T> list_from_json(const json& j, const char* key, const char* context, F item) {
    const json& arr = field(j, key, context);
    if (!arr.is_array()) bad(std::string(context) + ": '" + key + "' must be an array");
    std::vector<T> out;
    for (const json& e : arr) out.push_back(item(e));
    return out;
}

ObjectInstance object_from_json(const json& j) {
    ObjectInstance o;
    o.id = str_field(j, "id", "object");
    o.specification =
        list_from_json<Property>(j, "properties", "object", property_from_json);
    o.signature =
        list_from_json<MethodDescriptor>(j, "methods", "object", method_from_json);
    std::set<std::string> names;
    for (const Property& p : o.specification) {
        if (!names.insert(property_name(p)).second) {
            bad("object '" + o.id + "': duplicate property name '" + property_name(p) + "'");
        }
    }
    return o;
}

ObjectClass class_from_json(const json& j) {
    std::string kind = str_field(j, "kind", "class");
    const json& core = field(j, "core", "class");
    auto props = list_from_json<Property>(core, "properties", "class core", property_from_json);
    auto methods =
        list_from_json<MethodDescriptor>(core, "methods", "class core", method_from_json);
    if (kind == "homogeneous") {
        return HomogeneousClass{std::move(props), std::move(methods)};
    }
    if (kind != "inhomogeneous") bad("class: unknown kind '" + kind + "'");
    InhomogeneousClass k;
    k.core = ClassCore{std::move(props), std::move(methods)};
    k.projections = list_from_json<Projection>(j, "projections", "class", [](const json& p) {
        Projection pr;
        pr.owner = str_field(p, "owner", "projection");
        pr.properties =
            list_from_json<Property>(p, "properties", "projection", property_from_json);
        pr.methods =
            list_from_json<MethodDescriptor>(p, "methods", "projection", method_from_json);
        return pr;
    });
    return ObjectClass{std::move(k)};
}

ObjectCollection collection_from_json(const json& j) {
    ObjectCollection c;
    std::string mode = str_field(j, "mode", "set");
    if (mode == "set") c.mode = CollectionMode::Set;
    else if (mode == "multiset") c.mode = CollectionMode::Multiset;
    else bad("set: unknown mode '" + mode + "'");
    c.members = list_from_json<ObjectInstance>(j, "members", "set", object_from_json);
    c.klass = class_from_json(field(j, "class", "set"));
    const json& mult = field(j, "multiplicity", "set");
    if (!mult.is_object()) bad("set: 'multiplicity' must be an object");
    std::size_t total = 0;
    for (auto it = mult.begin(); it != mult.end(); ++it) {
        if (!it.value().is_number_unsigned()) bad("set: multiplicities must be counts");
        std::size_t n = it.value().get<std::size_t>();
        if (n == 0) bad("set: multiplicity of '" + it.key() + "' must be at least 1");
        c.multiplicity[it.key()] = n;
        total += n;
    }
    if (total != c.members.size()) {
        bad("set: multiplicities sum to " + std::to_string(total) + " but there are " +
            std::to_string(c.members.size()) + " members");
    }
    return c;
}

ParseResult parse_json_document(const std::string& text) {
    ParseResult result;
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        result.diagnostics.push_back(
            Diagnostic{Severity::Error, "invalid JSON document", SourceSpan{1, 1}});
        return result;
    }
    try {
        if (!doc.is_object()) bad("document: expected a JSON object");
        const json& format = field(doc, "format", "document");
        if (!format.is_number_integer() || format.get<int>() != 1) {
            bad("document: unsupported format version");
        }
        auto ingest = [&](const char* key, auto from_json, auto& target) {
            if (!doc.contains(key)) return;
            const json& map = doc[key];
            if (!map.is_object()) bad(std::string("document: '") + key + "' must be an object");
            for (auto it = map.begin(); it != map.end(); ++it) {
                if (result.kb.spans.count(it.key())) {
                    bad("duplicate definition of '" + it.key() + "'");
                }
                result.kb.spans[it.key()] = SourceSpan{0, 0};
                target.emplace(it.key(), from_json(it.value()));
            }
        };
        ingest("objects", object_from_json, result.kb.objects);
        ingest("classes", class_from_json, result.kb.classes);
        ingest("sets", collection_from_json, result.kb.sets);
    } catch (const IngestError& e) {
        result.kb = KnowledgeBase{};
        result.diagnostics.push_back(
            Diagnostic{Severity::Error, e.message, SourceSpan{0, 0}});
    }
    return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

std::string format_diagnostic(const Diagnostic& d) {
    const char* sev = d.severity == Severity::Error ? "error" : "warning";
    if (d.location.line == 0) return std::string(sev) + ": " + d.message;
    return std::to_string(d.location.line) + ":" + std::to_string(d.location.column) + ": " +
           sev + ": " + d.message;
}

bool ParseResult::ok() const {
    return std::none_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
        return d.severity == Severity::Error;
    });
}

ParseResult parse_document(const std::string& text, const ParseOptions& options) {
    // A leading '{' marks the JSON interchange form; the declarative syntax
    // cannot begin with one.
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_json_document(text);
        break;
    }
    ParseResult result;
    Parser parser(lex(text), result.diagnostics, options);
    result.kb = parser.parse_kb();
    if (!result.ok()) result.kb = KnowledgeBase{};  // no partial results
    return result;
}

ExpressionResult parse_expression(const std::string& text) {
    ExpressionResult result;
    Parser parser(lex(text), result.diagnostics, ParseOptions{});
    result.expr = parser.parse_expr_entry();
    if (result.expr) {
        for (const Diagnostic& d : result.diagnostics) {
            if (d.severity == Severity::Error) {
                result.expr = nullptr;
                break;
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Algebra commands
// ---------------------------------------------------------------------------

namespace {

const ObjectInstance& lookup_object(const KnowledgeBase& kb, const std::string& name) {
    auto it = kb.objects.find(name);
    if (it == kb.objects.end()) throw CommandError("unknown object " + name);
    return it->second;
}

}  // namespace

AlgebraOutcome run_algebra(const KnowledgeBase& kb, const std::string& command, bool strict) {
    std::vector<Token> toks = lex(command);
    std::size_t pos = 0;
    auto peek = [&]() -> const Token& { return toks[std::min(pos, toks.size() - 1)]; };
    auto advance = [&]() -> const Token& { return toks[std::min(pos++, toks.size() - 1)]; };
    auto expect = [&](Tok k, const char* what) {
        if (peek().kind != k) {
            throw CommandError("malformed command: expected " + std::string(what));
        }
        return advance();
    };
    auto parse_name = [&]() -> std::string {
        if (peek().kind == Tok::Ident || peek().kind == Tok::Number) return advance().text;
        if (peek().kind == Tok::Minus) {
            advance();
            if (peek().kind != Tok::Number) {
                throw CommandError("malformed command: expected a name");
            }
            return "-" + advance().text;
        }
        throw CommandError("malformed command: expected a name");
    };

    if (peek().kind != Tok::Ident) throw CommandError("malformed command: expected an operation");
    std::string op = advance().text;
    expect(Tok::LParen, "'('");
    std::vector<std::string> args;
    if (peek().kind != Tok::RParen) {
        do {
            args.push_back(parse_name());
        } while (peek().kind == Tok::Comma && (advance(), true));
    }
    expect(Tok::RParen, "')'");

    AlgebraOutcome out;
    out.operation = op;

    if (op == "union") {
        CollectionMode mode = CollectionMode::Set;
        if (peek().kind == Tok::Ident && peek().text == "mode") {
            advance();
            if (peek().kind != Tok::Ident) {
                throw CommandError("malformed command: expected 'set' or 'multiset'");
            }
            std::string m = advance().text;
            if (m == "set") mode = CollectionMode::Set;
            else if (m == "multiset") mode = CollectionMode::Multiset;
            else throw CommandError("malformed command: unknown mode '" + m + "'");
        }
        if (peek().kind != Tok::End) throw CommandError("malformed command: trailing input");
        std::vector<UnionOperand> operands;
        for (const std::string& name : args) {
            if (auto it = kb.objects.find(name); it != kb.objects.end()) {
                operands.push_back(it->second);
            } else if (auto is = kb.sets.find(name); is != kb.sets.end()) {
                operands.push_back(is->second);
            } else {
                throw CommandError("unknown object " + name);
            }
        }
        out.collection = union_objects(operands, mode, strict);
        return out;
    }
    if (peek().kind != Tok::End) throw CommandError("malformed command: trailing input");

    if (op == "intersect" || op == "diff" || op == "symdiff") {
        if (args.size() != 2) {
            throw CommandError("malformed command: '" + op + "' takes exactly two objects");
        }
        const ObjectInstance& a = lookup_object(kb, args[0]);
        const ObjectInstance& b = lookup_object(kb, args[1]);
        std::optional<ObjectClass> r;
        if (op == "intersect") r = intersection(a, b);
        else if (op == "diff") r = difference(a, b);
        else r = symmetric_difference(a, b);
        if (r) out.klass = std::move(r);
        else out.does_not_exist = true;
        return out;
    }
    if (op == "clone") {
        if (args.size() != 2) {
            throw CommandError("malformed command: 'clone' takes an object and an index");
        }
        const ObjectInstance& a = lookup_object(kb, args[0]);
        const std::string& idx = args[1];
        if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos) {
            throw CommandError("malformed command: clone index must be a natural number");
        }
        out.object = clone(a, static_cast<std::size_t>(std::stoull(idx)));
        return out;
    }
    throw CommandError("unknown operation '" + op + "'");
}

}  // namespace okb
