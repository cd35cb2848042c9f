#pragma once

#include <okb/algebra.hpp>

#include <map>
#include <string>
#include <vector>

namespace okb {

struct SourceSpan {
    std::size_t line = 0;    // 1-based
    std::size_t column = 0;  // 1-based
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan location;
};

// "line:col: error: message" — the shape the CLI prints to stderr.
std::string format_diagnostic(const Diagnostic& d);

// A parsed document: three disjoint namespaces plus the source position of
// every definition (kept for diagnostics that outlive the parse).
struct KnowledgeBase {
    std::map<std::string, ObjectInstance> objects;
    std::map<std::string, ObjectClass> classes;
    std::map<std::string, ObjectCollection> sets;
    std::map<std::string, SourceSpan> spans;
};

struct ParseOptions {
    // Refuse duplicate members when building set-mode unions instead of
    // merging them.
    bool strict = false;
};

// Parsing never yields partial results: on any error the knowledge base is
// empty and at least one diagnostic has Severity::Error.
struct ParseResult {
    KnowledgeBase kb;
    std::vector<Diagnostic> diagnostics;
    bool ok() const;
};

// Parses a knowledge-base document.  Accepts both the declarative surface
// syntax and the JSON interchange form (detected by a leading '{'), so a
// serialized document parses back without ceremony.
ParseResult parse_document(const std::string& text, const ParseOptions& options = {});

// Parses a bare expression (the `expr` production).
struct ExpressionResult {
    ExprPtr expr;  // null when diagnostics carry an error
    std::vector<Diagnostic> diagnostics;
};
ExpressionResult parse_expression(const std::string& text);

// ---------------------------------------------------------------------------
// Algebra commands — the expression language of the CLI `eval` subcommand:
//   union(A, B, C) mode set|multiset
//   intersect(A, B)    diff(A, B)    symdiff(A, B)    clone(A, 2)
// ---------------------------------------------------------------------------

// Unknown names and malformed commands.
class CommandError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct AlgebraOutcome {
    std::string operation;                       // "union", "intersect", ...
    std::optional<ObjectInstance> object;        // clone result
    std::optional<ObjectCollection> collection;  // union result
    std::optional<ObjectClass> klass;            // intersect/diff/symdiff result
    // "does not exist" — a legitimate outcome of the three binary operations,
    // distinct from every error.
    bool does_not_exist = false;
};

// Runs one algebra command against a knowledge base.  Union operands may name
// objects or sets; the binary operations and clone take objects only.  Throws
// CommandError for unknown names or malformed commands and AlgebraError when
// an operation's own contract is violated.
AlgebraOutcome run_algebra(const KnowledgeBase& kb, const std::string& command,
                           bool strict = false);

}  // namespace okb
