// okb — knowledge-base front end: parse-check documents, run algebra
// commands, classify objects against classes, export canonical documents.
//
// Exit codes: 0 success (including "does not exist" algebra results),
// 1 document diagnostics, 2 unknown names or malformed commands, 3 I/O.

#include <okb/demo.hpp>
#include <okb/dsl.hpp>
#include <okb/serialize.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitBadRequest = 2;
constexpr int kExitIo = 3;

bool use_color() {
    static const bool enabled = isatty(fileno(stderr)) && !std::getenv("OKB_NO_COLOR");
    return enabled;
}

void print_error(const std::string& message) {
    if (use_color()) {
        std::cerr << "\x1b[31m" << message << "\x1b[0m\n";
    } else {
        std::cerr << message << "\n";
    }
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return false;
    out = buf.str();
    return true;
}

// Loads and parses a document; on failure prints diagnostics (exit 1) or the
// I/O complaint (exit 3) and reports the code through `exit_code`.
bool load_kb(const std::string& path, bool strict, okb::KnowledgeBase& kb, int& exit_code) {
    std::string text;
    if (!read_file(path, text)) {
        print_error("cannot read '" + path + "'");
        exit_code = kExitIo;
        return false;
    }
    okb::ParseResult result = okb::parse_document(text, okb::ParseOptions{strict});
    for (const okb::Diagnostic& d : result.diagnostics) {
        print_error(path + ":" + okb::format_diagnostic(d));
    }
    if (!result.ok()) {
        exit_code = kExitDiagnostics;
        return false;
    }
    kb = std::move(result.kb);
    return true;
}

// Degrees print with at most two decimals, trailing zeros trimmed: 1, 0.5,
// 0.33.
std::string format_degree(double d) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", d);
    std::string s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

int run_check(const std::string& file, bool strict) {
    okb::KnowledgeBase kb;
    int code = kExitOk;
    if (!load_kb(file, strict, kb, code)) return code;
    std::cout << "OK\n";
    return kExitOk;
}

int run_eval(const std::string& file, const std::string& command, bool strict) {
    okb::KnowledgeBase kb;
    int code = kExitOk;
    if (!load_kb(file, strict, kb, code)) return code;
    okb::AlgebraOutcome outcome;
    try {
        outcome = okb::run_algebra(kb, command, strict);
    } catch (const std::runtime_error& e) {  // CommandError, AlgebraError, EvalError
        print_error(e.what());
        return kExitBadRequest;
    }
    if (outcome.does_not_exist) {
        std::cout << "does not exist\n";
    } else if (outcome.collection) {
        std::cout << okb::serialize(*outcome.collection) << "\n";
    } else if (outcome.klass) {
        std::cout << okb::serialize(*outcome.klass) << "\n";
    } else if (outcome.object) {
        std::cout << okb::serialize(*outcome.object) << "\n";
    }
    return kExitOk;
}

int run_classify(const std::string& file, const std::string& class_name,
                 const std::string& objects_csv, bool matrix, bool strict) {
    okb::KnowledgeBase kb;
    int code = kExitOk;
    if (!load_kb(file, strict, kb, code)) return code;

    auto ik = kb.classes.find(class_name);
    if (ik == kb.classes.end()) {
        print_error("unknown class " + class_name);
        return kExitBadRequest;
    }
    const okb::ObjectClass& klass = ik->second;

    std::vector<const okb::ObjectInstance*> objects;
    std::stringstream names(objects_csv);
    std::string name;
    while (std::getline(names, name, ',')) {
        auto io = kb.objects.find(name);
        if (io == kb.objects.end()) {
            print_error("unknown object " + name);
            return kExitBadRequest;
        }
        objects.push_back(&io->second);
    }
    if (objects.empty()) {
        print_error("no objects given");
        return kExitBadRequest;
    }

    std::vector<std::vector<double>> degrees;  // per object
    try {
        for (const okb::ObjectInstance* o : objects) {
            degrees.push_back(okb::classify(*o, klass));
        }
    } catch (const okb::EvalError& e) {
        print_error(e.what());
        return kExitBadRequest;
    }

    const std::vector<okb::Property>& props = okb::class_properties(klass);
    if (!matrix) {
        for (std::size_t i = 0; i < objects.size(); ++i) {
            std::cout << objects[i]->id << ":";
            for (double d : degrees[i]) std::cout << " " << format_degree(d);
            std::cout << "\n";
        }
        return kExitOk;
    }

    // Conformity matrix: one row per class property, one column per object.
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{"property"};
    for (const okb::ObjectInstance* o : objects) header.push_back(o->id);
    cells.push_back(std::move(header));
    for (std::size_t p = 0; p < props.size(); ++p) {
        std::vector<std::string> row{okb::property_name(props[p])};
        for (std::size_t i = 0; i < objects.size(); ++i) {
            row.push_back(format_degree(degrees[i][p]));
        }
        cells.push_back(std::move(row));
    }
    std::vector<std::size_t> widths(cells[0].size(), 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    for (const auto& row : cells) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) {
                line.append(widths[c] - row[c].size() + 2, ' ');
            }
        }
        std::cout << line << "\n";
    }
    return kExitOk;
}

int run_export(const std::string& file, const std::string& out_path, bool strict) {
    okb::KnowledgeBase kb;
    int code = kExitOk;
    if (!load_kb(file, strict, kb, code)) return code;
    std::string doc = okb::serialize(kb) + "\n";
    if (out_path.empty()) {
        std::cout << doc;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << doc) || (out.close(), out.fail())) {
        print_error("cannot write '" + out_path + "'");
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"object/class algebra knowledge bases: check, evaluate, classify, export"};
    app.require_subcommand(1);
    bool strict = false;
    app.add_flag("--strict", strict,
                 "refuse duplicate members in set-mode unions instead of merging them");

    std::string check_file;
    CLI::App* check = app.add_subcommand("check", "parse a document and report diagnostics");
    check->add_option("file", check_file, "knowledge-base document")->required();

    std::string eval_file, eval_command;
    CLI::App* eval = app.add_subcommand(
        "eval", "run an algebra command: union(A,B) mode set|multiset, intersect(A,B), "
                "diff(A,B), symdiff(A,B), clone(A,2)");
    eval->add_option("file", eval_file, "knowledge-base document")->required();
    eval->add_option("command", eval_command, "algebra command")->required();

    std::string cls_file, cls_name, cls_objects;
    bool cls_matrix = false;
    CLI::App* cls = app.add_subcommand("classify", "conformity of objects to a class");
    cls->add_option("file", cls_file, "knowledge-base document")->required();
    cls->add_option("--class", cls_name, "class name")->required();
    cls->add_option("--objects", cls_objects, "comma-separated object names")->required();
    cls->add_flag("--matrix", cls_matrix, "print a property-by-object conformity matrix");

    std::string exp_file, exp_out;
    CLI::App* exp = app.add_subcommand("export", "write the canonical interchange document");
    exp->add_option("file", exp_file, "knowledge-base document")->required();
    exp->add_option("--out", exp_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? kExitOk : kExitBadRequest;
    }

    if (app.got_subcommand(check)) return run_check(check_file, strict);
    if (app.got_subcommand(eval)) return run_eval(eval_file, eval_command, strict);
    if (app.got_subcommand(cls)) {
        return run_classify(cls_file, cls_name, cls_objects, cls_matrix, strict);
    }
    return run_export(exp_file, exp_out, strict);
}
