#include "aslk/parser.hpp"

#include <cctype>
#include <filesystem>
#include <set>

#include <yaml-cpp/yaml.h>

namespace aslk {

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

void skip_spaces(std::string_view s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

std::string take_identifier(std::string_view s, size_t& i) {
    if (i >= s.size() || !ident_start(s[i])) return {};
    size_t b = i;
    while (i < s.size() && ident_char(s[i])) ++i;
    return std::string(s.substr(b, i - b));
}

/// True when position i can start a separator: the previous character does
/// not bind it into ==, <=, >=, != or the tail of =>.
bool separator_boundary(std::string_view s, size_t i) {
    if (i == 0) return true;
    char prev = s[i - 1];
    return prev != '<' && prev != '>' && prev != '!' && prev != '=';
}

enum class Separator { None, Eq, Arrow };

/// Finds the first top-level rule separator in a balanced string.
struct SeparatorHit {
    Separator kind = Separator::None;
    size_t pos = 0;
};

SeparatorHit find_separator(std::string_view s, const std::vector<int>& depth) {
    for (size_t i = 0; i + 1 < s.size(); ++i) {
        if (depth[i] == 0 && s[i] == '=' && s[i + 1] == '>' && separator_boundary(s, i)) {
            return {Separator::Arrow, i};
        }
    }
    for (size_t i = 0; i < s.size(); ++i) {
        if (depth[i] != 0 || s[i] != '=' || !separator_boundary(s, i)) continue;
        if (i + 1 < s.size() && (s[i + 1] == '=' || s[i + 1] == '>')) continue;
        return {Separator::Eq, i};
    }
    return {};
}

bool has_top_level_separator(const std::string& s) {
    BalanceScan scan = scan_balanced(s);
    if (!scan.ok()) return false;
    return find_separator(s, scan.depth).kind != Separator::None;
}

}  // namespace

BalanceScan scan_balanced(std::string_view s) {
    BalanceScan result;
    result.depth.assign(s.size(), 0);
    std::vector<std::pair<char, size_t>> open;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{') {
            result.depth[i] = static_cast<int>(open.size());
            open.emplace_back(c, i);
        } else if (c == ')' || c == '}') {
            char want = c == ')' ? '(' : '{';
            if (open.empty() || open.back().first != want) {
                result.error = Diagnostic::error(
                    "UNBALANCED_DELIMITER",
                    std::string("unmatched '") + c + "' at index " + std::to_string(i));
                return result;
            }
            open.pop_back();
            result.depth[i] = static_cast<int>(open.size());
        } else {
            result.depth[i] = static_cast<int>(open.size());
        }
    }
    if (!open.empty()) {
        result.error = Diagnostic::error(
            "UNBALANCED_DELIMITER", std::string("unclosed '") + open.back().first +
                                        "' at index " + std::to_string(open.back().second));
    }
    return result;
}

Parsed<ConstructorExpr> parse_constructor(const std::string& s) {
    Parsed<ConstructorExpr> result;
    auto fail = [&](const std::string& msg) {
        result.add(Diagnostic::error("CONSTRUCTOR_SYNTAX", msg));
    };

    const std::string text = trim(s);
    if (text.empty()) {
        fail("empty constructor expression");
        return result;
    }

    ConstructorExpr ctor;
    ctor.raw = text;

    size_t i = 0;
    ctor.parent = take_identifier(text, i);
    if (ctor.parent.empty()) {
        fail("constructor must start with a parent type name");
        return result;
    }
    skip_spaces(text, i);
    if (i == text.size()) {
        result.value = std::move(ctor);
        return result;
    }

    if (text[i] != '<') {
        fail(std::string("unexpected '") + text[i] + "' after parent name");
        return result;
    }
    ++i;
    skip_spaces(text, i);

    ctor.pattern_head = take_identifier(text, i);
    if (ctor.pattern_head.empty()) {
        fail("expected a pattern head identifier after '<'");
        return result;
    }
    skip_spaces(text, i);
    if (i >= text.size() || text[i] != '(') {
        fail("expected '(' after pattern head '" + ctor.pattern_head + "'");
        return result;
    }
    ++i;
    skip_spaces(text, i);

    std::set<std::string> seen;
    if (i < text.size() && text[i] != ')') {
        while (true) {
            std::string var = take_identifier(text, i);
            if (var.empty()) {
                fail("expected a pattern variable name");
                return result;
            }
            skip_spaces(text, i);
            if (i + 1 >= text.size() || text[i] != ':' || text[i + 1] != ':') {
                fail("variable '" + var + "' is missing its '::Sort' annotation");
                return result;
            }
            i += 2;
            skip_spaces(text, i);
            std::string sort = take_identifier(text, i);
            if (sort.empty()) {
                fail("expected a sort name after '::' for variable '" + var + "'");
                return result;
            }
            if (!seen.insert(var).second) {
                fail("duplicate pattern variable '" + var + "'");
                return result;
            }
            ctor.pattern_params.emplace_back(std::move(var), std::move(sort));
            skip_spaces(text, i);
            if (i < text.size() && text[i] == ',') {
                ++i;
                skip_spaces(text, i);
                continue;
            }
            break;
        }
    }

    if (i >= text.size() || text[i] != ')') {
        fail("missing ')' in constructor pattern");
        return result;
    }
    ++i;
    skip_spaces(text, i);
    if (i >= text.size() || text[i] != '>') {
        fail("missing '>' after constructor pattern");
        return result;
    }
    ++i;
    skip_spaces(text, i);
    if (i != text.size()) {
        fail("trailing characters after constructor pattern");
        return result;
    }

    result.value = std::move(ctor);
    return result;
}

Parsed<FunctionSig> parse_function_signature(const std::string& s) {
    Parsed<FunctionSig> result;
    auto fail = [&](const std::string& msg) {
        result.add(Diagnostic::error("SIGNATURE_SYNTAX", msg));
    };

    const std::string text = trim(s);
    size_t i = 0;

    FunctionSig sig;
    sig.result_sort = take_identifier(text, i);
    if (sig.result_sort.empty()) {
        fail("signature must start with a result sort");
        return result;
    }
    skip_spaces(text, i);
    sig.name = take_identifier(text, i);
    if (sig.name.empty()) {
        fail("missing result sort or function name in '" + text + "'");
        return result;
    }
    skip_spaces(text, i);
    if (i >= text.size() || text[i] != '(') {
        fail("expected '(' after function name '" + sig.name + "'");
        return result;
    }
    ++i;
    skip_spaces(text, i);

    if (i < text.size() && text[i] != ')') {
        while (true) {
            std::string sort = take_identifier(text, i);
            if (sort.empty()) {
                fail("expected a parameter sort in '" + text + "'");
                return result;
            }
            sig.param_sorts.push_back(std::move(sort));
            skip_spaces(text, i);
            if (i < text.size() && text[i] == ',') {
                ++i;
                skip_spaces(text, i);
                continue;
            }
            break;
        }
    }

    if (i >= text.size() || text[i] != ')') {
        fail("missing ')' in signature '" + text + "'");
        return result;
    }
    ++i;
    skip_spaces(text, i);
    if (i != text.size()) {
        fail("trailing characters after signature");
        return result;
    }

    result.value = std::move(sig);
    return result;
}

Parsed<RewriteRule> parse_rule_line(const std::string& s) {
    Parsed<RewriteRule> result;

    const std::string text = trim(s);
    if (text.empty()) {
        result.add(Diagnostic::error("RULE_SYNTAX", "empty rule"));
        return result;
    }

    BalanceScan scan = scan_balanced(text);
    if (!scan.ok()) {
        result.add(*scan.error);
        return result;
    }

    SeparatorHit hit = find_separator(text, scan.depth);
    if (hit.kind == Separator::None) {
        result.add(Diagnostic::error("RULE_SYNTAX",
                                     "rule has no top-level '=' or '=>' separator: " + text));
        return result;
    }

    size_t sep_len = hit.kind == Separator::Arrow ? 2 : 1;
    RewriteRule rule;
    rule.original_arrow = hit.kind == Separator::Arrow ? RuleArrow::Arrow : RuleArrow::Eq;
    rule.lhs.text = trim(std::string_view(text).substr(0, hit.pos));
    rule.rhs.text = trim(std::string_view(text).substr(hit.pos + sep_len));

    if (rule.lhs.text.empty() || rule.rhs.text.empty()) {
        result.add(Diagnostic::error("RULE_SYNTAX",
                                     "rule side around the separator is empty: " + text));
        return result;
    }
    if (has_top_level_separator(rule.lhs.text) || has_top_level_separator(rule.rhs.text)) {
        result.add(Diagnostic::error("RULE_SYNTAX",
                                     "rule has more than one top-level separator: " + text));
        return result;
    }

    result.value = std::move(rule);
    return result;
}

namespace {

/// Incremental builder that walks the YAML tree and accumulates diagnostics.
/// One instance per file.
class SpecBuilder {
  public:
    SpecBuilder(const SourceFile& src, std::vector<Diagnostic>& diags)
        : src_(src), diags_(diags) {}

    SpecDocument build(const YAML::Node& root) {
        SpecDocument doc;
        doc.source_name = src_.name;
        bool spec_reported = false;
        bool for_reported = false;

        for (const auto& entry : root) {
            if (!entry.first.IsScalar()) {
                warn("UNKNOWN_NODE", "ignoring a non-scalar mapping key", "", entry.first);
                continue;
            }
            const std::string key = entry.first.Scalar();
            const YAML::Node& node = entry.second;
            if (key == "spec") {
                doc.spec_id = scalar_or(node, "spec", "MISSING_SPEC", spec_reported);
            } else if (key == "for") {
                doc.target_file = scalar_or(node, "for", "MISSING_FOR", for_reported);
            } else if (key == "imports") {
                read_imports(node, doc);
            } else if (key == "types") {
                read_types(node, doc);
            } else if (key == "funcs") {
                read_funcs(node, doc);
            } else {
                warn("UNKNOWN_NODE", "unrecognized node '" + key + "'", key, entry.first);
            }
        }

        if (!spec_reported && doc.spec_id.empty()) {
            error("MISSING_SPEC", "node 'spec' is missing or empty", "spec", root);
        }
        if (!for_reported && doc.target_file.empty()) {
            error("MISSING_FOR", "node 'for' is missing or empty", "for", root);
        }
        return doc;
    }

  private:
    const SourceFile& src_;
    std::vector<Diagnostic>& diags_;

    static int line_of(const YAML::Node& node) {
        if (!node.IsDefined()) return 0;
        int line = node.Mark().line;
        return line < 0 ? 0 : line + 1;
    }

    SourceLocation loc(const std::string& path, const YAML::Node& node) const {
        return {src_.name, path, line_of(node)};
    }

    void error(const std::string& code, const std::string& msg, const std::string& path,
               const YAML::Node& node) {
        diags_.push_back(Diagnostic::error(code, msg, loc(path, node)));
    }

    void warn(const std::string& code, const std::string& msg, const std::string& path,
              const YAML::Node& node) {
        diags_.push_back(Diagnostic::warning(code, msg, loc(path, node)));
    }

    /// Adopts a micro-grammar diagnostic, pointing it at the YAML node it
    /// came from.
    void adopt(std::vector<Diagnostic> ds, const std::string& path, const YAML::Node& node) {
        for (auto& d : ds) {
            d.location = loc(path, node);
            diags_.push_back(std::move(d));
        }
    }

    std::string scalar_or(const YAML::Node& node, const std::string& path,
                          const std::string& code, bool& reported) {
        if (node.IsScalar()) return trim(node.Scalar());
        if (!node.IsNull()) {
            error(code, "node '" + path + "' must be a single string", path, node);
            reported = true;
        }
        return {};
    }

    /// Reads a node that admits either one scalar or a sequence of scalars.
    std::vector<std::pair<std::string, YAML::Node>> scalar_list(const YAML::Node& node,
                                                                const std::string& path) {
        std::vector<std::pair<std::string, YAML::Node>> items;
        if (node.IsScalar()) {
            items.emplace_back(trim(node.Scalar()), node);
        } else if (node.IsSequence()) {
            size_t idx = 0;
            for (const auto& item : node) {
                const std::string at = path + "[" + std::to_string(idx++) + "]";
                if (!item.IsScalar()) {
                    error("NODE_SYNTAX", "entry under '" + path + "' must be a string", at, item);
                    continue;
                }
                items.emplace_back(trim(item.Scalar()), item);
            }
        } else if (!node.IsNull()) {
            error("NODE_SYNTAX", "node '" + path + "' must be a string or a list of strings",
                  path, node);
        }
        return items;
    }

    void read_imports(const YAML::Node& node, SpecDocument& doc) {
        size_t idx = 0;
        for (auto& [text, item] : scalar_list(node, "imports")) {
            const std::string at = "imports[" + std::to_string(idx++) + "]";
            const std::string ext = std::filesystem::path(text).extension().string();
            if (ext == ".yaml") {
                doc.imports.push_back({text, ImportKind::AslImport, line_of(item)});
            } else if (ext == ".k") {
                doc.imports.push_back({text, ImportKind::KImport, line_of(item)});
            } else {
                error("IMPORT_EXTENSION",
                      "import '" + text + "' must be a .yaml or .k file", at, item);
            }
        }
    }

    std::vector<ConstructorExpr> read_is(const YAML::Node& node, const std::string& path) {
        std::vector<ConstructorExpr> ctors;
        for (auto& [text, item] : scalar_list(node, path)) {
            auto parsed = parse_constructor(text);
            adopt(std::move(parsed.diagnostics), path, item);
            if (parsed.ok()) ctors.push_back(std::move(*parsed.value));
        }
        return ctors;
    }

    std::vector<ExprText> read_exprs(const YAML::Node& node, const std::string& path) {
        std::vector<ExprText> exprs;
        for (auto& [text, item] : scalar_list(node, path)) {
            BalanceScan scan = scan_balanced(text);
            if (!scan.ok()) {
                adopt({*scan.error}, path, item);
                continue;
            }
            exprs.push_back({text});
        }
        return exprs;
    }

    std::vector<FunctionDef> read_functions(const YAML::Node& node, const std::string& path) {
        std::vector<FunctionDef> defs;
        if (!node.IsMap()) {
            error("NODE_SYNTAX",
                  "node 'functions' must map signatures to rule lists", path, node);
            return defs;
        }
        for (const auto& entry : node) {
            if (!entry.first.IsScalar()) {
                error("SIGNATURE_SYNTAX", "function signature key must be a string", path,
                      entry.first);
                continue;
            }
            const std::string sig_text = trim(entry.first.Scalar());
            auto sig = parse_function_signature(sig_text);
            adopt(std::move(sig.diagnostics), path, entry.first);
            if (!sig.ok()) continue;

            FunctionDef def;
            def.signature = std::move(*sig.value);
            const std::string rules_path = path + "." + def.signature.name;
            for (auto& [text, item] : scalar_list(entry.second, rules_path)) {
                auto rule = parse_rule_line(text);
                adopt(std::move(rule.diagnostics), rules_path, item);
                if (rule.ok()) def.rules.push_back(std::move(*rule.value));
            }
            if (def.rules.empty()) {
                error("EMPTY_RULES", "function '" + def.signature.name + "' has no rules",
                      rules_path, entry.second.IsDefined() ? entry.second : entry.first);
            } else {
                defs.push_back(std::move(def));
            }
        }
        return defs;
    }

    void read_types(const YAML::Node& node, SpecDocument& doc) {
        if (!node.IsSequence()) {
            error("NODE_SYNTAX", "node 'types' must be a list", "types", node);
            return;
        }
        size_t idx = 0;
        for (const auto& item : node) {
            const std::string path = "types[" + std::to_string(idx++) + "]";
            if (!item.IsMap()) {
                error("TYPE_KIND_MISSING",
                      "types entry must be a mapping with 'type' or 'ctype'", path, item);
                continue;
            }
            const YAML::Node plain = item["type"];
            const YAML::Node ctarget = item["ctype"];
            if (plain.IsDefined() && ctarget.IsDefined()) {
                error("TYPE_KIND_CONFLICT", "types entry has both 'type' and 'ctype'", path,
                      item);
                continue;
            }
            if (!plain.IsDefined() && !ctarget.IsDefined()) {
                error("TYPE_KIND_MISSING", "types entry has neither 'type' nor 'ctype'", path,
                      item);
                continue;
            }

            TypeDecl decl;
            decl.kind = ctarget.IsDefined() ? TypeKind::CType : TypeKind::AuxType;
            decl.line = line_of(item);
            const YAML::Node name_node = ctarget.IsDefined() ? ctarget : plain;
            const char* kind_key = ctarget.IsDefined() ? "ctype" : "type";
            bool reported = false;
            decl.name = scalar_or(name_node, path + "." + kind_key, "TYPE_KIND_MISSING", reported);
            if (decl.name.empty()) {
                if (!reported) {
                    error("TYPE_KIND_MISSING", "'" + std::string(kind_key) +
                          "' must name the declared type", path + "." + kind_key, name_node);
                }
                continue;
            }
            if (!is_identifier(decl.name)) {
                error("IDENTIFIER_SYNTAX", "'" + decl.name + "' is not a valid type name",
                      path + "." + kind_key, name_node);
                continue;
            }

            for (const auto& entry : item) {
                if (!entry.first.IsScalar()) continue;
                const std::string key = entry.first.Scalar();
                if (key == "type" || key == "ctype") continue;
                if (key == "is") {
                    decl.constructors = read_is(entry.second, path + ".is");
                } else if (key == "functions") {
                    decl.functions = read_functions(entry.second, path + ".functions");
                } else if (key == "constructs") {
                    decl.constructs = read_exprs(entry.second, path + ".constructs");
                } else {
                    warn("UNKNOWN_NODE", "unrecognized node '" + key + "' in types entry",
                         path + "." + key, entry.first);
                }
            }
            doc.types.push_back(std::move(decl));
        }
    }

    void read_funcs(const YAML::Node& node, SpecDocument& doc) {
        if (!node.IsSequence()) {
            error("NODE_SYNTAX", "node 'funcs' must be a list", "funcs", node);
            return;
        }
        size_t idx = 0;
        for (const auto& item : node) {
            const std::string path = "funcs[" + std::to_string(idx++) + "]";
            if (!item.IsMap()) {
                error("FUNC_KIND_MISSING",
                      "funcs entry must be a mapping with 'func' or 'cfunc'", path, item);
                continue;
            }
            const YAML::Node plain = item["func"];
            const YAML::Node ctarget = item["cfunc"];
            if (plain.IsDefined() && ctarget.IsDefined()) {
                error("FUNC_KIND_CONFLICT", "funcs entry has both 'func' and 'cfunc'", path,
                      item);
                continue;
            }
            if (!plain.IsDefined() && !ctarget.IsDefined()) {
                error("FUNC_KIND_MISSING", "funcs entry has neither 'func' nor 'cfunc'", path,
                      item);
                continue;
            }

            FuncDecl decl;
            decl.kind = ctarget.IsDefined() ? FuncKind::CFunc : FuncKind::AuxFunc;
            decl.line = line_of(item);
            const YAML::Node name_node = ctarget.IsDefined() ? ctarget : plain;
            const char* kind_key = ctarget.IsDefined() ? "cfunc" : "func";
            bool reported = false;
            decl.name = scalar_or(name_node, path + "." + kind_key, "FUNC_KIND_MISSING", reported);
            if (decl.name.empty()) {
                if (!reported) {
                    error("FUNC_KIND_MISSING", "'" + std::string(kind_key) +
                          "' must name the declared func", path + "." + kind_key, name_node);
                }
                continue;
            }
            if (!is_identifier(decl.name)) {
                error("IDENTIFIER_SYNTAX", "'" + decl.name + "' is not a valid func name",
                      path + "." + kind_key, name_node);
                continue;
            }

            for (const auto& entry : item) {
                if (!entry.first.IsScalar()) continue;
                const std::string key = entry.first.Scalar();
                if (key == "func" || key == "cfunc") continue;
                if (key == "is") {
                    decl.constructors = read_is(entry.second, path + ".is");
                } else if (key == "inputs") {
                    read_inputs(entry.second, path + ".inputs", decl);
                } else if (key == "contracts") {
                    decl.contracts = read_exprs(entry.second, path + ".contracts");
                } else {
                    warn("UNKNOWN_NODE", "unrecognized node '" + key + "' in funcs entry",
                         path + "." + key, entry.first);
                }
            }
            doc.funcs.push_back(std::move(decl));
        }
    }

    void read_inputs(const YAML::Node& node, const std::string& path, FuncDecl& decl) {
        if (!node.IsScalar()) {
            if (!node.IsNull()) {
                error("INPUTS_SYNTAX", "node 'inputs' must be a single expression string",
                      path, node);
            }
            return;
        }
        const std::string text = trim(node.Scalar());
        if (text.empty()) return;
        BalanceScan scan = scan_balanced(text);
        if (!scan.ok()) {
            adopt({*scan.error}, path, node);
            return;
        }
        decl.inputs = ExprText{text};
    }
};

}  // namespace

Parsed<SpecDocument> parse_spec(const SourceFile& src) {
    Parsed<SpecDocument> result;

    YAML::Node root;
    try {
        root = YAML::Load(src.text);
    } catch (const YAML::Exception& e) {
        result.add(Diagnostic::error("YAML_SYNTAX", e.msg,
                                     {src.name, "", e.mark.line < 0 ? 0 : e.mark.line + 1}));
        return result;
    }
    if (!root.IsMap()) {
        result.add(Diagnostic::error("YAML_SYNTAX", "document root must be a YAML mapping",
                                     {src.name, "", 1}));
        return result;
    }

    SpecBuilder builder(src, result.diagnostics);
    SpecDocument doc = builder.build(root);
    if (!has_errors(result.diagnostics)) {
        result.merge(check_document(doc));
    }
    if (!has_errors(result.diagnostics)) {
        result.value = std::move(doc);
    }
    return result;
}

}  // namespace aslk
