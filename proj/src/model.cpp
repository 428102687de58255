#include "aslk/model.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace aslk {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string signature_text(const FunctionSig& sig) {
    return sig.result_sort + " " + sig.name + "(" + join(sig.param_sorts, ", ") + ")";
}

std::string rule_text(const RewriteRule& rule) {
    const char* arrow = rule.original_arrow == RuleArrow::Eq ? "=" : "=>";
    return rule.lhs.text + " " + arrow + " " + rule.rhs.text;
}

void emit_string_list(YAML::Emitter& out, const char* key, const std::vector<std::string>& items) {
    if (items.empty()) return;
    out << YAML::Key << key << YAML::Value << YAML::BeginSeq;
    for (const auto& item : items) out << item;
    out << YAML::EndSeq;
}

std::vector<std::string> expr_texts(const std::vector<ExprText>& exprs) {
    std::vector<std::string> out;
    out.reserve(exprs.size());
    for (const auto& e : exprs) out.push_back(e.text);
    return out;
}

std::vector<std::string> constructor_texts(const std::vector<ConstructorExpr>& ctors) {
    std::vector<std::string> out;
    out.reserve(ctors.size());
    for (const auto& c : ctors) out.push_back(c.raw);
    return out;
}

}  // namespace

std::string uppercase_stem(const std::string& path) {
    std::string stem = std::filesystem::path(path).stem().string();
    for (char& c : stem) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return stem;
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(head) || s[0] == '_')) return false;
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '_')) return false;
    }
    return true;
}

std::vector<Diagnostic> check_document(const SpecDocument& doc) {
    std::vector<Diagnostic> diags;

    const std::string expected = uppercase_stem(doc.source_name);
    if (doc.spec_id.empty() || doc.spec_id != expected) {
        diags.push_back(Diagnostic::error(
            "SPEC_ID_MISMATCH",
            "spec id '" + doc.spec_id + "' does not match '" + expected +
                "', the uppercased stem of " + doc.source_name,
            {doc.source_name, "spec", 1}));
    }
    if (doc.target_file.empty()) {
        diags.push_back(Diagnostic::error("EMPTY_TARGET", "node 'for' is empty",
                                          {doc.source_name, "for", 1}));
    }

    std::map<std::string, size_t> seen_types;
    for (size_t i = 0; i < doc.types.size(); ++i) {
        const TypeDecl& t = doc.types[i];
        const std::string path = "types[" + std::to_string(i) + "]";
        auto [it, fresh] = seen_types.emplace(t.name, i);
        if (!fresh) {
            diags.push_back(Diagnostic::error("DUPLICATE_TYPE",
                                              "duplicate type '" + t.name + "'",
                                              {doc.source_name, path, t.line}));
        }
        for (const auto& ctor : t.constructors) {
            if (ctor.parent == t.name) {
                diags.push_back(Diagnostic::error(
                    "TYPE_CYCLE", "type '" + t.name + "' names itself as parent",
                    {doc.source_name, path + ".is", t.line}));
            }
        }
    }

    std::map<std::string, size_t> seen_funcs;
    for (size_t i = 0; i < doc.funcs.size(); ++i) {
        const FuncDecl& f = doc.funcs[i];
        const std::string path = "funcs[" + std::to_string(i) + "]";
        auto [it, fresh] = seen_funcs.emplace(f.name, i);
        if (!fresh) {
            diags.push_back(Diagnostic::error("DUPLICATE_FUNC",
                                              "duplicate func '" + f.name + "'",
                                              {doc.source_name, path, f.line}));
        }
        for (const auto& ctor : f.constructors) {
            if (ctor.parent == f.name) {
                diags.push_back(Diagnostic::error(
                    "TYPE_CYCLE", "func '" + f.name + "' names itself as parent",
                    {doc.source_name, path + ".is", f.line}));
            }
        }
    }

    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.location.line != b.location.line) return a.location.line < b.location.line;
        return a.code < b.code;
    });
    return diags;
}

std::string to_canonical_yaml(const SpecDocument& doc) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "spec" << YAML::Value << doc.spec_id;
    out << YAML::Key << "for" << YAML::Value << doc.target_file;

    if (!doc.imports.empty()) {
        out << YAML::Key << "imports" << YAML::Value << YAML::BeginSeq;
        for (const auto& imp : doc.imports) out << imp.path;
        out << YAML::EndSeq;
    }

    if (!doc.types.empty()) {
        out << YAML::Key << "types" << YAML::Value << YAML::BeginSeq;
        for (const auto& t : doc.types) {
            out << YAML::BeginMap;
            out << YAML::Key << (t.kind == TypeKind::CType ? "ctype" : "type");
            out << YAML::Value << t.name;
            emit_string_list(out, "is", constructor_texts(t.constructors));
            if (!t.functions.empty()) {
                out << YAML::Key << "functions" << YAML::Value << YAML::BeginMap;
                for (const auto& f : t.functions) {
                    out << YAML::Key << signature_text(f.signature);
                    out << YAML::Value << YAML::BeginSeq;
                    for (const auto& r : f.rules) out << rule_text(r);
                    out << YAML::EndSeq;
                }
                out << YAML::EndMap;
            }
            emit_string_list(out, "constructs", expr_texts(t.constructs));
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }

    if (!doc.funcs.empty()) {
        out << YAML::Key << "funcs" << YAML::Value << YAML::BeginSeq;
        for (const auto& f : doc.funcs) {
            out << YAML::BeginMap;
            out << YAML::Key << (f.kind == FuncKind::CFunc ? "cfunc" : "func");
            out << YAML::Value << f.name;
            emit_string_list(out, "is", constructor_texts(f.constructors));
            if (f.inputs) {
                out << YAML::Key << "inputs" << YAML::Value << f.inputs->text;
            }
            emit_string_list(out, "contracts", expr_texts(f.contracts));
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }

    out << YAML::EndMap;
    std::string text = out.c_str();
    text += '\n';
    return text;
}

}  // namespace aslk
