#ifndef ASLK_MODEL_HPP
#define ASLK_MODEL_HPP

#include <string>
#include <vector>

#include "aslk/diagnostics.hpp"

namespace aslk {

// The document model: one validated data type per ASL concept, independent of
// YAML syntax and of the K emission format. All types are immutable value
// types once constructed; `line` members are source metadata and do not take
// part in structural equality.

enum class ImportKind { AslImport, KImport };

struct ImportRef {
    std::string path;
    ImportKind kind = ImportKind::AslImport;
    int line = 0;

    bool operator==(const ImportRef& o) const { return path == o.path && kind == o.kind; }
};

/// A K-syntax expression stored verbatim after trimming. Round and curly
/// brackets must balance; angle brackets are comparison operators here and
/// are not checked.
struct ExprText {
    std::string text;

    bool operator==(const ExprText& o) const { return text == o.text; }
};

/// A parsed `is` value: `Parent` or `Parent<head(v1::Sort1,...)>`.
struct ConstructorExpr {
    std::string parent;
    std::string pattern_head;  // empty for a bare parent name
    std::vector<std::pair<std::string, std::string>> pattern_params;  // (var, sort)
    std::string raw;

    bool has_pattern() const { return !pattern_head.empty(); }

    bool operator==(const ConstructorExpr& o) const {
        return parent == o.parent && pattern_head == o.pattern_head &&
               pattern_params == o.pattern_params && raw == o.raw;
    }
};

struct FunctionSig {
    std::string result_sort;
    std::string name;
    std::vector<std::string> param_sorts;

    bool operator==(const FunctionSig& o) const {
        return result_sort == o.result_sort && name == o.name && param_sorts == o.param_sorts;
    }
};

enum class RuleArrow { Eq, Arrow };  // "=" vs "=>" in the source

struct RewriteRule {
    ExprText lhs;
    ExprText rhs;
    RuleArrow original_arrow = RuleArrow::Arrow;

    bool operator==(const RewriteRule& o) const {
        return lhs == o.lhs && rhs == o.rhs && original_arrow == o.original_arrow;
    }
};

struct FunctionDef {
    FunctionSig signature;
    std::vector<RewriteRule> rules;  // never empty in a valid document

    bool operator==(const FunctionDef& o) const {
        return signature == o.signature && rules == o.rules;
    }
};

enum class TypeKind { AuxType, CType };  // `type` vs `ctype`

struct TypeDecl {
    std::string name;
    TypeKind kind = TypeKind::AuxType;
    std::vector<ConstructorExpr> constructors;
    std::vector<FunctionDef> functions;
    std::vector<ExprText> constructs;
    int line = 0;

    bool operator==(const TypeDecl& o) const {
        return name == o.name && kind == o.kind && constructors == o.constructors &&
               functions == o.functions && constructs == o.constructs;
    }
};

enum class FuncKind { AuxFunc, CFunc };  // `func` vs `cfunc`

struct FuncDecl {
    std::string name;
    FuncKind kind = FuncKind::AuxFunc;
    std::vector<ConstructorExpr> constructors;
    std::optional<ExprText> inputs;
    std::vector<ExprText> contracts;
    int line = 0;

    bool operator==(const FuncDecl& o) const {
        return name == o.name && kind == o.kind && constructors == o.constructors &&
               inputs == o.inputs && contracts == o.contracts;
    }
};

/// One parsed, validated ASL file.
struct SpecDocument {
    std::string spec_id;
    std::string target_file;
    std::vector<ImportRef> imports;
    std::vector<TypeDecl> types;
    std::vector<FuncDecl> funcs;
    std::string source_name;

    bool operator==(const SpecDocument& o) const {
        return spec_id == o.spec_id && target_file == o.target_file && imports == o.imports &&
               types == o.types && funcs == o.funcs && source_name == o.source_name;
    }
};

/// ASCII-uppercased stem of a path's file name; '-' and '_' pass through.
/// "dir/example.yaml" -> "EXAMPLE". This is the required `spec` value.
std::string uppercase_stem(const std::string& path);

/// True iff s matches [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(const std::string& s);

/// Semantic validation of a structurally complete document. Returns every
/// violation: spec id vs file stem, empty target, duplicate type/func names,
/// and constructors whose parent is the declaring name itself. Pure; the
/// result is ordered by (source line, code).
std::vector<Diagnostic> check_document(const SpecDocument& doc);

/// Serializes the document to canonical YAML. Reparsing the result yields a
/// structurally equal SpecDocument.
std::string to_canonical_yaml(const SpecDocument& doc);

}  // namespace aslk

#endif
