#ifndef ASLK_RESOLVER_HPP
#define ASLK_RESOLVER_HPP

#include <map>
#include <string>
#include <vector>

#include "aslk/diagnostics.hpp"
#include "aslk/model.hpp"

namespace aslk {

/// Declarations gathered from the root document and every transitively
/// imported ASL file, keyed by name. Order vectors keep load order (root
/// first, then depth-first import order) for deterministic emission.
struct DeclRegistry {
    std::map<std::string, TypeDecl> types;
    std::map<std::string, FuncDecl> funcs;
    std::vector<std::string> type_order;
    std::vector<std::string> func_order;
};

/// A type with its inheritance flattened: ancestor functions verbatim and
/// ancestor constructs specialized to this type, both nearest-first and
/// de-duplicated against the declaration's own material.
struct EffectiveType {
    TypeDecl decl;
    std::vector<FunctionDef> inherited_functions;
    std::vector<ExprText> inherited_constructs;
    std::vector<std::string> parents;  // all ancestors, nearest-first
};

enum class AncestorRelation {
    None,   // parent supplied externally (a .k import); nothing to reuse
    Reuse,  // parent declared in ASL; its specifications are inherited
};

struct EffectiveFunc {
    FuncDecl decl;
    std::vector<ExprText> inherited_contracts;
    std::vector<std::string> parents;
    std::vector<AncestorRelation> relations;  // parallel to parents
};

/// The verification environment for one root document.
struct ResolvedSpec {
    SpecDocument root;
    std::vector<std::string> k_imports;     // de-duplicated, DFS encounter order
    std::vector<std::string> asl_inlined;   // stems of inlined ASL imports, DFS order
    std::map<std::string, EffectiveType> type_registry;
    std::map<std::string, EffectiveFunc> func_registry;
    std::vector<std::string> type_order;    // emission order
    std::vector<std::string> func_order;
};

/// Replaces whole-token occurrences of ctor.parent in expr with child_name.
/// Token boundaries are identifier boundaries; everything else is verbatim.
ExprText substitute_pattern(const ExprText& expr, const ConstructorExpr& ctor,
                            const std::string& child_name);

/// Flattens the `is` chain of one type. Unknown parents degrade to a
/// Warning EXTERNAL_PARENT (the external K environment enforces them);
/// cycles are an Error TYPE_CYCLE carrying the cycle path.
Parsed<EffectiveType> resolve_type(const std::string& name, const DeclRegistry& registry);

/// Function analogue of resolve_type: collects ancestor contracts
/// nearest-first, specialized to the resolved function's name.
Parsed<EffectiveFunc> resolve_func(const std::string& name, const DeclRegistry& registry);

/// Loads `.yaml` imports recursively (lookup: importing file's directory,
/// then search_paths in order; each file at most once), records `.k` imports
/// verbatim, merges all declarations, and resolves every type and function.
/// The root must already have passed check_document without Errors.
Parsed<ResolvedSpec> resolve_imports(const SpecDocument& root,
                                     const std::vector<std::string>& search_paths);

}  // namespace aslk

#endif
