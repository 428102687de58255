#include "aslk/resolver.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "aslk/parser.hpp"

namespace fs = std::filesystem;

namespace aslk {

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Whole-token textual substitution: `from` -> `to` wherever `from` is not
/// embedded in a longer identifier.
std::string replace_token(const std::string& text, const std::string& from,
                          const std::string& to) {
    if (from.empty()) return text;
    std::string out;
    size_t i = 0;
    while (i < text.size()) {
        bool starts_token = i == 0 || !ident_char(text[i - 1]);
        if (starts_token && text.compare(i, from.size(), from) == 0) {
            size_t end = i + from.size();
            if (end == text.size() || !ident_char(text[end])) {
                out += to;
                i = end;
                continue;
            }
        }
        out += text[i];
        ++i;
    }
    return out;
}

/// One rename step along an inheritance chain: material written against
/// `parent` is re-read as being about `child`.
struct Rename {
    std::string parent;
    std::string child;
};

using RenameChain = std::vector<Rename>;

std::string apply_chain(std::string text, const RenameChain& chain) {
    for (const auto& step : chain) text = replace_token(text, step.parent, step.child);
    return text;
}

std::string join_path(const std::vector<std::string>& names) {
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += " -> ";
        out += names[i];
    }
    return out;
}

/// Looks for an inheritance cycle reachable from `name`, following only
/// parents that are themselves declared. Returns the cycle path if found.
template <typename ParentsOf>
std::optional<std::string> find_cycle(const std::string& name, ParentsOf parents_of) {
    std::vector<std::string> path;
    std::set<std::string> on_path;
    std::set<std::string> done;

    std::optional<std::string> found;
    auto walk = [&](auto&& self, const std::string& node) -> void {
        if (found || done.count(node)) return;
        if (on_path.count(node)) {
            std::vector<std::string> cycle;
            auto it = std::find(path.begin(), path.end(), node);
            cycle.assign(it, path.end());
            cycle.push_back(node);
            found = join_path(cycle);
            return;
        }
        on_path.insert(node);
        path.push_back(node);
        for (const std::string& p : parents_of(node)) self(self, p);
        path.pop_back();
        on_path.erase(node);
        done.insert(node);
    };
    walk(walk, name);
    return found;
}

/// Level-order walk over all ancestors of `name`. The visitor sees each
/// ancestor once (first encounter wins), with the rename chain that maps its
/// material down to `name` and whether it is declared locally.
template <typename Decls, typename Visit>
void walk_ancestors(const std::string& name, const Decls& decls, Visit visit) {
    struct Entry {
        std::string ancestor;
        RenameChain chain;
    };
    std::deque<Entry> queue;
    std::set<std::string> seen;

    auto enqueue_parents = [&](const auto& decl, const RenameChain& chain) {
        for (const auto& ctor : decl.constructors) {
            RenameChain next;
            next.push_back({ctor.parent, decl.name});
            next.insert(next.end(), chain.begin(), chain.end());
            queue.push_back({ctor.parent, std::move(next)});
        }
    };

    auto root = decls.find(name);
    if (root == decls.end()) return;
    enqueue_parents(root->second, {});

    while (!queue.empty()) {
        Entry entry = std::move(queue.front());
        queue.pop_front();
        if (!seen.insert(entry.ancestor).second) continue;
        auto it = decls.find(entry.ancestor);
        const bool local = it != decls.end();
        visit(entry.ancestor, local, entry.chain);
        if (local) enqueue_parents(it->second, entry.chain);
    }
}

template <typename Decls>
auto local_parents_of(const Decls& decls) {
    return [&decls](const std::string& node) {
        std::vector<std::string> out;
        auto it = decls.find(node);
        if (it == decls.end()) return out;
        for (const auto& ctor : it->second.constructors) {
            if (decls.count(ctor.parent)) out.push_back(ctor.parent);
        }
        return out;
    };
}

}  // namespace

ExprText substitute_pattern(const ExprText& expr, const ConstructorExpr& ctor,
                            const std::string& child_name) {
    return ExprText{replace_token(expr.text, ctor.parent, child_name)};
}

Parsed<EffectiveType> resolve_type(const std::string& name, const DeclRegistry& registry) {
    Parsed<EffectiveType> result;
    auto it = registry.types.find(name);
    if (it == registry.types.end()) {
        result.add(Diagnostic::error("UNKNOWN_TYPE", "type '" + name + "' is not declared"));
        return result;
    }
    if (auto cycle = find_cycle(name, local_parents_of(registry.types))) {
        result.add(Diagnostic::error("TYPE_CYCLE", "type inheritance cycle: " + *cycle));
        return result;
    }

    EffectiveType eff;
    eff.decl = it->second;

    std::vector<FunctionSig> sigs;
    for (const auto& f : eff.decl.functions) sigs.push_back(f.signature);
    auto sig_known = [&sigs](const FunctionSig& s) {
        for (const auto& k : sigs) {
            if (k == s) return true;
        }
        return false;
    };
    std::set<std::string> texts;
    for (const auto& c : eff.decl.constructs) texts.insert(c.text);

    walk_ancestors(name, registry.types,
                   [&](const std::string& ancestor, bool local, const RenameChain& chain) {
                       eff.parents.push_back(ancestor);
                       if (!local) {
                           result.add(Diagnostic::warning(
                               "EXTERNAL_PARENT", "parent '" + ancestor +
                                                      "' of type '" + name +
                                                      "' is not declared in any ASL file"));
                           return;
                       }
                       const TypeDecl& pd = registry.types.at(ancestor);
                       for (const auto& f : pd.functions) {
                           if (sig_known(f.signature)) continue;
                           sigs.push_back(f.signature);
                           eff.inherited_functions.push_back(f);
                       }
                       for (const auto& c : pd.constructs) {
                           std::string specialized = apply_chain(c.text, chain);
                           if (!texts.insert(specialized).second) continue;
                           eff.inherited_constructs.push_back({std::move(specialized)});
                       }
                   });

    result.value = std::move(eff);
    return result;
}

Parsed<EffectiveFunc> resolve_func(const std::string& name, const DeclRegistry& registry) {
    Parsed<EffectiveFunc> result;
    auto it = registry.funcs.find(name);
    if (it == registry.funcs.end()) {
        result.add(Diagnostic::error("UNKNOWN_FUNC", "func '" + name + "' is not declared"));
        return result;
    }
    if (auto cycle = find_cycle(name, local_parents_of(registry.funcs))) {
        result.add(Diagnostic::error("TYPE_CYCLE", "func inheritance cycle: " + *cycle));
        return result;
    }

    EffectiveFunc eff;
    eff.decl = it->second;

    std::set<std::string> texts;
    for (const auto& c : eff.decl.contracts) texts.insert(c.text);

    walk_ancestors(name, registry.funcs,
                   [&](const std::string& ancestor, bool local, const RenameChain& chain) {
                       eff.parents.push_back(ancestor);
                       eff.relations.push_back(local ? AncestorRelation::Reuse
                                                     : AncestorRelation::None);
                       if (!local) {
                           result.add(Diagnostic::warning(
                               "EXTERNAL_PARENT", "parent '" + ancestor +
                                                      "' of func '" + name +
                                                      "' is not declared in any ASL file"));
                           return;
                       }
                       const FuncDecl& pd = registry.funcs.at(ancestor);
                       for (const auto& c : pd.contracts) {
                           std::string specialized = apply_chain(c.text, chain);
                           if (!texts.insert(specialized).second) continue;
                           eff.inherited_contracts.push_back({std::move(specialized)});
                       }
                   });

    result.value = std::move(eff);
    return result;
}

namespace {

/// Import loading state for one resolve_imports run.
class ImportLoader {
  public:
    ImportLoader(const std::vector<std::string>& search_paths, std::vector<Diagnostic>& diags)
        : search_paths_(search_paths), diags_(diags) {}

    void run(const SpecDocument& root) {
        const std::string canon = canonical(root.source_name);
        visited_.insert(canon);
        stack_.push_back({root.source_name, canon});
        merge_decls(root);
        load_imports(root, root.source_name);
        stack_.pop_back();
    }

    DeclRegistry registry;
    std::vector<std::string> k_imports;
    std::vector<std::string> asl_inlined;

  private:
    const std::vector<std::string>& search_paths_;
    std::vector<Diagnostic>& diags_;
    std::set<std::string> visited_;

    struct Frame {
        std::string display;
        std::string canon;
    };
    std::vector<Frame> stack_;

    static std::string canonical(const std::string& p) {
        std::error_code ec;
        fs::path c = fs::weakly_canonical(p, ec);
        if (ec) return fs::path(p).lexically_normal().string();
        return c.string();
    }

    void merge_decls(const SpecDocument& doc) {
        for (size_t i = 0; i < doc.types.size(); ++i) {
            const TypeDecl& t = doc.types[i];
            auto [it, fresh] = registry.types.emplace(t.name, t);
            if (fresh) {
                registry.type_order.push_back(t.name);
            } else if (!(it->second == t)) {
                diags_.push_back(Diagnostic::error(
                    "NAME_CLASH",
                    "type '" + t.name + "' is declared differently in another file",
                    {doc.source_name, "types[" + std::to_string(i) + "]", t.line}));
            }
        }
        for (size_t i = 0; i < doc.funcs.size(); ++i) {
            const FuncDecl& f = doc.funcs[i];
            auto [it, fresh] = registry.funcs.emplace(f.name, f);
            if (fresh) {
                registry.func_order.push_back(f.name);
            } else if (!(it->second == f)) {
                diags_.push_back(Diagnostic::error(
                    "NAME_CLASH",
                    "func '" + f.name + "' is declared differently in another file",
                    {doc.source_name, "funcs[" + std::to_string(i) + "]", f.line}));
            }
        }
    }

    std::optional<std::string> locate(const std::string& import_path,
                                      const std::string& importer) {
        std::vector<fs::path> candidates;
        fs::path dir = fs::path(importer).parent_path();
        candidates.push_back(dir.empty() ? fs::path(import_path) : dir / import_path);
        for (const auto& sp : search_paths_) candidates.push_back(fs::path(sp) / import_path);
        for (const auto& c : candidates) {
            std::error_code ec;
            if (fs::exists(c, ec)) return c.string();
        }
        return std::nullopt;
    }

    void load_imports(const SpecDocument& doc, const std::string& doc_path) {
        for (size_t i = 0; i < doc.imports.size(); ++i) {
            const ImportRef& imp = doc.imports[i];
            const SourceLocation at{doc.source_name, "imports[" + std::to_string(i) + "]",
                                    imp.line};
            if (imp.kind == ImportKind::KImport) {
                if (std::find(k_imports.begin(), k_imports.end(), imp.path) ==
                    k_imports.end()) {
                    k_imports.push_back(imp.path);
                }
                continue;
            }

            auto located = locate(imp.path, doc_path);
            if (!located) {
                diags_.push_back(Diagnostic::error(
                    "IMPORT_NOT_FOUND",
                    "import '" + imp.path + "' not found next to " + doc.source_name +
                        " or on " + std::to_string(search_paths_.size()) + " search path(s)",
                    at));
                continue;
            }
            const std::string canon = canonical(*located);

            auto frame = std::find_if(stack_.begin(), stack_.end(),
                                      [&](const Frame& f) { return f.canon == canon; });
            if (frame != stack_.end()) {
                std::vector<std::string> names;
                for (auto it = frame; it != stack_.end(); ++it) names.push_back(it->display);
                names.push_back(frame->display);
                diags_.push_back(Diagnostic::error("IMPORT_CYCLE",
                                                   "import cycle: " + join_path(names), at));
                continue;
            }
            if (!visited_.insert(canon).second) continue;

            std::ifstream in(*located, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            if (!in.good() && !in.eof()) {
                diags_.push_back(Diagnostic::error(
                    "IMPORT_NOT_FOUND", "import '" + imp.path + "' cannot be read", at));
                continue;
            }

            Parsed<SpecDocument> sub = parse_spec({*located, buf.str()});
            for (auto& d : sub.diagnostics) diags_.push_back(std::move(d));
            if (!sub.ok()) continue;

            asl_inlined.push_back(fs::path(*located).stem().string());
            stack_.push_back({imp.path, canon});
            merge_decls(*sub.value);
            load_imports(*sub.value, *located);
            stack_.pop_back();
        }
    }
};

}  // namespace

Parsed<ResolvedSpec> resolve_imports(const SpecDocument& root,
                                     const std::vector<std::string>& search_paths) {
    Parsed<ResolvedSpec> result;
    ImportLoader loader(search_paths, result.diagnostics);
    loader.run(root);
    if (has_errors(result.diagnostics)) return result;

    ResolvedSpec spec;
    spec.root = root;
    spec.k_imports = std::move(loader.k_imports);
    spec.asl_inlined = std::move(loader.asl_inlined);
    spec.type_order = loader.registry.type_order;
    spec.func_order = loader.registry.func_order;

    for (const auto& name : spec.type_order) {
        auto eff = resolve_type(name, loader.registry);
        result.merge(std::move(eff.diagnostics));
        if (eff.ok()) spec.type_registry.emplace(name, std::move(*eff.value));
    }
    for (const auto& name : spec.func_order) {
        auto eff = resolve_func(name, loader.registry);
        result.merge(std::move(eff.diagnostics));
        if (eff.ok()) spec.func_registry.emplace(name, std::move(*eff.value));
    }

    if (!has_errors(result.diagnostics)) result.value = std::move(spec);
    return result;
}

}  // namespace aslk
