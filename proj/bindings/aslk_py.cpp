#include <fstream>
#include <sstream>
#include <stdexcept>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aslk/metrics.hpp"
#include "aslk/parser.hpp"
#include "aslk/resolver.hpp"
#include "aslk/translator.hpp"

namespace py = pybind11;
using namespace aslk;

namespace {

std::string joined_messages(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
        if (!out.empty()) out += '\n';
        out += to_string(d);
    }
    return out;
}

/// Unwraps a Parsed<T>, converting diagnostics into a ValueError.
template <typename T>
T unwrap(Parsed<T> parsed) {
    if (!parsed.ok()) throw py::value_error(joined_messages(parsed.diagnostics));
    return std::move(*parsed.value);
}

std::string read_file_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ResolvedSpec resolve_file(const std::string& path,
                          const std::vector<std::string>& search_paths) {
    Parsed<SpecDocument> parsed = parse_spec({path, read_file_or_throw(path)});
    if (!parsed.ok()) throw py::value_error(joined_messages(parsed.diagnostics));
    Parsed<ResolvedSpec> resolved = resolve_imports(*parsed.value, search_paths);
    if (!resolved.ok()) throw py::value_error(joined_messages(resolved.diagnostics));
    return std::move(*resolved.value);
}

std::string translate_resolved(const ResolvedSpec& spec) {
    return assemble_module(spec, emission_config_for(spec)).to_string();
}

}  // namespace

PYBIND11_MODULE(_aslk, m) {
    m.doc() = "ASL compiler core: parsing, validation, and K module emission";

    py::enum_<Severity>(m, "Severity")
        .value("ERROR", Severity::Error)
        .value("WARNING", Severity::Warning);
    py::enum_<ImportKind>(m, "ImportKind")
        .value("ASL", ImportKind::AslImport)
        .value("K", ImportKind::KImport);
    py::enum_<TypeKind>(m, "TypeKind")
        .value("TYPE", TypeKind::AuxType)
        .value("CTYPE", TypeKind::CType);
    py::enum_<FuncKind>(m, "FuncKind")
        .value("FUNC", FuncKind::AuxFunc)
        .value("CFUNC", FuncKind::CFunc);
    py::enum_<RuleArrow>(m, "RuleArrow")
        .value("EQ", RuleArrow::Eq)
        .value("ARROW", RuleArrow::Arrow);

    py::class_<SourceLocation>(m, "SourceLocation")
        .def_readonly("file", &SourceLocation::file)
        .def_readonly("yaml_path", &SourceLocation::yaml_path)
        .def_readonly("line", &SourceLocation::line);

    py::class_<Diagnostic>(m, "Diagnostic")
        .def_readonly("severity", &Diagnostic::severity)
        .def_readonly("code", &Diagnostic::code)
        .def_readonly("message", &Diagnostic::message)
        .def_readonly("location", &Diagnostic::location)
        .def("__str__", [](const Diagnostic& d) { return to_string(d); });

    py::class_<ImportRef>(m, "ImportRef")
        .def_readonly("path", &ImportRef::path)
        .def_readonly("kind", &ImportRef::kind);

    py::class_<ExprText>(m, "ExprText")
        .def_readonly("text", &ExprText::text)
        .def("__str__", [](const ExprText& e) { return e.text; });

    py::class_<ConstructorExpr>(m, "ConstructorExpr")
        .def_readonly("parent", &ConstructorExpr::parent)
        .def_readonly("pattern_head", &ConstructorExpr::pattern_head)
        .def_readonly("pattern_params", &ConstructorExpr::pattern_params)
        .def_readonly("raw", &ConstructorExpr::raw)
        .def("has_pattern", &ConstructorExpr::has_pattern);

    py::class_<FunctionSig>(m, "FunctionSig")
        .def_readonly("result_sort", &FunctionSig::result_sort)
        .def_readonly("name", &FunctionSig::name)
        .def_readonly("param_sorts", &FunctionSig::param_sorts);

    py::class_<RewriteRule>(m, "RewriteRule")
        .def_readonly("lhs", &RewriteRule::lhs)
        .def_readonly("rhs", &RewriteRule::rhs)
        .def_readonly("original_arrow", &RewriteRule::original_arrow);

    py::class_<FunctionDef>(m, "FunctionDef")
        .def_readonly("signature", &FunctionDef::signature)
        .def_readonly("rules", &FunctionDef::rules);

    py::class_<TypeDecl>(m, "TypeDecl")
        .def_readonly("name", &TypeDecl::name)
        .def_readonly("kind", &TypeDecl::kind)
        .def_readonly("constructors", &TypeDecl::constructors)
        .def_readonly("functions", &TypeDecl::functions)
        .def_readonly("constructs", &TypeDecl::constructs);

    py::class_<FuncDecl>(m, "FuncDecl")
        .def_readonly("name", &FuncDecl::name)
        .def_readonly("kind", &FuncDecl::kind)
        .def_readonly("constructors", &FuncDecl::constructors)
        .def_readonly("inputs", &FuncDecl::inputs)
        .def_readonly("contracts", &FuncDecl::contracts);

    py::class_<SpecDocument>(m, "SpecDocument")
        .def_readonly("spec_id", &SpecDocument::spec_id)
        .def_readonly("target_file", &SpecDocument::target_file)
        .def_readonly("imports", &SpecDocument::imports)
        .def_readonly("types", &SpecDocument::types)
        .def_readonly("funcs", &SpecDocument::funcs)
        .def_readonly("source_name", &SpecDocument::source_name);

    py::class_<EffectiveType>(m, "EffectiveType")
        .def_readonly("decl", &EffectiveType::decl)
        .def_readonly("inherited_functions", &EffectiveType::inherited_functions)
        .def_readonly("inherited_constructs", &EffectiveType::inherited_constructs)
        .def_readonly("parents", &EffectiveType::parents);

    py::class_<EffectiveFunc>(m, "EffectiveFunc")
        .def_readonly("decl", &EffectiveFunc::decl)
        .def_readonly("inherited_contracts", &EffectiveFunc::inherited_contracts)
        .def_readonly("parents", &EffectiveFunc::parents);

    py::class_<ResolvedSpec>(m, "ResolvedSpec")
        .def_readonly("root", &ResolvedSpec::root)
        .def_readonly("k_imports", &ResolvedSpec::k_imports)
        .def_readonly("asl_inlined", &ResolvedSpec::asl_inlined)
        .def_readonly("type_order", &ResolvedSpec::type_order)
        .def_readonly("func_order", &ResolvedSpec::func_order)
        .def("type", [](const ResolvedSpec& s, const std::string& name) {
            return s.type_registry.at(name);
        })
        .def("func", [](const ResolvedSpec& s, const std::string& name) {
            return s.func_registry.at(name);
        });

    struct PyParseResult {
        std::optional<SpecDocument> document;
        std::vector<Diagnostic> diagnostics;
    };
    py::class_<PyParseResult>(m, "ParseResult")
        .def_property_readonly("document",
                               [](const PyParseResult& r) -> py::object {
                                   if (!r.document) return py::none();
                                   return py::cast(*r.document);
                               })
        .def_readonly("diagnostics", &PyParseResult::diagnostics)
        .def_property_readonly("ok",
                               [](const PyParseResult& r) { return r.document.has_value(); });

    m.def(
        "parse_spec",
        [](const std::string& text, const std::string& name) {
            Parsed<SpecDocument> parsed = parse_spec({name, text});
            return PyParseResult{std::move(parsed.value), std::move(parsed.diagnostics)};
        },
        py::arg("text"), py::arg("name"),
        "Parse and validate one ASL document given as text");

    m.def("check_document", &check_document, py::arg("document"));
    m.def("to_canonical_yaml", &to_canonical_yaml, py::arg("document"));
    m.def("uppercase_stem", &uppercase_stem, py::arg("path"));
    m.def("is_identifier", &is_identifier, py::arg("text"));
    m.def("default_output_name", &default_output_name, py::arg("spec_id"));

    m.def(
        "parse_constructor",
        [](const std::string& s) { return unwrap(parse_constructor(s)); }, py::arg("text"));
    m.def(
        "parse_function_signature",
        [](const std::string& s) { return unwrap(parse_function_signature(s)); },
        py::arg("text"));
    m.def(
        "parse_rule_line", [](const std::string& s) { return unwrap(parse_rule_line(s)); },
        py::arg("text"));

    m.def(
        "substitute_pattern",
        [](const std::string& expr, const std::string& constructor, const std::string& child) {
            ConstructorExpr ctor = unwrap(parse_constructor(constructor));
            return substitute_pattern(ExprText{expr}, ctor, child).text;
        },
        py::arg("expr"), py::arg("constructor"), py::arg("child"));

    m.def(
        "resolve",
        [](const std::string& path, const std::vector<std::string>& search_paths) {
            return resolve_file(path, search_paths);
        },
        py::arg("path"), py::arg("search_paths") = std::vector<std::string>{},
        "Load a file, resolve its imports and inheritance");

    m.def(
        "translate",
        [](const std::string& path, const std::vector<std::string>& search_paths) {
            return translate_resolved(resolve_file(path, search_paths));
        },
        py::arg("path"), py::arg("search_paths") = std::vector<std::string>{},
        "Translate a file to the text of its K module");

    m.def(
        "translate_source",
        [](const std::string& text, const std::string& name,
           const std::vector<std::string>& search_paths) {
            Parsed<SpecDocument> parsed = parse_spec({name, text});
            if (!parsed.ok()) throw py::value_error(joined_messages(parsed.diagnostics));
            Parsed<ResolvedSpec> resolved = resolve_imports(*parsed.value, search_paths);
            if (!resolved.ok()) throw py::value_error(joined_messages(resolved.diagnostics));
            return translate_resolved(*resolved.value);
        },
        py::arg("text"), py::arg("name"), py::arg("search_paths") = std::vector<std::string>{},
        "Translate ASL text to the text of its K module");

    m.def(
        "splice_contracts",
        [](const std::vector<std::string>& contracts) {
            if (contracts.empty()) {
                throw py::value_error("splice_contracts needs at least one expression");
            }
            std::vector<ExprText> exprs;
            exprs.reserve(contracts.size());
            for (const auto& c : contracts) exprs.push_back({c});
            return splice_contracts(exprs);
        },
        py::arg("contracts"));

    m.def("count_effective_lines", &count_effective_lines, py::arg("text"));
    m.def(
        "reduction_ratio",
        [](long asl_lines, long k_lines) {
            auto pct = reduction_ratio(asl_lines, k_lines);
            if (!pct) throw py::value_error("k_lines must be nonzero");
            return *pct;
        },
        py::arg("asl_lines"), py::arg("k_lines"));
    m.def(
        "aggregate_reduction",
        [](const std::vector<std::pair<long, long>>& pairs) {
            std::vector<MetricsRow> rows;
            for (const auto& [a, k] : pairs) rows.push_back({"", a, k, 0.0});
            auto pct = aggregate_reduction(rows);
            if (!pct) throw py::value_error("total K line count must be nonzero");
            return *pct;
        },
        py::arg("pairs"));
}
