#include "aslk/translator.hpp"

#include <cctype>
#include <stdexcept>

namespace aslk {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

/// The argument pattern a constructor contributes to its relation rule:
/// the text between the angle brackets, or the free pattern "X:K" when the
/// parent was named bare.
std::string relation_pattern(const ConstructorExpr& ctor) {
    if (!ctor.has_pattern()) return "X:K";
    size_t lt = ctor.raw.find('<');
    size_t gt = ctor.raw.rfind('>');
    return trim(ctor.raw.substr(lt + 1, gt - lt - 1));
}

std::string relation_rule(const std::string& name, const ConstructorExpr& ctor) {
    const std::string pattern = relation_pattern(ctor);
    return "rule " + name + "(" + pattern + ") => " + ctor.parent + "(" + pattern +
           ") [constructor]";
}

std::string marker_attribute(const EmissionConfig& cfg) {
    return cfg.target_language_tag + "target";
}

void emit_function(KText& out, const FunctionDef& def) {
    const FunctionSig& sig = def.signature;
    std::string params = join(sig.param_sorts, ", ");
    params = params.empty() ? " " : " " + params + " ";
    out.lines.push_back("syntax " + sig.result_sort + " ::= \"" + sig.name + "\" \"(\"" +
                        params + "\")\" [function]");
    for (const auto& rule : def.rules) {
        out.lines.push_back("rule " + rule.lhs.text + " => " + rule.rhs.text);
    }
}

}  // namespace

std::string KText::to_string() const {
    if (lines.empty()) return {};
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

std::string splice_contracts(const std::vector<ExprText>& contracts) {
    if (contracts.empty()) {
        throw std::invalid_argument("EMPTY_CONTRACTS: splice_contracts needs at least one expression");
    }
    std::string out = contracts.front().text;
    for (size_t i = 1; i < contracts.size(); ++i) {
        out += " andBool ";
        out += contracts[i].text;
    }
    return out;
}

KText translate_type(const EffectiveType& type, const EmissionConfig& cfg) {
    KText out;
    const TypeDecl& decl = type.decl;

    std::string attrs = "function";
    if (decl.kind == TypeKind::CType) attrs += ", " + marker_attribute(cfg);
    out.lines.push_back("syntax Bool ::= \"" + decl.name + "\" \"(\" K \")\" [" + attrs + "]");

    for (const auto& ctor : decl.constructors) {
        out.lines.push_back(relation_rule(decl.name, ctor));
    }
    for (const auto& def : type.inherited_functions) {
        emit_function(out, def);
    }
    for (const auto& def : decl.functions) {
        emit_function(out, def);
    }

    std::vector<ExprText> constructs = type.inherited_constructs;
    constructs.insert(constructs.end(), decl.constructs.begin(), decl.constructs.end());
    if (!constructs.empty()) {
        out.lines.push_back("rule " + decl.name + "Constructs => " +
                            splice_contracts(constructs));
    }
    return out;
}

KText translate_func(const EffectiveFunc& func, const EmissionConfig& cfg) {
    KText out;
    const FuncDecl& decl = func.decl;

    std::string attrs = "klabel(" + decl.name + ")";
    if (decl.kind == FuncKind::CFunc) attrs += ", " + marker_attribute(cfg);
    out.lines.push_back("syntax KItem ::= \"" + decl.name + "\" [" + attrs + "]");

    for (const auto& ctor : decl.constructors) {
        out.lines.push_back(relation_rule(decl.name, ctor));
    }

    std::vector<ExprText> contracts = func.inherited_contracts;
    contracts.insert(contracts.end(), decl.contracts.begin(), decl.contracts.end());
    if (decl.inputs || !contracts.empty()) {
        std::string claim = "claim " + decl.name + " => ?RESULT:K";
        if (decl.inputs) claim += " requires " + decl.inputs->text;
        if (!contracts.empty()) claim += " ensures " + splice_contracts(contracts);
        out.lines.push_back(claim);
    }
    return out;
}

KText assemble_module(const ResolvedSpec& spec, const EmissionConfig& cfg) {
    KText out;
    out.lines.push_back("// K specification for " + spec.root.target_file);
    out.lines.push_back("module " + cfg.module_name);

    const std::string indent = EmissionConfig::indent;
    for (const auto& path : spec.k_imports) {
        out.lines.push_back(indent + "imports " + uppercase_stem(path));
    }
    for (const auto& stem : spec.asl_inlined) {
        out.lines.push_back(indent + "// inlined: " + stem);
    }

    auto emit_block = [&](const KText& block) {
        for (const auto& line : block.lines) out.lines.push_back(indent + line);
    };
    for (const auto& name : spec.type_order) {
        emit_block(translate_type(spec.type_registry.at(name), cfg));
    }
    for (const auto& name : spec.func_order) {
        emit_block(translate_func(spec.func_registry.at(name), cfg));
    }

    out.lines.push_back("endmodule");
    return out;
}

EmissionConfig emission_config_for(const ResolvedSpec& spec) {
    EmissionConfig cfg;
    cfg.module_name = spec.root.spec_id;
    return cfg;
}

std::string default_output_name(const std::string& spec_id) {
    std::string stem = spec_id;
    for (char& c : stem) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return stem + ".k";
}

}  // namespace aslk
