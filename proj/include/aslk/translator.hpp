#ifndef ASLK_TRANSLATOR_HPP
#define ASLK_TRANSLATOR_HPP

#include <string>
#include <vector>

#include "aslk/resolver.hpp"

namespace aslk {

/// Emitted K text as an ordered list of lines. Rendering joins the lines
/// with '\n' and ends a non-empty emission with exactly one trailing newline.
struct KText {
    std::vector<std::string> lines;

    std::string to_string() const;

    void append(const KText& other) {
        lines.insert(lines.end(), other.lines.begin(), other.lines.end());
    }
};

struct EmissionConfig {
    std::string target_language_tag = "c";
    std::string module_name;  // the validated spec id
    static constexpr const char* indent = "  ";
};

/// Joins contract expressions with " andBool "; a singleton passes through
/// verbatim. Calling with an empty list is a caller bug (EMPTY_CONTRACTS).
std::string splice_contracts(const std::vector<ExprText>& contracts);

/// Emits one type block: declaration line, constructor relations plus
/// inherited function lines, own function lines, then a single constructs
/// rule splicing inherited and own constructs. Empty sections emit nothing.
KText translate_type(const EffectiveType& type, const EmissionConfig& cfg);

/// Emits one function block: declaration line, constructor relations, and a
/// claim line combining `inputs` (requires) with spliced contracts (ensures,
/// inherited first). No claim line when the function constrains nothing.
KText translate_func(const EffectiveFunc& func, const EmissionConfig& cfg);

/// Assembles the complete module: header comment naming the target, module
/// open, one imports line per .k import, a comment per inlined ASL import,
/// every type block then every func block in declaration order, endmodule.
/// Byte-deterministic.
KText assemble_module(const ResolvedSpec& spec, const EmissionConfig& cfg);

/// Default emission config for a resolved spec.
EmissionConfig emission_config_for(const ResolvedSpec& spec);

/// Default output file name: spec id lowercased plus ".k".
std::string default_output_name(const std::string& spec_id);

}  // namespace aslk

#endif
