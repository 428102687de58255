#ifndef ASLK_PARSER_HPP
#define ASLK_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "aslk/diagnostics.hpp"
#include "aslk/model.hpp"

namespace aslk {

/// One ASL input: UTF-8 YAML text plus the name it was loaded from.
struct SourceFile {
    std::string name;
    std::string text;
};

/// Bracket-balance scan over `(` `)` and `{` `}`. `depth[i]` is the nesting
/// level of character i (0 = top level); closers sit at the depth of their
/// opener's body minus one, i.e. a top-level `)` never occurs in a balanced
/// string. `error` is set to UNBALANCED_DELIMITER with the failing index.
struct BalanceScan {
    std::vector<int> depth;
    std::optional<Diagnostic> error;

    bool ok() const { return !error.has_value(); }
};

BalanceScan scan_balanced(std::string_view s);

/// Parses `Parent` or `Parent<head(v1::Sort1,...,vn::Sortn)>`.
Parsed<ConstructorExpr> parse_constructor(const std::string& s);

/// Parses `ResultSort name(Sort1, ..., Sortn)`; n may be zero.
Parsed<FunctionSig> parse_function_signature(const std::string& s);

/// Splits a rule at the first top-level `=>`, falling back to the first
/// top-level `=` that is not part of `==`, `<=`, `>=`, `!=` or `=>`. A rule
/// with further top-level separators after the split is rejected: emitted K
/// must not carry a bare top-level `=`.
Parsed<RewriteRule> parse_rule_line(const std::string& s);

/// Full pipeline for one file: YAML layer, node grammar, micro-grammars,
/// then check_document. Any Error leaves the value empty.
Parsed<SpecDocument> parse_spec(const SourceFile& src);

}  // namespace aslk

#endif
