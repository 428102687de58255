"""Python interface to the ASL compiler core.

The heavy lifting lives in the compiled ``_aslk`` extension; this package
re-exports its surface under a stable name.
"""

from ._aslk import (
    ConstructorExpr,
    Diagnostic,
    EffectiveFunc,
    EffectiveType,
    ExprText,
    FuncDecl,
    FuncKind,
    FunctionDef,
    FunctionSig,
    ImportKind,
    ImportRef,
    ParseResult,
    ResolvedSpec,
    RewriteRule,
    RuleArrow,
    Severity,
    SourceLocation,
    SpecDocument,
    TypeDecl,
    TypeKind,
    aggregate_reduction,
    check_document,
    count_effective_lines,
    default_output_name,
    is_identifier,
    parse_constructor,
    parse_function_signature,
    parse_rule_line,
    parse_spec,
    reduction_ratio,
    resolve,
    splice_contracts,
    substitute_pattern,
    to_canonical_yaml,
    translate,
    translate_source,
    uppercase_stem,
)

__all__ = [
    "ConstructorExpr",
    "Diagnostic",
    "EffectiveFunc",
    "EffectiveType",
    "ExprText",
    "FuncDecl",
    "FuncKind",
    "FunctionDef",
    "FunctionSig",
    "ImportKind",
    "ImportRef",
    "ParseResult",
    "ResolvedSpec",
    "RewriteRule",
    "RuleArrow",
    "Severity",
    "SourceLocation",
    "SpecDocument",
    "TypeDecl",
    "TypeKind",
    "aggregate_reduction",
    "check_document",
    "count_effective_lines",
    "default_output_name",
    "is_identifier",
    "parse_constructor",
    "parse_function_signature",
    "parse_rule_line",
    "parse_spec",
    "reduction_ratio",
    "resolve",
    "splice_contracts",
    "substitute_pattern",
    "to_canonical_yaml",
    "translate",
    "translate_source",
    "uppercase_stem",
]
