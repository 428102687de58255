#include <doctest.h>

#include <stdexcept>

#include "aslk/parser.hpp"
#include "aslk/translator.hpp"
#include "test_support.hpp"

using namespace aslk;

namespace {

ResolvedSpec resolve_fixture(const std::string& name) {
    auto path = aslk_test::fixture_dir() / name;
    auto parsed = parse_spec({path.string(), aslk_test::read_file(path)});
    REQUIRE(parsed.ok());
    auto resolved = resolve_imports(*parsed.value, {});
    REQUIRE(resolved.ok());
    return *resolved.value;
}

std::string translate_fixture(const std::string& name) {
    ResolvedSpec spec = resolve_fixture(name);
    return assemble_module(spec, emission_config_for(spec)).to_string();
}

}  // namespace

TEST_CASE("KText renders lines with one trailing newline") {
    KText empty;
    CHECK(empty.to_string() == "");
    KText text;
    text.lines = {"a", "b"};
    CHECK(text.to_string() == "a\nb\n");
}

TEST_CASE("splice_contracts joins with the boolean conjunction") {
    CHECK(splice_contracts({{"a"}}) == "a");
    CHECK(splice_contracts({{"a"}, {"b >=Int 0"}, {"c"}}) == "a andBool b >=Int 0 andBool c");
    CHECK_THROWS_AS(splice_contracts({}), std::invalid_argument);
}

TEST_CASE("translate_type emits the example type block") {
    ResolvedSpec spec = resolve_fixture("example.yaml");
    KText block = translate_type(spec.type_registry.at("HTree"), emission_config_for(spec));
    REQUIRE(block.lines.size() == 5);
    CHECK(block.lines[0] == "syntax Bool ::= \"HTree\" \"(\" K \")\" [function]");
    CHECK(block.lines[1] ==
          "rule HTree(htree(V::Int,Height::Int)) => BinaryTree(htree(V::Int,Height::Int)) "
          "[constructor]");
    CHECK(block.lines[2] == "syntax IntSet ::= \"tree_keys\" \"(\" HTree \")\" [function]");
    CHECK(block.lines[3] ==
          "rule tree_keys(node(htree(V,Height),T0,T1)) => {V} U (tree_keys(T0) U "
          "tree_keys(T1))");
    CHECK(block.lines[4] == "rule tree_keys(leaf) => .IntSet");
}

TEST_CASE("translate_type marks ctype declarations and renders bare parents") {
    EffectiveType eff;
    eff.decl.name = "Buf";
    eff.decl.kind = TypeKind::CType;
    auto parsed = parse_constructor("Array");
    REQUIRE(parsed.ok());
    eff.decl.constructors.push_back(*parsed.value);
    KText block = translate_type(eff, EmissionConfig{});
    REQUIRE(block.lines.size() == 2);
    CHECK(block.lines[0] == "syntax Bool ::= \"Buf\" \"(\" K \")\" [function, ctarget]");
    CHECK(block.lines[1] == "rule Buf(X:K) => Array(X:K) [constructor]");
}

TEST_CASE("translate_type emits zero-parameter functions with adjacent parens") {
    EffectiveType eff;
    eff.decl.name = "T";
    FunctionDef def;
    auto sig = parse_function_signature("Int zero()");
    REQUIRE(sig.ok());
    def.signature = *sig.value;
    auto rule = parse_rule_line("zero() = 0");
    REQUIRE(rule.ok());
    def.rules.push_back(*rule.value);
    eff.decl.functions.push_back(def);
    KText block = translate_type(eff, EmissionConfig{});
    REQUIRE(block.lines.size() == 3);
    CHECK(block.lines[1] == "syntax Int ::= \"zero\" \"(\" \")\" [function]");
    CHECK(block.lines[2] == "rule zero() => 0");
}

TEST_CASE("translate_type splices inherited constructs before own ones") {
    EffectiveType eff;
    eff.decl.name = "T";
    eff.inherited_constructs = {{"p(T)"}};
    eff.decl.constructs = {{"q(T)"}};
    KText block = translate_type(eff, EmissionConfig{});
    REQUIRE(block.lines.size() == 2);
    CHECK(block.lines[1] == "rule TConstructs => p(T) andBool q(T)");
}

TEST_CASE("translate_type omits empty sections entirely") {
    EffectiveType eff;
    eff.decl.name = "Plain";
    KText block = translate_type(eff, EmissionConfig{});
    REQUIRE(block.lines.size() == 1);
    CHECK(block.lines[0] == "syntax Bool ::= \"Plain\" \"(\" K \")\" [function]");
}

TEST_CASE("translate_func emits declaration, relation and claim") {
    ResolvedSpec spec = resolve_fixture("example.yaml");
    KText block = translate_func(spec.func_registry.at("insert"), emission_config_for(spec));
    REQUIRE(block.lines.size() == 2);
    CHECK(block.lines[0] == "syntax KItem ::= \"insert\" [klabel(insert), ctarget]");
    CHECK(block.lines[1] ==
          "claim insert => ?RESULT:K requires HTree(T1) andBool min(t(.Set,int)) < Int V:Int "
          "andBool V:Int <= Int max(t(.Set,int)) ensures Htree(?T2) andBool tree_keys(?T2) == "
          "K{V} U tree_keys(T1)");
}

TEST_CASE("translate_func claim renders requires and ensures independently") {
    EffectiveFunc inputs_only;
    inputs_only.decl.name = "f";
    inputs_only.decl.inputs = ExprText{"A(x)"};
    KText a = translate_func(inputs_only, EmissionConfig{});
    REQUIRE(a.lines.size() == 2);
    CHECK(a.lines[0] == "syntax KItem ::= \"f\" [klabel(f)]");
    CHECK(a.lines[1] == "claim f => ?RESULT:K requires A(x)");

    EffectiveFunc contracts_only;
    contracts_only.decl.name = "g";
    contracts_only.decl.contracts = {{"B(?y)"}};
    KText b = translate_func(contracts_only, EmissionConfig{});
    REQUIRE(b.lines.size() == 2);
    CHECK(b.lines[1] == "claim g => ?RESULT:K ensures B(?y)");

    EffectiveFunc bare;
    bare.decl.name = "h";
    KText c = translate_func(bare, EmissionConfig{});
    REQUIRE(c.lines.size() == 1);
    CHECK(c.lines[0] == "syntax KItem ::= \"h\" [klabel(h)]");
}

TEST_CASE("assemble_module reproduces the example golden file") {
    CHECK(translate_fixture("example.yaml") ==
          aslk_test::read_file(aslk_test::golden_dir() / "example.k"));
}

TEST_CASE("assemble_module reproduces the inheritance golden file") {
    CHECK(translate_fixture("shapes.yaml") ==
          aslk_test::read_file(aslk_test::golden_dir() / "shapes.k"));
}

TEST_CASE("assemble_module on an empty document is just the frame") {
    auto parsed = parse_spec({"t.yaml", "spec: T\nfor: t.c\n"});
    REQUIRE(parsed.ok());
    auto resolved = resolve_imports(*parsed.value, {});
    REQUIRE(resolved.ok());
    KText module = assemble_module(*resolved.value, emission_config_for(*resolved.value));
    REQUIRE(module.lines.size() == 3);
    CHECK(module.lines[0] == "// K specification for t.c");
    CHECK(module.lines[1] == "module T");
    CHECK(module.lines[2] == "endmodule");
}

TEST_CASE("assemble_module is deterministic across runs") {
    CHECK(translate_fixture("shapes.yaml") == translate_fixture("shapes.yaml"));
}

TEST_CASE("default_output_name lowercases the spec id") {
    CHECK(default_output_name("EXAMPLE") == "example.k");
    CHECK(default_output_name("A_B-C") == "a_b-c.k");
}
