#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aslk/cli.hpp"

namespace {

/// Search paths come from repeated --search-path options first, then from
/// the colon-separated ASLK_SEARCH_PATH environment variable.
void append_env_search_paths(std::vector<std::string>& paths) {
    const char* env = std::getenv("ASLK_SEARCH_PATH");
    if (!env) return;
    std::string value(env);
    size_t pos = 0;
    while (pos <= value.size()) {
        size_t end = value.find(':', pos);
        if (end == std::string::npos) end = value.size();
        std::string part = value.substr(pos, end - pos);
        if (!part.empty()) paths.push_back(part);
        if (end == value.size()) break;
        pos = end + 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ASL compiler: validates ASL YAML specifications and emits K modules"};
    app.require_subcommand(1);

    std::string file;
    aslk::CliConfig cfg;
    std::string output;
    std::vector<std::string> metric_files;
    bool csv = false;

    auto add_search_path = [&](CLI::App* cmd) {
        cmd->add_option("--search-path", cfg.search_paths,
                        "Directory to resolve .yaml imports against (repeatable)");
    };

    CLI::App* check = app.add_subcommand("check", "Parse and validate a specification");
    check->add_option("file", file, "ASL file to check")->required();
    add_search_path(check);
    check->add_flag("--fail-on-warning", cfg.fail_on_warning,
                    "Exit nonzero when warnings are reported");

    CLI::App* translate = app.add_subcommand("translate", "Emit the K module for a specification");
    translate->add_option("file", file, "ASL file to translate")->required();
    add_search_path(translate);
    translate->add_option("-o,--output", output,
                          "Output path ('-' for stdout; default: <spec id lowercased>.k "
                          "next to the input)");

    CLI::App* verify = app.add_subcommand("verify", "Translate and run the external verifier");
    verify->add_option("file", file, "ASL file to verify")->required();
    add_search_path(verify);
    verify->add_option("-o,--output", output, "Path for the generated .k module");
    verify->add_option("--compile-cmd", cfg.verifier_compile_cmd,
                       "Verifier compile command template; {file} is replaced by the .k path");
    verify->add_option("--prove-cmd", cfg.verifier_prove_cmd,
                       "Verifier prove command template; {file} is replaced by the .k path");

    CLI::App* metrics = app.add_subcommand("metrics", "Report line counts and reduction ratios");
    metrics->add_option("files", metric_files,
                        "Alternating ASL and K files: a.yaml a.k [b.yaml b.k ...]");
    metrics->add_flag("--csv", csv, "Emit CSV instead of an aligned table");

    CLI11_PARSE(app, argc, argv);

    append_env_search_paths(cfg.search_paths);
    if (!output.empty()) cfg.output_path = output;

    if (check->parsed()) {
        return aslk::cmd_check(file, cfg, std::cout, std::cerr);
    }
    if (translate->parsed()) {
        return aslk::cmd_translate(file, cfg, std::cout, std::cerr);
    }
    if (verify->parsed()) {
        return aslk::cmd_verify(file, cfg, std::cout, std::cerr);
    }
    if (metrics->parsed()) {
        if (metric_files.empty() || metric_files.size() % 2 != 0) {
            std::cerr << "metrics needs an even, nonzero number of files: "
                         "one .yaml and one .k per pair\n";
            return aslk::exit_code::diagnostics;
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (size_t i = 0; i < metric_files.size(); i += 2) {
            pairs.emplace_back(metric_files[i], metric_files[i + 1]);
        }
        return aslk::cmd_metrics(pairs, csv, std::cout, std::cerr);
    }
    return aslk::exit_code::ok;
}
