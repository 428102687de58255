#include "aslk/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "aslk/metrics.hpp"
#include "aslk/parser.hpp"
#include "aslk/resolver.hpp"
#include "aslk/translator.hpp"

#ifndef _WIN32
#include <sys/wait.h>
#endif

namespace fs = std::filesystem;

namespace aslk {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return buf.str();
}

void print_diags(const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const auto& d : diags) err << to_string(d) << '\n';
}

/// Shared front half of check/translate/verify: read, parse, resolve.
/// Prints every diagnostic; the value is set only when all three stages
/// pass without Errors.
struct LoadResult {
    std::optional<ResolvedSpec> spec;
    bool warned = false;
    int rc = exit_code::ok;
};

LoadResult load(const std::string& file, const CliConfig& cfg, std::ostream& err) {
    LoadResult result;
    auto text = read_file(file);
    if (!text) {
        err << "error IO_ERROR " << file << ":0 cannot read file\n";
        result.rc = exit_code::io;
        return result;
    }

    Parsed<SpecDocument> parsed = parse_spec({file, *text});
    std::vector<Diagnostic> diags = parsed.diagnostics;
    Parsed<ResolvedSpec> resolved;
    if (parsed.ok()) {
        resolved = resolve_imports(*parsed.value, cfg.search_paths);
        for (auto& d : resolved.diagnostics) diags.push_back(std::move(d));
    }

    print_diags(diags, err);
    for (const auto& d : diags) {
        if (d.severity == Severity::Warning) result.warned = true;
    }
    if (has_errors(diags) || !resolved.ok()) {
        result.rc = exit_code::diagnostics;
        return result;
    }
    result.spec = std::move(*resolved.value);
    return result;
}

std::string default_output_path(const std::string& input_file, const std::string& spec_id) {
    fs::path out = fs::path(input_file).parent_path() / default_output_name(spec_id);
    return out.string();
}

/// Translates and writes the module; on success stores the output path
/// (empty when the module went to `out`).
int translate_to(const std::string& file, const CliConfig& cfg, std::ostream& out,
                 std::ostream& err, std::string& written_path) {
    LoadResult loaded = load(file, cfg, err);
    if (!loaded.spec) return loaded.rc == exit_code::ok ? exit_code::diagnostics : loaded.rc;
    if (loaded.warned && cfg.fail_on_warning) return exit_code::diagnostics;

    const std::string text =
        assemble_module(*loaded.spec, emission_config_for(*loaded.spec)).to_string();
    const std::string path =
        cfg.output_path.value_or(default_output_path(file, loaded.spec->root.spec_id));

    if (path == "-") {
        out << text;
        written_path.clear();
        return exit_code::ok;
    }
    std::ofstream sink(path, std::ios::binary);
    if (!sink) {
        err << "error IO_ERROR " << path << ":0 cannot open output file\n";
        return exit_code::io;
    }
    sink << text;
    sink.close();
    if (!sink) {
        err << "error IO_ERROR " << path << ":0 cannot write output file\n";
        return exit_code::io;
    }
    written_path = path;
    return exit_code::ok;
}

/// Substitutes the single {file} placeholder. Returns nullopt unless the
/// placeholder occurs exactly once.
std::optional<std::string> instantiate(const std::string& tmpl, const std::string& path) {
    const std::string key = "{file}";
    size_t first = tmpl.find(key);
    if (first == std::string::npos) return std::nullopt;
    if (tmpl.find(key, first + key.size()) != std::string::npos) return std::nullopt;
    return tmpl.substr(0, first) + path + tmpl.substr(first + key.size());
}

/// Runs a shell command, returning its decoded exit status. Status 127
/// (command not found) and a failed spawn both map to -1.
int run_command(const std::string& cmd) {
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
#ifdef _WIN32
    int code = status;
#else
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
#endif
    return code == 127 ? -1 : code;
}

}  // namespace

int cmd_check(const std::string& file, const CliConfig& cfg, std::ostream&, std::ostream& err) {
    LoadResult loaded = load(file, cfg, err);
    if (loaded.rc != exit_code::ok) return loaded.rc;
    if (loaded.warned && cfg.fail_on_warning) return exit_code::diagnostics;
    return exit_code::ok;
}

int cmd_translate(const std::string& file, const CliConfig& cfg, std::ostream& out,
                  std::ostream& err) {
    std::string written;
    return translate_to(file, cfg, out, err, written);
}

int cmd_verify(const std::string& file, const CliConfig& cfg, std::ostream& out,
               std::ostream& err) {
    if (cfg.verifier_compile_cmd.empty() || cfg.verifier_prove_cmd.empty()) {
        err << "verifier not configured: set both the compile and prove command templates\n";
        return exit_code::missing_tool;
    }
    auto compile_cmd = instantiate(cfg.verifier_compile_cmd, "");
    auto prove_cmd = instantiate(cfg.verifier_prove_cmd, "");
    if (!compile_cmd || !prove_cmd) {
        err << "verifier not configured: each command template must contain {file} exactly once\n";
        return exit_code::missing_tool;
    }

    CliConfig translate_cfg = cfg;
    if (translate_cfg.output_path && *translate_cfg.output_path == "-") {
        translate_cfg.output_path.reset();
    }
    std::string k_path;
    int rc = translate_to(file, translate_cfg, out, err, k_path);
    if (rc != exit_code::ok) return rc;

    int compile_rc = run_command(*instantiate(cfg.verifier_compile_cmd, k_path));
    if (compile_rc == -1) {
        err << "verifier compile command not found\n";
        return exit_code::missing_tool;
    }
    if (compile_rc != 0) return compile_rc;

    int prove_rc = run_command(*instantiate(cfg.verifier_prove_cmd, k_path));
    if (prove_rc == -1) {
        err << "verifier prove command not found\n";
        return exit_code::missing_tool;
    }
    return prove_rc;
}

int cmd_metrics(const std::vector<std::pair<std::string, std::string>>& pairs, bool csv,
                std::ostream& out, std::ostream& err) {
    if (pairs.empty()) {
        err << "error EMPTY_INPUT metrics needs at least one (asl, k) file pair\n";
        return exit_code::diagnostics;
    }

    std::vector<MetricsRow> rows;
    for (const auto& [asl_path, k_path] : pairs) {
        auto asl_text = read_file(asl_path);
        if (!asl_text) {
            err << "error IO_ERROR " << asl_path << ":0 cannot read file\n";
            return exit_code::io;
        }
        auto k_text = read_file(k_path);
        if (!k_text) {
            err << "error IO_ERROR " << k_path << ":0 cannot read file\n";
            return exit_code::io;
        }
        MetricsRow row;
        row.label = asl_path;
        row.asl_lines = count_effective_lines(*asl_text);
        row.k_lines = count_effective_lines(*k_text);
        auto pct = reduction_ratio(row.asl_lines, row.k_lines);
        if (!pct) {
            err << "error DIVISION_BY_ZERO " << k_path << ":0 no effective K lines\n";
            return exit_code::diagnostics;
        }
        row.reduction_pct = *pct;
        rows.push_back(std::move(row));
    }

    auto aggregate = aggregate_reduction(rows);
    if (!aggregate) {
        err << "error DIVISION_BY_ZERO one of the K inputs has no effective lines\n";
        return exit_code::diagnostics;
    }

    out << (csv ? format_metrics_csv(rows, *aggregate) : format_metrics_table(rows, *aggregate));
    return exit_code::ok;
}

}  // namespace aslk
