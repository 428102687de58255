#ifndef ASLK_CLI_HPP
#define ASLK_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aslk {

// Exit codes shared by every subcommand. Disjoint and stable.
namespace exit_code {
inline constexpr int ok = 0;           // success
inline constexpr int diagnostics = 1;  // validation or verification failure
inline constexpr int io = 2;           // unreadable input / unwritable output
inline constexpr int missing_tool = 3; // external verifier absent or not configured
}  // namespace exit_code

struct CliConfig {
    std::vector<std::string> search_paths;
    std::optional<std::string> output_path;
    std::string verifier_compile_cmd;  // template with {file}; empty = unset
    std::string verifier_prove_cmd;
    bool fail_on_warning = false;
};

/// parse -> validate -> resolve; diagnostics go to `err` one per line as
/// "severity code file:line message".
int cmd_check(const std::string& file, const CliConfig& cfg, std::ostream& out,
              std::ostream& err);

/// Translates `file` and writes the module to cfg.output_path (default:
/// sibling file named after the lowercased spec id; "-" writes to `out`).
int cmd_translate(const std::string& file, const CliConfig& cfg, std::ostream& out,
                  std::ostream& err);

/// Translates, then substitutes the generated .k path for {file} in the
/// compile and prove command templates and runs them in order. Exits with
/// the prove command's status; a missing tool (shell status 127) or an
/// unconfigured template exits 3.
int cmd_verify(const std::string& file, const CliConfig& cfg, std::ostream& out,
               std::ostream& err);

/// One metrics row per (asl, k) file pair plus the line-weighted aggregate,
/// as an aligned table or CSV.
int cmd_metrics(const std::vector<std::pair<std::string, std::string>>& pairs, bool csv,
                std::ostream& out, std::ostream& err);

}  // namespace aslk

#endif
