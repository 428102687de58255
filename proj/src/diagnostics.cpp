#include "aslk/diagnostics.hpp"

#include <sstream>

namespace aslk {

std::string to_string(const Diagnostic& diag) {
    std::ostringstream out;
    out << (diag.severity == Severity::Error ? "error" : "warning");
    out << ' ' << diag.code;
    if (!diag.location.file.empty() || diag.location.line > 0) {
        out << ' ' << diag.location.file << ':' << diag.location.line;
    }
    out << ' ' << diag.message;
    if (!diag.location.yaml_path.empty()) {
        out << " (at " << diag.location.yaml_path << ')';
    }
    return out.str();
}

}  // namespace aslk
