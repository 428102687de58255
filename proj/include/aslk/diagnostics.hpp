#ifndef ASLK_DIAGNOSTICS_HPP
#define ASLK_DIAGNOSTICS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aslk {

enum class Severity { Error, Warning };

/// Where a diagnostic points: source file, YAML node path (e.g. "types[0].is")
/// and a 1-based line number (0 = unknown).
struct SourceLocation {
    std::string file;
    std::string yaml_path;
    int line = 0;
};

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    SourceLocation location;

    static Diagnostic error(std::string code, std::string message, SourceLocation loc = {}) {
        return Diagnostic{Severity::Error, std::move(code), std::move(message), std::move(loc)};
    }
    static Diagnostic warning(std::string code, std::string message, SourceLocation loc = {}) {
        return Diagnostic{Severity::Warning, std::move(code), std::move(message), std::move(loc)};
    }
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
        if (d.severity == Severity::Error) return true;
    }
    return false;
}

/// Renders "severity code file:line message", the line format cmd_check prints.
std::string to_string(const Diagnostic& diag);

/// Outcome of an operation that either yields a value or diagnostics.
/// Warnings may accompany a value; any Error leaves value empty.
template <typename T>
struct Parsed {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return value.has_value(); }

    void add(Diagnostic d) { diagnostics.push_back(std::move(d)); }
    void merge(std::vector<Diagnostic> ds) {
        for (auto& d : ds) diagnostics.push_back(std::move(d));
    }
};

}  // namespace aslk

#endif
