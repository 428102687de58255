#ifndef ASLK_METRICS_HPP
#define ASLK_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

namespace aslk {

struct MetricsRow {
    std::string label;
    long asl_lines = 0;
    long k_lines = 0;
    double reduction_pct = 0.0;  // round-half-up at 2 decimals
};

/// Lines that are non-empty after trimming and are not comment-only
/// (leading "//" or "#").
long count_effective_lines(const std::string& text);

/// round_half_up(100 * (1 - asl/k), 2); nullopt when k is zero.
std::optional<double> reduction_ratio(long asl_lines, long k_lines);

/// Line-weighted aggregate: round_half_up(100 * (1 - sum(asl)/sum(k)), 2).
/// Not the mean of the per-row percentages. nullopt on empty input or a
/// zero K total.
std::optional<double> aggregate_reduction(const std::vector<MetricsRow>& rows);

/// Aligned plain-text table, one row per entry plus a "total" row.
std::string format_metrics_table(const std::vector<MetricsRow>& rows, double aggregate);

/// Machine-readable form: label,asl_lines,k_lines,reduction_pct.
std::string format_metrics_csv(const std::vector<MetricsRow>& rows, double aggregate);

}  // namespace aslk

#endif
