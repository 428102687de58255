#include "aslk/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string_view>

namespace aslk {

namespace {

double round_half_up_2(double x) {
    return std::floor(x * 100.0 + 0.5) / 100.0;
}

std::string_view trim_view(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string format_pct(double pct) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << pct;
    return out.str();
}

}  // namespace

long count_effective_lines(const std::string& text) {
    long count = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line = trim_view(std::string_view(text).substr(pos, end - pos));
        if (!line.empty() && line.substr(0, 2) != "//" && line[0] != '#') ++count;
        if (end == text.size()) break;
        pos = end + 1;
    }
    return count;
}

std::optional<double> reduction_ratio(long asl_lines, long k_lines) {
    if (k_lines == 0) return std::nullopt;
    double raw = 100.0 * (1.0 - static_cast<double>(asl_lines) / static_cast<double>(k_lines));
    return round_half_up_2(raw);
}

std::optional<double> aggregate_reduction(const std::vector<MetricsRow>& rows) {
    if (rows.empty()) return std::nullopt;
    long asl_total = 0;
    long k_total = 0;
    for (const auto& row : rows) {
        asl_total += row.asl_lines;
        k_total += row.k_lines;
    }
    return reduction_ratio(asl_total, k_total);
}

std::string format_metrics_table(const std::vector<MetricsRow>& rows, double aggregate) {
    const std::string h0 = "Label";
    const std::string h1 = "Code Lines(ASL)";
    const std::string h2 = "Code Lines(K)";
    const std::string h3 = "Reduction Ratio(%)";

    size_t label_width = std::max(h0.size(), std::string("total").size());
    long asl_total = 0;
    long k_total = 0;
    for (const auto& row : rows) {
        label_width = std::max(label_width, row.label.size());
        asl_total += row.asl_lines;
        k_total += row.k_lines;
    }

    std::ostringstream out;
    auto line = [&](const std::string& label, const std::string& asl, const std::string& k,
                    const std::string& pct) {
        out << std::left << std::setw(static_cast<int>(label_width)) << label;
        out << "  " << std::right << std::setw(static_cast<int>(h1.size())) << asl;
        out << "  " << std::right << std::setw(static_cast<int>(h2.size())) << k;
        out << "  " << std::right << std::setw(static_cast<int>(h3.size())) << pct;
        out << '\n';
    };

    line(h0, h1, h2, h3);
    for (const auto& row : rows) {
        line(row.label, std::to_string(row.asl_lines), std::to_string(row.k_lines),
             format_pct(row.reduction_pct));
    }
    line("total", std::to_string(asl_total), std::to_string(k_total), format_pct(aggregate));
    return out.str();
}

std::string format_metrics_csv(const std::vector<MetricsRow>& rows, double aggregate) {
    std::ostringstream out;
    out << "label,asl_lines,k_lines,reduction_pct\n";
    long asl_total = 0;
    long k_total = 0;
    for (const auto& row : rows) {
        asl_total += row.asl_lines;
        k_total += row.k_lines;
        out << row.label << ',' << row.asl_lines << ',' << row.k_lines << ','
            << format_pct(row.reduction_pct) << '\n';
    }
    out << "total," << asl_total << ',' << k_total << ',' << format_pct(aggregate) << '\n';
    return out.str();
}

}  // namespace aslk
