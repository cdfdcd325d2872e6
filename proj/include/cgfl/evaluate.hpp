#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cgfl/errors.hpp"

namespace cgfl {

struct FaultSpec {
    std::string version;
    std::vector<int> faulty_statements;  // nonempty
};

struct VersionResult {
    std::string version;
    std::size_t first_rank = 0;  // minimum rank over faulty statements
    double avg_rank = 0.0;       // mean rank over faulty statements
};

enum class Alternative : std::uint8_t { Greater, Less, TwoSided };

struct WilcoxonResult {
    double greater = 1.0;
    double less = 1.0;
    double two_sided = 1.0;
    std::size_t nonzero = 0;
    bool exact = false;
};

struct EvaluationReport {
    std::vector<VersionResult> versions;
    std::size_t top1 = 0;
    std::size_t top5 = 0;
    std::size_t top10 = 0;
    double mfr = 0.0;
    double mar = 0.0;
    std::optional<double> rimp;  // vs a baseline, percent
    std::optional<WilcoxonResult> wilcoxon;
};

// Number of versions whose best faulty-statement rank is within K.
std::size_t top_k(std::span<const VersionResult> results, std::size_t k);

double mfr(std::span<const VersionResult> results);  // mean first rank
double mar(std::span<const VersionResult> results);  // mean average rank

// 100 * sum(treatment first ranks) / sum(baseline first ranks).
double rimp(std::span<const std::size_t> treatment_first_ranks,
            std::span<const std::size_t> baseline_first_ranks);

// Paired Wilcoxon signed-rank test on (treatment, baseline) pairs. Zero
// differences are dropped; ties in |difference| get average ranks. Exact
// sign-enumeration p-values for up to 25 nonzero differences (or always,
// unless force_normal), normal approximation with continuity correction
// beyond that.
WilcoxonResult wilcoxon_signed_rank(
    std::span<const std::pair<double, double>> pairs, bool force_normal = false);

EvaluationReport make_report(std::vector<VersionResult> versions);

std::string report_json(const EvaluationReport& report);
std::string report_csv(const EvaluationReport& report);  // flat per-version

// Box-plot quartile rows (method,min,q1,median,q3,max) for plot exports.
struct BoxStats {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};
BoxStats box_stats(std::vector<double> values);
std::string box_stats_csv(
    const std::vector<std::pair<std::string, BoxStats>>& rows);

}  // namespace cgfl
