#include "cgfl/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace cgfl {
namespace {

// Average ranks of |differences|, doubled so ties stay integral.
std::vector<long long> doubled_ranks(const std::vector<double>& abs_diffs) {
    const std::size_t n = abs_diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return abs_diffs[a] < abs_diffs[b]; });
    std::vector<long long> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && abs_diffs[order[j + 1]] == abs_diffs[order[i]]) ++j;
        // positions i+1 .. j+1 share the average rank
        const long long doubled_avg = static_cast<long long>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = doubled_avg;
        i = j + 1;
    }
    return ranks;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

std::size_t top_k(std::span<const VersionResult> results, std::size_t k) {
    if (k == 0) throw EvaluationError("top_k: K must be positive");
    std::size_t count = 0;
    for (const auto& r : results)
        if (r.first_rank <= k) ++count;
    return count;
}

double mfr(std::span<const VersionResult> results) {
    if (results.empty()) throw EvaluationError("mfr: empty version set");
    double sum = 0.0;
    for (const auto& r : results) sum += static_cast<double>(r.first_rank);
    return sum / static_cast<double>(results.size());
}

double mar(std::span<const VersionResult> results) {
    if (results.empty()) throw EvaluationError("mar: empty version set");
    double sum = 0.0;
    for (const auto& r : results) sum += r.avg_rank;
    return sum / static_cast<double>(results.size());
}

double rimp(std::span<const std::size_t> treatment_first_ranks,
            std::span<const std::size_t> baseline_first_ranks) {
    if (treatment_first_ranks.empty() ||
        treatment_first_ranks.size() != baseline_first_ranks.size())
        throw EvaluationError("rimp: version sets must be nonempty and aligned");
    const auto sum = [](std::span<const std::size_t> v) {
        std::size_t s = 0;
        for (auto x : v) s += x;
        return s;
    };
    const std::size_t base = sum(baseline_first_ranks);
    if (base == 0) throw EvaluationError("rimp: baseline rank sum is zero");
    return 100.0 * static_cast<double>(sum(treatment_first_ranks)) /
           static_cast<double>(base);
}

WilcoxonResult wilcoxon_signed_rank(
    std::span<const std::pair<double, double>> pairs, bool force_normal) {
    std::vector<double> abs_diffs;
    std::vector<bool> positive;
    for (const auto& [treatment, baseline] : pairs) {
        const double d = treatment - baseline;
        if (d == 0.0) continue;  // classic zero-difference drop
        abs_diffs.push_back(std::fabs(d));
        positive.push_back(d > 0.0);
    }
    const std::size_t n = abs_diffs.size();
    if (n == 0)
        throw EvaluationError("wilcoxon: all differences are zero");

    const auto ranks2 = doubled_ranks(abs_diffs);  // doubled average ranks
    long long w_plus2 = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (positive[i]) w_plus2 += ranks2[i];

    WilcoxonResult result;
    result.nonzero = n;
    if (!force_normal && n <= 25) {
        // Count sign assignments by achievable doubled rank sum.
        const long long total2 = std::accumulate(ranks2.begin(), ranks2.end(), 0LL);
        std::vector<double> count(static_cast<std::size_t>(total2) + 1, 0.0);
        count[0] = 1.0;
        for (long long r : ranks2)
            for (long long s = total2; s >= r; --s)
                count[static_cast<std::size_t>(s)] +=
                    count[static_cast<std::size_t>(s - r)];
        const double universe = std::pow(2.0, static_cast<double>(n));
        double ge = 0.0, le = 0.0;
        for (long long s = 0; s <= total2; ++s) {
            const double c = count[static_cast<std::size_t>(s)];
            if (s >= w_plus2) ge += c;
            if (s <= w_plus2) le += c;
        }
        result.greater = ge / universe;
        result.less = le / universe;
        result.exact = true;
    } else {
        const double w = static_cast<double>(w_plus2) / 2.0;
        const double mean = static_cast<double>(
                                std::accumulate(ranks2.begin(), ranks2.end(), 0LL)) /
                            4.0;
        double var = 0.0;
        for (long long r : ranks2) {
            const double rd = static_cast<double>(r) / 2.0;
            var += rd * rd;
        }
        var /= 4.0;
        const double sd = std::sqrt(var);
        result.greater = 1.0 - normal_cdf((w - 0.5 - mean) / sd);
        result.less = normal_cdf((w + 0.5 - mean) / sd);
        result.exact = false;
    }
    result.two_sided = std::min(1.0, 2.0 * std::min(result.greater, result.less));
    return result;
}

EvaluationReport make_report(std::vector<VersionResult> versions) {
    for (const auto& v : versions) {
        if (v.first_rank < 1 ||
            static_cast<double>(v.first_rank) > v.avg_rank + 1e-12)
            throw EvaluationError("version " + v.version +
                                  ": invalid first/avg rank pair");
    }
    EvaluationReport report;
    report.versions = std::move(versions);
    report.top1 = top_k(report.versions, 1);
    report.top5 = top_k(report.versions, 5);
    report.top10 = top_k(report.versions, 10);
    report.mfr = mfr(report.versions);
    report.mar = mar(report.versions);
    return report;
}

std::string report_json(const EvaluationReport& report) {
    nlohmann::json j;
    j["versions"] = nlohmann::json::array();
    for (const auto& v : report.versions)
        j["versions"].push_back({{"version", v.version},
                                 {"first_rank", v.first_rank},
                                 {"avg_rank", v.avg_rank}});
    j["top1"] = report.top1;
    j["top5"] = report.top5;
    j["top10"] = report.top10;
    j["mfr"] = report.mfr;
    j["mar"] = report.mar;
    if (report.rimp) j["rimp"] = *report.rimp;
    if (report.wilcoxon) {
        j["wilcoxon"] = {{"greater", report.wilcoxon->greater},
                         {"less", report.wilcoxon->less},
                         {"two_sided", report.wilcoxon->two_sided},
                         {"nonzero", report.wilcoxon->nonzero},
                         {"exact", report.wilcoxon->exact}};
    }
    return j.dump(2) + "\n";
}

std::string report_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "version,first_rank,avg_rank\n";
    for (const auto& v : report.versions)
        out << v.version << ',' << v.first_rank << ',' << v.avg_rank << '\n';
    return out.str();
}

BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) throw EvaluationError("box_stats: no values");
    std::sort(values.begin(), values.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75),
            values.back()};
}

std::string box_stats_csv(
    const std::vector<std::pair<std::string, BoxStats>>& rows) {
    std::ostringstream out;
    out << "method,min,q1,median,q3,max\n";
    for (const auto& [method, stats] : rows)
        out << method << ',' << stats.min << ',' << stats.q1 << ','
            << stats.median << ',' << stats.q3 << ',' << stats.max << '\n';
    return out.str();
}

}  // namespace cgfl
