#include "cgfl/augment.hpp"

#include <algorithm>
#include <sstream>

namespace cgfl {

BalanceKind balance_kind_from(const std::string& name) {
    if (name == "gan") return BalanceKind::GanContext;
    if (name == "resample") return BalanceKind::Resample;
    if (name == "undersample") return BalanceKind::Undersample;
    if (name == "none") return BalanceKind::None;
    throw InputError("unknown balance strategy '" + name + "'");
}

const char* balance_kind_name(BalanceKind kind) {
    switch (kind) {
        case BalanceKind::GanContext: return "gan";
        case BalanceKind::Resample: return "resample";
        case BalanceKind::Undersample: return "undersample";
        case BalanceKind::None: return "none";
    }
    return "none";
}

GanBalanceResult balance_with_gan(const Dataset& context_dataset,
                                  const GanConfig& config) {
    const std::size_t fails = context_dataset.fail_count();
    const std::size_t passes = context_dataset.pass_count();
    if (fails == 0) throw InputError("gan balancing needs at least one failing row");

    GanBalanceResult result;
    result.balanced.data = context_dataset;
    result.balanced.origin = BalanceKind::GanContext;
    if (fails >= passes) {
        result.balanced.warned = true;
        return result;
    }

    std::vector<std::vector<std::uint8_t>> failing_rows;
    for (std::size_t i = 0; i < context_dataset.rows.size(); ++i)
        if (context_dataset.outcomes[i] == TestOutcome::Fail)
            failing_rows.push_back(context_dataset.rows[i]);

    result.model = train_gan(failing_rows, config);
    NoiseSampler sampler(config.latent_dim, derive_seed(config.seed, "gan.sample"));
    const std::size_t needed = passes - fails;
    auto synthetic = sample_synthetic(result.model, needed, sampler);
    for (auto& row : synthetic) {
        result.balanced.synthetic_rows.push_back(result.balanced.data.rows.size());
        result.balanced.data.rows.push_back(std::move(row));
        result.balanced.data.outcomes.push_back(TestOutcome::Fail);
    }
    return result;
}

BalancedDataset resample(const Dataset& dataset) {
    const std::size_t fails = dataset.fail_count();
    const std::size_t passes = dataset.pass_count();
    if (fails == 0 || fails >= passes)
        throw InputError("resample requires 1 <= fail_count < pass_count");

    std::vector<std::size_t> failing_indices;
    for (std::size_t i = 0; i < dataset.rows.size(); ++i)
        if (dataset.outcomes[i] == TestOutcome::Fail) failing_indices.push_back(i);

    BalancedDataset result;
    result.data = dataset;
    result.origin = BalanceKind::Resample;
    for (std::size_t k = 0; k < passes - fails; ++k) {
        const std::size_t source = failing_indices[k % failing_indices.size()];
        result.synthetic_rows.push_back(result.data.rows.size());
        result.data.rows.push_back(dataset.rows[source]);
        result.data.outcomes.push_back(TestOutcome::Fail);
    }
    return result;
}

BalancedDataset undersample(const Dataset& dataset, std::uint64_t seed) {
    const std::size_t fails = dataset.fail_count();
    const std::size_t passes = dataset.pass_count();
    if (fails == 0 || fails >= passes)
        throw InputError("undersample requires 1 <= fail_count < pass_count");

    std::vector<std::size_t> passing_indices;
    for (std::size_t i = 0; i < dataset.rows.size(); ++i)
        if (dataset.outcomes[i] == TestOutcome::Pass) passing_indices.push_back(i);

    // Fisher-Yates prefix selects the rows to drop.
    Rng rng(seed);
    std::vector<std::size_t> pool = passing_indices;
    std::vector<bool> drop(dataset.rows.size(), false);
    for (std::size_t k = 0; k < passes - fails; ++k) {
        const std::size_t pick = k + rng.index(pool.size() - k);
        std::swap(pool[k], pool[pick]);
        drop[pool[k]] = true;
    }

    BalancedDataset result;
    result.origin = BalanceKind::Undersample;
    result.data.statement_ids = dataset.statement_ids;
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
        if (drop[i]) continue;
        result.data.rows.push_back(dataset.rows[i]);
        result.data.outcomes.push_back(dataset.outcomes[i]);
    }
    return result;
}

std::string synthetic_manifest_csv(const BalancedDataset& balanced) {
    std::ostringstream out;
    out << "row_index,origin\n";
    std::size_t next_synthetic = 0;
    for (std::size_t i = 0; i < balanced.data.rows.size(); ++i) {
        const bool synthetic =
            next_synthetic < balanced.synthetic_rows.size() &&
            balanced.synthetic_rows[next_synthetic] == i;
        if (synthetic) ++next_synthetic;
        out << i << ',' << (synthetic ? balance_kind_name(balanced.origin) : "original")
            << '\n';
    }
    return out.str();
}

}  // namespace cgfl
