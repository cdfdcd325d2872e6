#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgfl/dataset.hpp"
#include "cgfl/gan.hpp"

namespace cgfl {

enum class BalanceKind : std::uint8_t { GanContext, Resample, Undersample, None };

BalanceKind balance_kind_from(const std::string& name);
const char* balance_kind_name(BalanceKind kind);

struct BalancedDataset {
    Dataset data;
    // Row indices (into data.rows) that were synthesized or duplicated rather
    // than taken verbatim from the input; empty for undersampling.
    std::vector<std::size_t> synthetic_rows;
    BalanceKind origin = BalanceKind::None;
    // Set when balancing was requested but the failing class was not the
    // minority, so the input passed through unchanged.
    bool warned = false;
};

// Appends GAN-synthesized failing rows to the context dataset until
// fail_count == pass_count. If the failing class is not the minority the
// input is returned unchanged with warned = true. Original rows are never
// touched. The trained model is exposed for log export.
struct GanBalanceResult {
    BalancedDataset balanced;
    GanModel model;  // untrained (empty log) when balancing was skipped
};
GanBalanceResult balance_with_gan(const Dataset& context_dataset,
                                  const GanConfig& config);

// Duplicates failing rows cyclically, in their original order, until the
// classes are equal. Requires 1 <= fail_count < pass_count.
BalancedDataset resample(const Dataset& dataset);

// Removes uniformly random passing rows (seeded) until the classes are
// equal; survivor order is preserved and failing rows are never removed.
BalancedDataset undersample(const Dataset& dataset, std::uint64_t seed);

// CSV: row_index,origin  (origin in {original, gan, resample})
std::string synthetic_manifest_csv(const BalancedDataset& balanced);

}  // namespace cgfl
