#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cgfl/dataset.hpp"
#include "cgfl/neural.hpp"

namespace cgfl {

enum class SflFormula : std::uint8_t { Ochiai, DStar, Barinel, GP02 };

SflFormula formula_from(const std::string& name);
const char* formula_name(SflFormula formula);

constexpr double kScoreInfinity = std::numeric_limits<double>::infinity();

// Per-statement suspiciousness. Guards: Ochiai/Barinel yield 0 on a zero
// denominator; DStar yields +inf when a_ep + a_nf = 0 with a_ef > 0, and 0
// whenever a_ef = 0. The DStar exponent is 2.
std::vector<double> sfl_score(SflFormula formula, const SpectrumCounts& counts);

struct RankedStatement {
    int statement = 0;
    double score = 0.0;
    std::size_t rank = 0;  // worst-case tie rank
};

// Worst-case tie ranks: rank(s) = #{t : score(t) > score(s)} + #{ties}.
std::vector<std::size_t> rank(std::span<const double> scores);

// Full listing in descending score, ascending statement id among ties.
std::vector<RankedStatement> ranked_listing(const std::vector<int>& statement_ids,
                                            std::span<const double> scores);

// Full-program ranking from a context-restricted scoring: context statements
// keep their scores, every other statement gets an effective -inf and is
// listed after the context block in ascending id order.
std::vector<RankedStatement> full_program_ranking(
    const std::vector<int>& context_ids, std::span<const double> context_scores,
    const std::vector<int>& all_statement_ids);

// CSV: statement,score,rank  (descending score)
std::string ranking_csv(const std::vector<RankedStatement>& listing);

// Perceptron fault localizer: width -> 64 (ReLU) -> 1 (Sigmoid), BCE on
// (coverage row -> outcome) pairs, mini-batched, seeded SGD. A single-class
// dataset trains anyway (the degenerate-input warning is the caller's to
// surface); fail_count == 0 still requires validate_for_fl upstream.
DenseNet mlp_train(const Dataset& dataset, const TrainConfig& config);

// Suspiciousness of statement j = model output on the j-th one-hot vector.
std::vector<double> mlp_suspiciousness(const DenseNet& model,
                                       std::size_t statement_count);

}  // namespace cgfl
