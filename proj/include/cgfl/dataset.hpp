#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cgfl/errors.hpp"

namespace cgfl {

enum class TestOutcome : std::uint8_t { Pass = 0, Fail = 1 };

// M x N binary coverage matrix with per-test outcomes. Immutable after
// construction by convention; all transformations return new datasets.
struct Dataset {
    std::vector<std::vector<std::uint8_t>> rows;  // M rows of N cells each
    std::vector<TestOutcome> outcomes;            // length M
    std::vector<int> statement_ids;               // length N, unique, ascending

    std::size_t test_count() const { return rows.size(); }
    std::size_t statement_count() const { return statement_ids.size(); }
    std::size_t fail_count() const;
    std::size_t pass_count() const { return test_count() - fail_count(); }

    // Column index of a statement id, or throws InputError.
    std::size_t column_of(int statement_id) const;

    bool operator==(const Dataset&) const = default;
};

struct FlSummary {
    std::size_t tests = 0;
    std::size_t statements = 0;
    std::size_t fail_count = 0;
    std::size_t pass_count = 0;
    bool failing_is_minority = false;
};

struct StatementSpectrum {
    std::size_t ef = 0;  // executed by failing tests
    std::size_t ep = 0;  // executed by passing tests
    std::size_t nf = 0;  // not executed, failing
    std::size_t np = 0;  // not executed, passing

    bool operator==(const StatementSpectrum&) const = default;
};

using SpectrumCounts = std::vector<StatementSpectrum>;

// Parses the matrix line format: N whitespace-separated 0/1 tokens per line
// followed by a trailing '+' (pass) or '-' (fail). '#' lines are comments;
// LF and CRLF both accepted. Throws InputError on ragged rows, foreign
// tokens, empty input, or zero statements.
Dataset parse_matrix(std::string_view text);

// Two-file mode: the matrix file holds only 0/1 tokens, the errors file one
// 0/1 token per covered row (1 = failing).
Dataset parse_matrix_with_errors(std::string_view matrix_text,
                                 std::string_view errors_text);

// Inverse of parse_matrix (single-file format).
std::string serialize_matrix(const Dataset& dataset);

// Throws InputError when there is no failing test to localize.
FlSummary validate_for_fl(const Dataset& dataset);

SpectrumCounts spectrum_counts(const Dataset& dataset);

}  // namespace cgfl
