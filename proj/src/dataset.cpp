#include "cgfl/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cgfl {
namespace {

std::vector<std::vector<std::string>> tokenize_lines(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::string current;
    std::istringstream stream{std::string(text)};
    while (std::getline(stream, current)) {
        if (!current.empty() && current.back() == '\r') current.pop_back();
        const auto first = current.find_first_not_of(" \t");
        if (first == std::string::npos || current[first] == '#') continue;
        std::istringstream line(current);
        std::vector<std::string> tokens;
        std::string tok;
        while (line >> tok) tokens.push_back(tok);
        lines.push_back(std::move(tokens));
    }
    return lines;
}

std::uint8_t parse_bit(const std::string& tok, std::size_t line_no) {
    if (tok == "0") return 0;
    if (tok == "1") return 1;
    throw InputError("line " + std::to_string(line_no) +
                     ": expected 0/1 coverage token, got '" + tok + "'");
}

}  // namespace

std::size_t Dataset::fail_count() const {
    return static_cast<std::size_t>(
        std::count(outcomes.begin(), outcomes.end(), TestOutcome::Fail));
}

std::size_t Dataset::column_of(int statement_id) const {
    const auto it = std::lower_bound(statement_ids.begin(), statement_ids.end(),
                                     statement_id);
    if (it == statement_ids.end() || *it != statement_id)
        throw InputError("unknown statement id " + std::to_string(statement_id));
    return static_cast<std::size_t>(it - statement_ids.begin());
}

Dataset parse_matrix(std::string_view text) {
    const auto lines = tokenize_lines(text);
    if (lines.empty()) throw InputError("empty coverage matrix");

    Dataset ds;
    std::size_t width = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& tokens = lines[i];
        if (tokens.size() < 2)
            throw InputError("line " + std::to_string(i + 1) +
                             ": need at least one coverage bit and an outcome");
        if (width == 0) width = tokens.size();
        if (tokens.size() != width)
            throw InputError("line " + std::to_string(i + 1) + ": ragged row (" +
                             std::to_string(tokens.size()) + " tokens, expected " +
                             std::to_string(width) + ")");
        const std::string& last = tokens.back();
        if (last == "+")
            ds.outcomes.push_back(TestOutcome::Pass);
        else if (last == "-")
            ds.outcomes.push_back(TestOutcome::Fail);
        else
            throw InputError("line " + std::to_string(i + 1) +
                             ": expected trailing +/- outcome, got '" + last + "'");
        std::vector<std::uint8_t> row;
        row.reserve(width - 1);
        for (std::size_t j = 0; j + 1 < tokens.size(); ++j)
            row.push_back(parse_bit(tokens[j], i + 1));
        ds.rows.push_back(std::move(row));
    }
    ds.statement_ids.resize(width - 1);
    std::iota(ds.statement_ids.begin(), ds.statement_ids.end(), 1);
    return ds;
}

Dataset parse_matrix_with_errors(std::string_view matrix_text,
                                 std::string_view errors_text) {
    const auto lines = tokenize_lines(matrix_text);
    if (lines.empty()) throw InputError("empty coverage matrix");

    Dataset ds;
    std::size_t width = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& tokens = lines[i];
        if (width == 0) width = tokens.size();
        if (tokens.empty()) throw InputError("zero statements");
        if (tokens.size() != width)
            throw InputError("line " + std::to_string(i + 1) + ": ragged row");
        std::vector<std::uint8_t> row;
        row.reserve(width);
        for (const auto& tok : tokens) row.push_back(parse_bit(tok, i + 1));
        ds.rows.push_back(std::move(row));
    }

    const auto err_lines = tokenize_lines(errors_text);
    std::vector<std::string> err_tokens;
    for (const auto& line : err_lines)
        err_tokens.insert(err_tokens.end(), line.begin(), line.end());
    if (err_tokens.size() != ds.rows.size())
        throw InputError("errors vector length " + std::to_string(err_tokens.size()) +
                         " does not match matrix row count " +
                         std::to_string(ds.rows.size()));
    for (std::size_t i = 0; i < err_tokens.size(); ++i)
        ds.outcomes.push_back(parse_bit(err_tokens[i], i + 1) == 1
                                  ? TestOutcome::Fail
                                  : TestOutcome::Pass);

    ds.statement_ids.resize(width);
    std::iota(ds.statement_ids.begin(), ds.statement_ids.end(), 1);
    return ds;
}

std::string serialize_matrix(const Dataset& dataset) {
    std::string out;
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
        for (const auto bit : dataset.rows[i]) {
            out += bit ? '1' : '0';
            out += ' ';
        }
        out += dataset.outcomes[i] == TestOutcome::Fail ? '-' : '+';
        out += '\n';
    }
    return out;
}

FlSummary validate_for_fl(const Dataset& dataset) {
    FlSummary summary;
    summary.tests = dataset.test_count();
    summary.statements = dataset.statement_count();
    summary.fail_count = dataset.fail_count();
    summary.pass_count = dataset.pass_count();
    summary.failing_is_minority = summary.fail_count < summary.pass_count;
    if (summary.fail_count == 0)
        throw InputError("no failing test case: nothing to localize");
    return summary;
}

SpectrumCounts spectrum_counts(const Dataset& dataset) {
    SpectrumCounts counts(dataset.statement_count());
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
        const bool failing = dataset.outcomes[i] == TestOutcome::Fail;
        const auto& row = dataset.rows[i];
        for (std::size_t j = 0; j < row.size(); ++j) {
            auto& c = counts[j];
            if (row[j]) {
                (failing ? c.ef : c.ep)++;
            } else {
                (failing ? c.nf : c.np)++;
            }
        }
    }
    return counts;
}

}  // namespace cgfl
