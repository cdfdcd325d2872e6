#include "cgfl/slicing.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cgfl {

bool DependenceGraph::has_node(int statement_id) const {
    return std::binary_search(nodes.begin(), nodes.end(), statement_id);
}

DependenceGraph parse_ddg(std::string_view text) {
    DependenceGraph ddg;
    std::set<int> node_set;
    std::istringstream stream{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        int src = 0, dst = 0;
        std::string kind;
        if (!(fields >> src >> dst >> kind))
            throw InputError("ddg line " + std::to_string(line_no) +
                             ": expected 'SRC DST KIND'");
        std::string extra;
        if (fields >> extra)
            throw InputError("ddg line " + std::to_string(line_no) +
                             ": trailing token '" + extra + "'");
        DepKind k;
        if (kind == "data")
            k = DepKind::Data;
        else if (kind == "ctrl")
            k = DepKind::Control;
        else
            throw InputError("ddg line " + std::to_string(line_no) +
                             ": kind must be data or ctrl, got '" + kind + "'");
        if (src == dst)
            throw InputError("ddg line " + std::to_string(line_no) +
                             ": self-loop on statement " + std::to_string(src));
        ddg.edges.push_back({src, dst, k});
        node_set.insert(src);
        node_set.insert(dst);
    }
    ddg.nodes.assign(node_set.begin(), node_set.end());
    return ddg;
}

std::size_t select_criterion_test(
    const Dataset& dataset,
    const std::map<std::size_t, std::size_t>& trace_sizes) {
    std::size_t best = dataset.test_count();
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < dataset.test_count(); ++i) {
        if (dataset.outcomes[i] != TestOutcome::Fail) continue;
        const auto it = trace_sizes.find(i);
        if (it == trace_sizes.end())
            throw InputError("no trace size for failing test " + std::to_string(i));
        if (it->second < best_size) {  // ties keep the earlier test
            best_size = it->second;
            best = i;
        }
    }
    if (best == dataset.test_count())
        throw InputError("no failing test case: cannot pick a slicing criterion");
    return best;
}

std::vector<int> backward_slice(const DependenceGraph& ddg,
                                const SlicingCriterion& criterion) {
    if (!ddg.has_node(criterion.out_stm))
        throw InputError("criterion statement " + std::to_string(criterion.out_stm) +
                         " is not a node of the dependence graph");

    std::unordered_map<int, std::vector<int>> predecessors;
    for (const auto& e : ddg.edges) predecessors[e.dst].push_back(e.src);

    std::unordered_set<int> seen{criterion.out_stm};
    std::deque<int> frontier{criterion.out_stm};
    while (!frontier.empty()) {
        const int node = frontier.front();
        frontier.pop_front();
        const auto it = predecessors.find(node);
        if (it == predecessors.end()) continue;
        for (int pred : it->second)
            if (seen.insert(pred).second) frontier.push_back(pred);
    }

    std::vector<int> slice(seen.begin(), seen.end());
    std::sort(slice.begin(), slice.end());
    return slice;
}

Dataset project_context(const Dataset& dataset, const std::vector<int>& context) {
    std::vector<std::size_t> columns;
    columns.reserve(context.size());
    for (int stm : context) columns.push_back(dataset.column_of(stm));

    Dataset projected;
    projected.outcomes = dataset.outcomes;
    projected.statement_ids = context;
    projected.rows.reserve(dataset.rows.size());
    for (const auto& row : dataset.rows) {
        std::vector<std::uint8_t> kept;
        kept.reserve(columns.size());
        for (std::size_t col : columns) kept.push_back(row[col]);
        projected.rows.push_back(std::move(kept));
    }
    return projected;
}

}  // namespace cgfl
