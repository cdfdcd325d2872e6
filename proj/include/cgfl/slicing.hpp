#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cgfl/dataset.hpp"

namespace cgfl {

enum class DepKind : std::uint8_t { Data, Control };

struct DepEdge {
    int src = 0;  // dst dynamically depends on src
    int dst = 0;
    DepKind kind = DepKind::Data;

    bool operator==(const DepEdge&) const = default;
};

// Statement-level dependence graph for one failing execution. Nodes are
// statements, not statement instances; repeated dynamic occurrences collapse.
struct DependenceGraph {
    std::vector<int> nodes;  // ascending, unique
    std::vector<DepEdge> edges;

    bool has_node(int statement_id) const;
};

// Anchors a slice: the output statement whose variable held a wrong value
// in the given failing test. out_var is metadata only.
struct SlicingCriterion {
    int out_stm = 0;
    std::string out_var;
    std::size_t fail_test = 0;  // 0-based test index
};

// Edge-list format: "SRC DST KIND" per line, KIND in {data, ctrl};
// '#' comments. Nodes are declared implicitly by their edges.
DependenceGraph parse_ddg(std::string_view text);

// Failing test with the fewest executed statements; ties break toward the
// lowest test index. trace_sizes must cover every failing test.
std::size_t select_criterion_test(
    const Dataset& dataset, const std::map<std::size_t, std::size_t>& trace_sizes);

// Statements that reach criterion.out_stm through directed dependence edges,
// plus the criterion statement itself; ascending. Data and control edges are
// traversed identically.
std::vector<int> backward_slice(const DependenceGraph& ddg,
                                const SlicingCriterion& criterion);

// Restricts the dataset to the context columns; rows and outcomes unchanged.
Dataset project_context(const Dataset& dataset, const std::vector<int>& context);

}  // namespace cgfl
