#pragma once

// Shared test helpers and independent oracles. Everything here is
// deliberately written against the definitions, not the library code paths
// it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "cgfl/dataset.hpp"
#include "cgfl/neural.hpp"
#include "cgfl/rng.hpp"
#include "cgfl/slicing.hpp"

namespace cgfl::testing {

inline Dataset random_dataset(Rng& rng, std::size_t max_tests = 20,
                              std::size_t max_statements = 10,
                              bool force_failing = true) {
    Dataset ds;
    const std::size_t tests = 1 + rng.index(max_tests);
    const std::size_t statements = 1 + rng.index(max_statements);
    for (std::size_t i = 0; i < tests; ++i) {
        std::vector<std::uint8_t> row(statements);
        for (auto& bit : row) bit = static_cast<std::uint8_t>(rng.index(2));
        ds.rows.push_back(std::move(row));
        ds.outcomes.push_back(rng.index(2) ? TestOutcome::Fail : TestOutcome::Pass);
    }
    if (force_failing) ds.outcomes[rng.index(tests)] = TestOutcome::Fail;
    ds.statement_ids.resize(statements);
    std::iota(ds.statement_ids.begin(), ds.statement_ids.end(), 1);
    return ds;
}

// Brute-force spectrum: a plain double loop over (test, statement) pairs.
inline SpectrumCounts spectrum_oracle(const Dataset& ds) {
    SpectrumCounts counts(ds.statement_count());
    for (std::size_t j = 0; j < ds.statement_count(); ++j) {
        for (std::size_t i = 0; i < ds.test_count(); ++i) {
            const bool executed = ds.rows[i][j] == 1;
            const bool failed = ds.outcomes[i] == TestOutcome::Fail;
            if (executed && failed) counts[j].ef++;
            if (executed && !failed) counts[j].ep++;
            if (!executed && failed) counts[j].nf++;
            if (!executed && !failed) counts[j].np++;
        }
    }
    return counts;
}

// Independent SFL evaluator, long double arithmetic, explicit guard branches.
// Returns NaN-free scores; infinity marks the DStar sentinel.
inline double sfl_oracle(int formula /*0=ochiai 1=dstar 2=barinel 3=gp02*/,
                         std::size_t ef, std::size_t ep, std::size_t nf,
                         std::size_t np) {
    const long double lef = ef, lep = ep, lnf = nf, lnp = np;
    switch (formula) {
        case 0: {
            if (ef + nf == 0 || ef + ep == 0) return 0.0;
            return static_cast<double>(lef / std::sqrt((lef + lnf) * (lef + lep)));
        }
        case 1: {
            if (ef == 0) return 0.0;
            if (ep + nf == 0) return std::numeric_limits<double>::infinity();
            return static_cast<double>(lef * lef / (lep + lnf));
        }
        case 2: {
            if (ep + ef == 0) return 0.0;
            return static_cast<double>(1.0L - lep / (lep + lef));
        }
        default:
            return static_cast<double>(2.0L * (lef + std::sqrt(lnp)) +
                                       std::sqrt(lep));
    }
}

// Reversed-edge breadth-first reachability: everything that reaches `target`.
inline std::vector<int> reachability_oracle(const DependenceGraph& ddg,
                                            int target) {
    std::map<int, std::vector<int>> reverse;
    for (const auto& e : ddg.edges) reverse[e.dst].push_back(e.src);
    std::set<int> seen{target};
    std::deque<int> queue{target};
    while (!queue.empty()) {
        const int node = queue.front();
        queue.pop_front();
        for (int pred : reverse[node])
            if (seen.insert(pred).second) queue.push_back(pred);
    }
    return {seen.begin(), seen.end()};
}

// Random DAG: edges only from lower to higher node ids, so cycles are
// impossible by construction.
inline DependenceGraph random_dag(Rng& rng, std::size_t max_nodes = 50,
                                  std::size_t max_edges = 200) {
    const std::size_t nodes = 2 + rng.index(max_nodes - 1);
    const std::size_t edges = 1 + rng.index(max_edges);
    std::set<std::pair<int, int>> seen;
    DependenceGraph ddg;
    for (std::size_t k = 0; k < edges; ++k) {
        int a = 1 + static_cast<int>(rng.index(nodes));
        int b = 1 + static_cast<int>(rng.index(nodes));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) continue;
        ddg.edges.push_back({a, b, rng.index(2) ? DepKind::Data : DepKind::Control});
    }
    std::set<int> node_set;
    for (const auto& e : ddg.edges) {
        node_set.insert(e.src);
        node_set.insert(e.dst);
    }
    ddg.nodes.assign(node_set.begin(), node_set.end());
    return ddg;
}

// Central finite differences of a loss over every network parameter.
template <typename LossFn>
inline Gradients finite_difference_gradients(DenseNet net, LossFn loss,
                                             double step = 1e-5) {
    Gradients grads = zero_gradients(net);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        for (std::size_t k = 0; k < net.layers[l].weights.size(); ++k) {
            double& w = net.layers[l].weights[k];
            const double original = w;
            w = original + step;
            const double up = loss(net);
            w = original - step;
            const double down = loss(net);
            w = original;
            grads.weights[l][k] = (up - down) / (2.0 * step);
        }
        for (std::size_t k = 0; k < net.layers[l].biases.size(); ++k) {
            double& b = net.layers[l].biases[k];
            const double original = b;
            b = original + step;
            const double up = loss(net);
            b = original - step;
            const double down = loss(net);
            b = original;
            grads.biases[l][k] = (up - down) / (2.0 * step);
        }
    }
    return grads;
}

inline bool close_rel(double a, double b, double rel_tol, double abs_floor = 1e-8) {
    const double scale = std::max({std::fabs(a), std::fabs(b), abs_floor});
    return std::fabs(a - b) <= rel_tol * scale;
}

}  // namespace cgfl::testing
