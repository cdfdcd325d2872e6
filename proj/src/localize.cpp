#include "cgfl/localize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cgfl {
namespace {

double score_one(SflFormula formula, const StatementSpectrum& c) {
    const double ef = static_cast<double>(c.ef);
    const double ep = static_cast<double>(c.ep);
    const double nf = static_cast<double>(c.nf);
    const double np = static_cast<double>(c.np);
    switch (formula) {
        case SflFormula::Ochiai: {
            const double denom = std::sqrt((ef + nf) * (ef + ep));
            return denom == 0.0 ? 0.0 : ef / denom;
        }
        case SflFormula::DStar: {
            if (c.ef == 0) return 0.0;
            if (c.ep + c.nf == 0) return kScoreInfinity;
            return ef * ef / (ep + nf);
        }
        case SflFormula::Barinel: {
            const double denom = ep + ef;
            return denom == 0.0 ? 0.0 : 1.0 - ep / denom;
        }
        case SflFormula::GP02:
            return 2.0 * (ef + std::sqrt(np)) + std::sqrt(ep);
    }
    throw InputError("unknown SFL formula");
}

}  // namespace

SflFormula formula_from(const std::string& name) {
    if (name == "ochiai") return SflFormula::Ochiai;
    if (name == "dstar") return SflFormula::DStar;
    if (name == "barinel") return SflFormula::Barinel;
    if (name == "gp02") return SflFormula::GP02;
    throw InputError("unknown SFL formula '" + name + "'");
}

const char* formula_name(SflFormula formula) {
    switch (formula) {
        case SflFormula::Ochiai: return "ochiai";
        case SflFormula::DStar: return "dstar";
        case SflFormula::Barinel: return "barinel";
        case SflFormula::GP02: return "gp02";
    }
    return "?";
}

std::vector<double> sfl_score(SflFormula formula, const SpectrumCounts& counts) {
    std::vector<double> scores;
    scores.reserve(counts.size());
    for (const auto& c : counts) scores.push_back(score_one(formula, c));
    return scores;
}

std::vector<std::size_t> rank(std::span<const double> scores) {
    for (double s : scores)
        if (std::isnan(s)) throw InputError("rank: NaN score");
    std::vector<std::size_t> ranks(scores.size());
    for (std::size_t j = 0; j < scores.size(); ++j) {
        std::size_t greater = 0, equal = 0;
        for (double other : scores) {
            if (other > scores[j]) ++greater;
            else if (other == scores[j]) ++equal;
        }
        ranks[j] = greater + equal;
    }
    return ranks;
}

std::vector<RankedStatement> ranked_listing(const std::vector<int>& statement_ids,
                                            std::span<const double> scores) {
    if (statement_ids.size() != scores.size())
        throw InputError("ranking: ids/scores length mismatch");
    const auto ranks = rank(scores);
    std::vector<RankedStatement> listing(statement_ids.size());
    for (std::size_t j = 0; j < statement_ids.size(); ++j)
        listing[j] = {statement_ids[j], scores[j], ranks[j]};
    std::sort(listing.begin(), listing.end(),
              [](const RankedStatement& a, const RankedStatement& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.statement < b.statement;
              });
    return listing;
}

std::vector<RankedStatement> full_program_ranking(
    const std::vector<int>& context_ids, std::span<const double> context_scores,
    const std::vector<int>& all_statement_ids) {
    if (context_ids.size() != context_scores.size())
        throw InputError("ranking: context ids/scores length mismatch");
    std::vector<double> scores;
    scores.reserve(all_statement_ids.size());
    for (int stm : all_statement_ids) {
        const auto it =
            std::find(context_ids.begin(), context_ids.end(), stm);
        scores.push_back(it == context_ids.end()
                             ? -kScoreInfinity
                             : context_scores[static_cast<std::size_t>(
                                   it - context_ids.begin())]);
    }
    return ranked_listing(all_statement_ids, scores);
}

std::string ranking_csv(const std::vector<RankedStatement>& listing) {
    std::ostringstream out;
    out << "statement,score,rank\n";
    for (const auto& entry : listing) {
        out << entry.statement << ',';
        if (entry.score == kScoreInfinity)
            out << "inf";
        else if (entry.score == -kScoreInfinity)
            out << "-inf";
        else
            out << entry.score;
        out << ',' << entry.rank << '\n';
    }
    return out.str();
}

DenseNet mlp_train(const Dataset& dataset, const TrainConfig& config) {
    const std::size_t width = dataset.statement_count();
    Rng init(derive_seed(config.seed, "mlp.init"));
    DenseNet net = make_net({width, 64, 1},
                            {Activation::ReLU, Activation::Sigmoid}, init);

    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    inputs.reserve(dataset.rows.size());
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
        inputs.emplace_back(dataset.rows[i].begin(), dataset.rows[i].end());
        targets.push_back(dataset.outcomes[i] == TestOutcome::Fail ? 1.0 : 0.0);
    }

    Rng shuffle_rng(derive_seed(config.seed, "mlp.shuffle"));
    std::vector<std::size_t> order(inputs.size());
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            const std::size_t pick = k + shuffle_rng.index(order.size() - k);
            std::swap(order[k], order[pick]);
        }
        for (std::size_t start = 0; start < order.size();
             start += config.batch_size) {
            const std::size_t stop =
                std::min(order.size(), start + config.batch_size);
            Gradients total = zero_gradients(net);
            for (std::size_t k = start; k < stop; ++k) {
                const std::size_t i = order[k];
                const ForwardTrace trace = net_forward_trace(net, inputs[i]);
                const std::vector<double> target{targets[i]};
                const auto grad = bce_grad(trace.post.back(), target);
                accumulate(total, net_backward(net, inputs[i], trace, grad));
            }
            scale(total, 1.0 / static_cast<double>(stop - start));
            sgd_step(net, total, config.learning_rate);
        }
    }
    return net;
}

std::vector<double> mlp_suspiciousness(const DenseNet& model,
                                       std::size_t statement_count) {
    if (model.input_width() != statement_count)
        throw InputError("mlp: model width " +
                         std::to_string(model.input_width()) +
                         " != statement count " + std::to_string(statement_count));
    std::vector<double> scores(statement_count);
    std::vector<double> one_hot(statement_count, 0.0);
    for (std::size_t j = 0; j < statement_count; ++j) {
        one_hot[j] = 1.0;
        scores[j] = net_forward(model, one_hot)[0];
        one_hot[j] = 0.0;
    }
    return scores;
}

}  // namespace cgfl
