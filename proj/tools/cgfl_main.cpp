// cgfl: coverage-based fault localization workbench with class-imbalance
// mitigation (dependence slicing + adversarial row synthesis).

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgfl/pipeline.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitTraining = 3;
constexpr int kExitEvaluation = 4;

cgfl::SlicingCriterion parse_criterion(const std::string& text) {
    // STMT:VAR or STMT:VAR:TEST (TEST is 1-based; omitted means auto-select
    // the failing test with the smallest trace).
    cgfl::SlicingCriterion criterion;
    criterion.fail_test = static_cast<std::size_t>(-1);
    const auto first = text.find(':');
    if (first == std::string::npos)
        throw cgfl::InputError("criterion must be STMT:VAR[:TEST]");
    criterion.out_stm = std::stoi(text.substr(0, first));
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) {
        criterion.out_var = text.substr(first + 1);
    } else {
        criterion.out_var = text.substr(first + 1, second - first - 1);
        const long test = std::stol(text.substr(second + 1));
        if (test < 1) throw cgfl::InputError("criterion test index is 1-based");
        criterion.fail_test = static_cast<std::size_t>(test - 1);
    }
    return criterion;
}

std::uint64_t env_seed_fallback() {
    if (const char* env = std::getenv("CGFL_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

cgfl::Dataset load_dataset(const std::string& matrix,
                           const std::string& errors) {
    const std::string text = cgfl::read_file(matrix);
    return errors.empty()
               ? cgfl::parse_matrix(text)
               : cgfl::parse_matrix_with_errors(text, cgfl::read_file(errors));
}

// version_id,first_rank lines (header optional)
std::vector<std::pair<std::string, std::size_t>> load_rank_list(
    const std::string& path) {
    std::istringstream in(cgfl::read_file(path));
    std::vector<std::pair<std::string, std::size_t>> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw cgfl::InputError(path + ": expected 'version,first_rank' lines");
        const std::string version = line.substr(0, comma);
        if (version == "version") continue;  // header
        entries.emplace_back(version,
                             std::stoull(line.substr(comma + 1)));
    }
    if (entries.empty()) throw cgfl::InputError(path + ": no rank entries");
    return entries;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fault localization workbench (slicing + GAN balancing)"};
    app.require_subcommand(1);

    std::string matrix, errors, ddg, faults, criterion_text, out = "out";
    std::string strategy = "none";
    std::vector<std::string> formulas;
    bool dlfl = false;
    std::uint64_t seed = env_seed_fallback();
    cgfl::GanConfig gan_defaults;
    std::size_t epochs = gan_defaults.epochs;
    std::size_t latent_dim = gan_defaults.latent_dim;
    double threshold = gan_defaults.binarize_threshold;

    auto add_common = [&](CLI::App* cmd, bool need_matrix) {
        auto* opt = cmd->add_option("--matrix", matrix, "coverage matrix file");
        if (need_matrix) opt->required();
        cmd->add_option("--errors", errors, "separate 0/1 errors file");
        cmd->add_option("--seed", seed, "global seed (env CGFL_SEED fallback)");
    };

    auto* parse_cmd = app.add_subcommand("parse", "parse and summarize a matrix");
    add_common(parse_cmd, true);

    auto* slice_cmd = app.add_subcommand("slice", "backward slice a dependence graph");
    slice_cmd->add_option("--ddg", ddg, "dependence edge-list file")->required();
    slice_cmd->add_option("--criterion", criterion_text, "STMT:VAR[:TEST]")->required();
    add_common(slice_cmd, false);

    auto* augment_cmd = app.add_subcommand("augment", "emit a class-balanced matrix");
    add_common(augment_cmd, true);
    augment_cmd->add_option("--strategy", strategy, "gan|resample|undersample")
        ->required();
    augment_cmd->add_option("--ddg", ddg, "dependence edge-list file (gan)");
    augment_cmd->add_option("--criterion", criterion_text, "STMT:VAR[:TEST] (gan)");
    augment_cmd->add_option("--epochs", epochs, "GAN training epochs");
    augment_cmd->add_option("--latent-dim", latent_dim, "GAN latent dimension");
    augment_cmd->add_option("--threshold", threshold, "binarization threshold");
    augment_cmd->add_option("--out", out, "output directory");

    auto* localize_cmd = app.add_subcommand("localize", "score and rank statements");
    add_common(localize_cmd, true);
    localize_cmd->add_option("--formula", formulas, "ochiai|dstar|barinel|gp02");
    localize_cmd->add_flag("--dlfl", dlfl, "perceptron localizer");
    localize_cmd->add_option("--out", out, "output directory");

    std::string ranking_path;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "metrics for one ranking");
    evaluate_cmd->add_option("--ranking", ranking_path, "ranking CSV")->required();
    evaluate_cmd->add_option("--faults", faults, "fault spec file")->required();
    evaluate_cmd->add_option("--out", out, "output directory");

    std::string treatment_path, baseline_path;
    auto* compare_cmd =
        app.add_subcommand("compare", "RImp + Wilcoxon between two rank lists");
    compare_cmd->add_option("--treatment", treatment_path, "version,first_rank CSV")
        ->required();
    compare_cmd->add_option("--baseline", baseline_path, "version,first_rank CSV")
        ->required();
    compare_cmd->add_option("--out", out, "output directory");

    cgfl::FixtureSpec fixture;
    auto* fixture_cmd = app.add_subcommand("gen-fixture", "emit a synthetic corpus");
    fixture_cmd->add_option("--tests", fixture.tests, "number of tests");
    fixture_cmd->add_option("--statements", fixture.statements, "number of statements");
    fixture_cmd->add_option("--context-size", fixture.context_size, "chain length");
    fixture_cmd->add_option("--fails", fixture.fail_count, "failing tests");
    fixture_cmd->add_option("--seed", fixture.seed, "fixture seed");
    fixture_cmd->add_option("--out", out, "output directory")->required();

    auto* run_cmd = app.add_subcommand("run", "full pipeline");
    add_common(run_cmd, true);
    run_cmd->add_option("--ddg", ddg, "dependence edge-list file");
    run_cmd->add_option("--criterion", criterion_text, "STMT:VAR[:TEST]");
    run_cmd->add_option("--faults", faults, "fault spec file")->required();
    run_cmd->add_option("--strategy", strategy, "gan|resample|undersample|none");
    run_cmd->add_option("--formula", formulas, "ochiai|dstar|barinel|gp02");
    run_cmd->add_flag("--dlfl", dlfl, "perceptron localizer");
    run_cmd->add_option("--epochs", epochs, "GAN training epochs");
    run_cmd->add_option("--latent-dim", latent_dim, "GAN latent dimension");
    run_cmd->add_option("--threshold", threshold, "binarization threshold");
    run_cmd->add_option("--out", out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*parse_cmd) {
            const auto summary = cgfl::validate_for_fl(load_dataset(matrix, errors));
            nlohmann::json j{{"tests", summary.tests},
                             {"statements", summary.statements},
                             {"fail", summary.fail_count},
                             {"pass", summary.pass_count},
                             {"failing_is_minority", summary.failing_is_minority}};
            std::cout << j.dump(2) << "\n";
        } else if (*slice_cmd) {
            const auto graph = cgfl::parse_ddg(cgfl::read_file(ddg));
            auto criterion = parse_criterion(criterion_text);
            if (criterion.fail_test == static_cast<std::size_t>(-1) &&
                !matrix.empty()) {
                // with a matrix we can auto-pick the least-executed failing test
                const auto ds = load_dataset(matrix, errors);
                std::map<std::size_t, std::size_t> sizes;
                for (std::size_t i = 0; i < ds.rows.size(); ++i)
                    if (ds.outcomes[i] == cgfl::TestOutcome::Fail)
                        sizes[i] = static_cast<std::size_t>(
                            std::count(ds.rows[i].begin(), ds.rows[i].end(), 1));
                criterion.fail_test = cgfl::select_criterion_test(ds, sizes);
            }
            for (int stm : cgfl::backward_slice(graph, criterion))
                std::cout << stm << "\n";
        } else if (*augment_cmd) {
            const auto dataset = load_dataset(matrix, errors);
            cgfl::BalancedDataset balanced;
            const cgfl::BalanceKind kind = cgfl::balance_kind_from(strategy);
            if (kind == cgfl::BalanceKind::GanContext) {
                cgfl::PipelineConfig config;
                config.matrix_path = matrix;
                if (!errors.empty()) config.errors_path = errors;
                if (ddg.empty())
                    throw cgfl::InputError("slice: --ddg is required for the gan strategy");
                config.ddg_path = ddg;
                if (criterion_text.empty())
                    throw cgfl::InputError(
                        "slice: --criterion is required for the gan strategy");
                config.criterion = parse_criterion(criterion_text);
                config.strategy = kind;
                config.seed = seed;
                config.gan.epochs = epochs;
                config.gan.latent_dim = latent_dim;
                config.gan.binarize_threshold = threshold;
                config.out_dir = out;
                cgfl::run_pipeline(config);
            } else if (kind == cgfl::BalanceKind::Resample) {
                balanced = cgfl::resample(dataset);
            } else if (kind == cgfl::BalanceKind::Undersample) {
                balanced = cgfl::undersample(
                    dataset, cgfl::derive_seed(seed, "undersample"));
            } else {
                throw cgfl::InputError("augment: strategy must not be 'none'");
            }
            if (kind != cgfl::BalanceKind::GanContext) {
                std::filesystem::create_directories(out);
                cgfl::write_file(std::filesystem::path(out) / "balanced_matrix.txt",
                                 cgfl::serialize_matrix(balanced.data));
                cgfl::write_file(
                    std::filesystem::path(out) / "synthetic_manifest.csv",
                    cgfl::synthetic_manifest_csv(balanced));
            }
            std::cout << "balanced matrix written to " << out << "\n";
        } else if (*localize_cmd) {
            const auto dataset = load_dataset(matrix, errors);
            cgfl::validate_for_fl(dataset);
            if (formulas.empty() && !dlfl)
                throw cgfl::InputError("localize: pass --formula and/or --dlfl");
            std::filesystem::create_directories(out);
            const auto counts = cgfl::spectrum_counts(dataset);
            for (const auto& name : formulas) {
                const auto scores =
                    cgfl::sfl_score(cgfl::formula_from(name), counts);
                cgfl::write_file(
                    std::filesystem::path(out) / ("ranking_" + name + ".csv"),
                    cgfl::ranking_csv(
                        cgfl::ranked_listing(dataset.statement_ids, scores)));
            }
            if (dlfl) {
                cgfl::TrainConfig mlp_config{0.05, 32, 200,
                                             cgfl::derive_seed(seed, "pipeline.mlp")};
                const auto net = cgfl::mlp_train(dataset, mlp_config);
                const auto scores =
                    cgfl::mlp_suspiciousness(net, dataset.statement_count());
                cgfl::write_file(
                    std::filesystem::path(out) / "ranking_mlp.csv",
                    cgfl::ranking_csv(
                        cgfl::ranked_listing(dataset.statement_ids, scores)));
            }
            std::cout << "rankings written to " << out << "\n";
        } else if (*evaluate_cmd) {
            // Re-rank from the CSV so the metrics see exactly what was exported.
            std::istringstream in(cgfl::read_file(ranking_path));
            std::vector<cgfl::RankedStatement> ranking;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line.rfind("statement,", 0) == 0) continue;
                cgfl::RankedStatement entry;
                std::istringstream fields(line);
                std::string stm, score, rank_field;
                std::getline(fields, stm, ',');
                std::getline(fields, score, ',');
                std::getline(fields, rank_field, ',');
                entry.statement = std::stoi(stm);
                entry.rank = std::stoull(rank_field);
                ranking.push_back(entry);
            }
            const auto fault_spec =
                cgfl::parse_faults(cgfl::read_file(faults), "v1");
            const auto version = cgfl::score_version(ranking, fault_spec);
            const auto report = cgfl::make_report({version});
            std::filesystem::create_directories(out);
            cgfl::write_file(std::filesystem::path(out) / "report.json",
                             cgfl::report_json(report));
            std::cout << cgfl::report_json(report);
        } else if (*compare_cmd) {
            const auto treatment = load_rank_list(treatment_path);
            const auto baseline = load_rank_list(baseline_path);
            if (treatment.size() != baseline.size())
                throw cgfl::EvaluationError("compare: version sets differ in size");
            std::vector<std::size_t> t_ranks, b_ranks;
            std::vector<std::pair<double, double>> pairs;
            std::vector<double> t_vals, b_vals;
            for (std::size_t i = 0; i < treatment.size(); ++i) {
                if (treatment[i].first != baseline[i].first)
                    throw cgfl::EvaluationError("compare: version sets differ: " +
                                                treatment[i].first + " vs " +
                                                baseline[i].first);
                t_ranks.push_back(treatment[i].second);
                b_ranks.push_back(baseline[i].second);
                pairs.emplace_back(static_cast<double>(treatment[i].second),
                                   static_cast<double>(baseline[i].second));
                t_vals.push_back(static_cast<double>(treatment[i].second));
                b_vals.push_back(static_cast<double>(baseline[i].second));
            }
            const double rimp_value = cgfl::rimp(t_ranks, b_ranks);
            const auto wsr = cgfl::wilcoxon_signed_rank(pairs);
            nlohmann::json j{{"rimp", rimp_value},
                             {"wilcoxon",
                              {{"greater", wsr.greater},
                               {"less", wsr.less},
                               {"two_sided", wsr.two_sided},
                               {"nonzero", wsr.nonzero},
                               {"exact", wsr.exact}}}};
            std::filesystem::create_directories(out);
            cgfl::write_file(std::filesystem::path(out) / "comparison.json",
                             j.dump(2) + "\n");
            cgfl::write_file(
                std::filesystem::path(out) / "first_rank_boxplot.csv",
                cgfl::box_stats_csv({{"treatment", cgfl::box_stats(t_vals)},
                                     {"baseline", cgfl::box_stats(b_vals)}}));
            std::cout << j.dump(2) << "\n";
        } else if (*fixture_cmd) {
            cgfl::gen_fixture(fixture, out);
            std::cout << "fixture written to " << out << "\n";
        } else if (*run_cmd) {
            cgfl::PipelineConfig config;
            config.matrix_path = matrix;
            if (!errors.empty()) config.errors_path = errors;
            if (!ddg.empty()) config.ddg_path = ddg;
            config.faults_path = faults;
            if (!criterion_text.empty())
                config.criterion = parse_criterion(criterion_text);
            config.strategy = cgfl::balance_kind_from(strategy);
            config.formulas.clear();
            for (const auto& name : formulas)
                config.formulas.push_back(cgfl::formula_from(name));
            config.dlfl = dlfl;
            config.seed = seed;
            config.gan.epochs = epochs;
            config.gan.latent_dim = latent_dim;
            config.gan.binarize_threshold = threshold;
            config.out_dir = out;
            const auto result = cgfl::run_pipeline(config);
            std::cout << cgfl::report_json(result.report);
        }
    } catch (const cgfl::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const cgfl::TrainingError& e) {
        std::cerr << "training error: " << e.what() << "\n";
        return kExitTraining;
    } catch (const cgfl::EvaluationError& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return kExitEvaluation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
