#include "cgfl/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cgfl {
namespace fs = std::filesystem;

namespace {

std::map<std::size_t, std::size_t> failing_trace_sizes(const Dataset& dataset) {
    std::map<std::size_t, std::size_t> sizes;
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
        if (dataset.outcomes[i] != TestOutcome::Fail) continue;
        sizes[i] = static_cast<std::size_t>(
            std::count(dataset.rows[i].begin(), dataset.rows[i].end(), 1));
    }
    return sizes;
}

std::vector<double> score_with(const std::string& localizer, const Dataset& data,
                               const TrainConfig& mlp_config) {
    if (localizer == "mlp") {
        const DenseNet net = mlp_train(data, mlp_config);
        return mlp_suspiciousness(net, data.statement_count());
    }
    return sfl_score(formula_from(localizer), spectrum_counts(data));
}

}  // namespace

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, std::string_view content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

FaultSpec parse_faults(std::string_view text, std::string version) {
    FaultSpec spec;
    spec.version = std::move(version);
    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        int stm = 0;
        while (fields >> stm) spec.faulty_statements.push_back(stm);
    }
    if (spec.faulty_statements.empty())
        throw InputError("fault spec lists no faulty statements");
    return spec;
}

VersionResult score_version(const std::vector<RankedStatement>& ranking,
                            const FaultSpec& faults) {
    VersionResult result;
    result.version = faults.version;
    std::size_t best = 0;
    double sum = 0.0;
    for (int faulty : faults.faulty_statements) {
        const auto it = std::find_if(
            ranking.begin(), ranking.end(),
            [&](const RankedStatement& r) { return r.statement == faulty; });
        if (it == ranking.end())
            throw InputError("faulty statement " + std::to_string(faulty) +
                             " is not in the ranking");
        if (best == 0 || it->rank < best) best = it->rank;
        sum += static_cast<double>(it->rank);
    }
    result.first_rank = best;
    result.avg_rank = sum / static_cast<double>(faults.faulty_statements.size());
    return result;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
    // parse
    Dataset dataset;
    {
        const std::string matrix_text = read_file(config.matrix_path);
        dataset = config.errors_path
                      ? parse_matrix_with_errors(matrix_text,
                                                 read_file(*config.errors_path))
                      : parse_matrix(matrix_text);
    }
    validate_for_fl(dataset);

    std::vector<std::string> localizers;
    for (const auto formula : config.formulas)
        localizers.emplace_back(formula_name(formula));
    if (config.dlfl) localizers.emplace_back("mlp");
    if (localizers.empty())
        throw InputError("no localizer requested: pass --formula and/or --dlfl");

    TrainConfig mlp_config = config.mlp;
    mlp_config.seed = derive_seed(config.seed, "pipeline.mlp");

    PipelineResult result;
    Dataset scored = dataset;  // what the localizers actually see
    BalancedDataset balanced;
    const GanModel* gan_model = nullptr;
    GanBalanceResult gan_result;

    switch (config.strategy) {
        case BalanceKind::None:
            break;
        case BalanceKind::Resample:
            balanced = resample(dataset);
            scored = balanced.data;
            break;
        case BalanceKind::Undersample:
            balanced = undersample(dataset, derive_seed(config.seed, "undersample"));
            scored = balanced.data;
            break;
        case BalanceKind::GanContext: {
            if (!config.ddg_path)
                throw InputError("slice: --ddg is required for the gan strategy");
            if (!config.criterion)
                throw InputError("slice: --criterion is required for the gan strategy");
            const DependenceGraph ddg = parse_ddg(read_file(*config.ddg_path));
            SlicingCriterion criterion = *config.criterion;
            if (criterion.fail_test == static_cast<std::size_t>(-1)) {
                criterion.fail_test =
                    select_criterion_test(dataset, failing_trace_sizes(dataset));
            } else if (criterion.fail_test >= dataset.test_count() ||
                       dataset.outcomes[criterion.fail_test] != TestOutcome::Fail) {
                throw InputError("slice: criterion test " +
                                 std::to_string(criterion.fail_test + 1) +
                                 " is not a failing test");
            }
            result.context = backward_slice(ddg, criterion);
            const Dataset context_matrix = project_context(dataset, result.context);

            GanConfig gan_config = config.gan;
            gan_config.seed = derive_seed(config.seed, "pipeline.gan");
            gan_result = balance_with_gan(context_matrix, gan_config);
            balanced = gan_result.balanced;
            scored = balanced.data;
            gan_model = &gan_result.model;
            break;
        }
    }

    std::vector<VersionResult> versions;
    FaultSpec faults;
    if (config.faults_path)
        faults = parse_faults(read_file(*config.faults_path), config.version);

    for (const auto& localizer : localizers) {
        const auto scores = score_with(localizer, scored, mlp_config);
        std::vector<RankedStatement> ranking =
            config.strategy == BalanceKind::GanContext
                ? full_program_ranking(scored.statement_ids, scores,
                                       dataset.statement_ids)
                : ranked_listing(scored.statement_ids, scores);
        if (config.faults_path)
            versions.push_back([&] {
                auto v = score_version(ranking, faults);
                v.version = config.version + "/" + localizer;
                return v;
            }());
        result.rankings.emplace_back(localizer, std::move(ranking));
    }

    if (!versions.empty()) result.report = make_report(std::move(versions));

    // artifacts
    fs::create_directories(config.out_dir);
    for (const auto& [localizer, ranking] : result.rankings)
        write_file(config.out_dir / ("ranking_" + localizer + ".csv"),
                   ranking_csv(ranking));
    if (config.strategy != BalanceKind::None) {
        write_file(config.out_dir / "balanced_matrix.txt",
                   serialize_matrix(balanced.data));
        write_file(config.out_dir / "synthetic_manifest.csv",
                   synthetic_manifest_csv(balanced));
    }
    if (gan_model && !gan_model->log.empty())
        write_file(config.out_dir / "gan_training_log.csv",
                   training_log_csv(*gan_model));
    if (!result.report.versions.empty()) {
        write_file(config.out_dir / "report.json", report_json(result.report));
        write_file(config.out_dir / "report.csv", report_csv(result.report));
    }
    return result;
}

void gen_fixture(const FixtureSpec& spec, const fs::path& out_dir) {
    if (spec.fail_count == 0) throw InputError("gen-fixture: fail count must be >= 1");
    if (spec.fail_count > spec.tests)
        throw InputError("gen-fixture: more failing tests than tests");
    if (spec.context_size < 2 || spec.context_size > spec.statements)
        throw InputError(
            "gen-fixture: context size must be in [2, N] so the criterion "
            "statement appears in the dependence chain");

    Rng rng(spec.seed);

    // Context = a dependence chain over distinct statements, ascending.
    std::set<int> context_set;
    while (context_set.size() < spec.context_size)
        context_set.insert(1 + static_cast<int>(rng.index(spec.statements)));
    const std::vector<int> context(context_set.begin(), context_set.end());
    const int criterion_stm = context.back();
    const int faulty_stm = context.size() > 1 ? context[1] : context[0];

    std::ostringstream ddg;
    ddg << "# dependence chain for the seeded failing execution\n";
    for (std::size_t i = 0; i + 1 < context.size(); ++i)
        ddg << context[i] << ' ' << context[i + 1] << ' '
            << (i % 2 == 0 ? "data" : "ctrl") << '\n';
    // Distractor edges among non-context statements; never into the context,
    // so the slice stays exactly the chain.
    std::vector<int> outside;
    for (std::size_t s = 1; s <= spec.statements; ++s)
        if (!context_set.count(static_cast<int>(s)))
            outside.push_back(static_cast<int>(s));
    for (std::size_t k = 0; k + 1 < outside.size() && k < 4; k += 2)
        ddg << outside[k] << ' ' << outside[k + 1] << " data\n";

    std::ostringstream matrix;
    matrix << "# " << spec.tests << " tests x " << spec.statements
           << " statements\n";
    for (std::size_t t = 0; t < spec.tests; ++t) {
        const bool failing = t < spec.fail_count;
        for (std::size_t s = 1; s <= spec.statements; ++s) {
            const bool in_context = context_set.count(static_cast<int>(s)) != 0;
            int bit;
            if (failing)
                bit = in_context ? 1 : static_cast<int>(rng.index(2));
            else
                bit = static_cast<int>(rng.index(2));
            matrix << bit << ' ';
        }
        matrix << (failing ? '-' : '+') << '\n';
    }

    std::ostringstream faults;
    faults << "# faulty statements\n" << faulty_stm << '\n';

    fs::create_directories(out_dir);
    write_file(out_dir / "matrix.txt", matrix.str());
    write_file(out_dir / "ddg.txt", ddg.str());
    write_file(out_dir / "faults.txt", faults.str());
}

}  // namespace cgfl
