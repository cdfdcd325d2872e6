#include <doctest.h>

#include <filesystem>

#include "cgfl/pipeline.hpp"
#include "support.hpp"

using namespace cgfl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("cgfl_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path fixture_dir() {
    // tests run from the build tree; the fixture ships with the sources
    return fs::path(CGFL_SOURCE_DIR) / "fixtures" / "illustrative";
}

GanConfig quick_gan() {
    GanConfig gan;
    gan.latent_dim = 8;
    gan.hidden_width = 16;
    gan.epochs = 150;
    return gan;
}

}  // namespace

TEST_CASE("parse_faults") {
    const auto spec = parse_faults("# comment\n3 7\n12\n", "v1");
    CHECK(spec.faulty_statements == std::vector<int>{3, 7, 12});
    CHECK_THROWS_AS(parse_faults("# nothing\n", "v1"), InputError);
}

TEST_CASE("score_version picks first and average ranks") {
    const std::vector<RankedStatement> ranking{
        {7, 3.0, 1}, {3, 2.0, 2}, {1, 1.0, 3}, {14, 0.5, 4}};
    const auto result = score_version(ranking, {"v1", {3, 14}});
    CHECK(result.first_rank == 2);
    CHECK(result.avg_rank == doctest::Approx(3.0));
    CHECK_THROWS_AS(score_version(ranking, {"v1", {99}}), InputError);
}

TEST_CASE("gen_fixture emits a parseable deterministic corpus") {
    const FixtureSpec spec{6, 16, 4, 2, 7};
    const auto dir_a = fresh_dir("fixture_a");
    const auto dir_b = fresh_dir("fixture_b");
    gen_fixture(spec, dir_a);
    gen_fixture(spec, dir_b);

    for (const char* name : {"matrix.txt", "ddg.txt", "faults.txt"})
        CHECK(read_file(dir_a / name) == read_file(dir_b / name));

    const Dataset ds = parse_matrix(read_file(dir_a / "matrix.txt"));
    CHECK(ds.test_count() == 6);
    CHECK(ds.statement_count() == 16);
    CHECK(validate_for_fl(ds).fail_count == 2);
    const DependenceGraph ddg = parse_ddg(read_file(dir_a / "ddg.txt"));
    CHECK_FALSE(ddg.edges.empty());
    const auto faults = parse_faults(read_file(dir_a / "faults.txt"), "v1");
    CHECK(faults.faulty_statements.size() == 1);
    CHECK(ddg.has_node(faults.faulty_statements[0]));
}

TEST_CASE("gen_fixture rejects inconsistent sizes") {
    CHECK_THROWS_AS(gen_fixture({6, 16, 4, 0, 1}, fresh_dir("bad1")), InputError);
    CHECK_THROWS_AS(gen_fixture({6, 16, 20, 2, 1}, fresh_dir("bad2")), InputError);
    CHECK_THROWS_AS(gen_fixture({2, 16, 4, 3, 1}, fresh_dir("bad3")), InputError);
}

TEST_CASE("strategy none equals direct SFL on the raw matrix") {
    PipelineConfig config;
    config.matrix_path = fixture_dir() / "matrix.txt";
    config.faults_path = fixture_dir() / "faults.txt";
    config.formulas = {SflFormula::GP02};
    config.out_dir = fresh_dir("none_run");
    const auto result = run_pipeline(config);

    const Dataset ds = parse_matrix(read_file(config.matrix_path));
    const auto direct = ranked_listing(
        ds.statement_ids, sfl_score(SflFormula::GP02, spectrum_counts(ds)));
    REQUIRE(result.rankings.size() == 1);
    REQUIRE(result.rankings[0].second.size() == direct.size());
    for (std::size_t j = 0; j < direct.size(); ++j) {
        CHECK(result.rankings[0].second[j].statement == direct[j].statement);
        CHECK(result.rankings[0].second[j].rank == direct[j].rank);
    }
}

TEST_CASE("gan strategy without a ddg fails at the slice stage") {
    PipelineConfig config;
    config.matrix_path = fixture_dir() / "matrix.txt";
    config.faults_path = fixture_dir() / "faults.txt";
    config.strategy = BalanceKind::GanContext;
    config.out_dir = fresh_dir("noddg");
    CHECK_THROWS_WITH_AS(run_pipeline(config),
                         "slice: --ddg is required for the gan strategy",
                         InputError);
}

TEST_CASE("pipeline artifacts re-parse and runs are byte-identical") {
    PipelineConfig config;
    config.matrix_path = fixture_dir() / "matrix.txt";
    config.ddg_path = fixture_dir() / "ddg.txt";
    config.faults_path = fixture_dir() / "faults.txt";
    config.criterion = SlicingCriterion{14, "d1", static_cast<std::size_t>(-1)};
    config.strategy = BalanceKind::GanContext;
    config.formulas = {SflFormula::GP02};
    config.gan = quick_gan();
    config.seed = 42;

    const fs::path dir_a = fresh_dir("run_a");
    const fs::path dir_b = fresh_dir("run_b");
    config.out_dir = dir_a;
    const auto first = run_pipeline(config);
    config.out_dir = dir_b;
    run_pipeline(config);

    CHECK(first.context == std::vector<int>{1, 3, 7, 14});
    for (const char* name :
         {"ranking_gp02.csv", "balanced_matrix.txt", "synthetic_manifest.csv",
          "gan_training_log.csv", "report.json", "report.csv"}) {
        CAPTURE(name);
        CHECK(read_file(dir_a / name) == read_file(dir_b / name));
    }

    // on-disk artifacts re-parse with their defining modules
    const Dataset balanced = parse_matrix(read_file(dir_a / "balanced_matrix.txt"));
    CHECK(balanced.fail_count() == balanced.pass_count());
}

TEST_CASE("explicit criterion test must be failing") {
    PipelineConfig config;
    config.matrix_path = fixture_dir() / "matrix.txt";
    config.ddg_path = fixture_dir() / "ddg.txt";
    config.faults_path = fixture_dir() / "faults.txt";
    config.criterion = SlicingCriterion{14, "d1", 1};  // t2 passes
    config.strategy = BalanceKind::GanContext;
    config.gan = quick_gan();
    config.out_dir = fresh_dir("badtest");
    CHECK_THROWS_AS(run_pipeline(config), InputError);
}
