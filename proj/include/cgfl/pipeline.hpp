#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cgfl/augment.hpp"
#include "cgfl/evaluate.hpp"
#include "cgfl/localize.hpp"
#include "cgfl/slicing.hpp"

namespace cgfl {

struct PipelineConfig {
    std::filesystem::path matrix_path;
    std::optional<std::filesystem::path> errors_path;
    std::optional<std::filesystem::path> ddg_path;
    std::optional<std::filesystem::path> faults_path;
    // Criterion as given on the CLI; fail_test is 1-based there and converted
    // on parse. When absent with the GAN strategy, the criterion test is
    // auto-selected and the statement defaults to the last context candidate.
    std::optional<SlicingCriterion> criterion;
    BalanceKind strategy = BalanceKind::None;
    std::vector<SflFormula> formulas{SflFormula::Ochiai};
    bool dlfl = false;
    GanConfig gan{};
    TrainConfig mlp{0.05, 32, 200, 0};
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = ".";
    std::string version = "v1";
};

struct PipelineResult {
    EvaluationReport report;
    // (localizer name, full-program ranking) per requested formula / dlfl.
    std::vector<std::pair<std::string, std::vector<RankedStatement>>> rankings;
    std::vector<int> context;  // empty unless the GAN strategy ran
};

// Full run: parse -> validate -> select criterion test -> backward slice ->
// project context -> balance -> score -> rank -> evaluate. Writes per-
// localizer ranking CSVs, the balanced matrix, the GAN training log, and
// report.json under config.out_dir.
PipelineResult run_pipeline(const PipelineConfig& config);

// Faults file: faulty statement ids, whitespace separated; '#' comments.
FaultSpec parse_faults(std::string_view text, std::string version);

// First/average rank of the faulty statements within one full ranking.
VersionResult score_version(const std::vector<RankedStatement>& ranking,
                            const FaultSpec& faults);

struct FixtureSpec {
    std::size_t tests = 6;
    std::size_t statements = 16;
    std::size_t context_size = 4;
    std::size_t fail_count = 2;
    std::uint64_t seed = 7;
};

// Emits matrix.txt, ddg.txt and faults.txt for a synthetic faulty program:
// the faulty statement sits on a generated dependence chain and failing
// rows share a fixed coverage pattern over the context. Deterministic in
// the seed, byte for byte.
void gen_fixture(const FixtureSpec& spec, const std::filesystem::path& out_dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cgfl
