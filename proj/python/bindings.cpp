#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cgfl/pipeline.hpp"

namespace py = pybind11;
using namespace cgfl;

namespace {

py::dict report_to_dict(const EvaluationReport& report) {
    py::dict out;
    py::list versions;
    for (const auto& v : report.versions) {
        py::dict entry;
        entry["version"] = v.version;
        entry["first_rank"] = v.first_rank;
        entry["avg_rank"] = v.avg_rank;
        versions.append(entry);
    }
    out["versions"] = versions;
    out["top1"] = report.top1;
    out["top5"] = report.top5;
    out["top10"] = report.top10;
    out["mfr"] = report.mfr;
    out["mar"] = report.mar;
    return out;
}

}  // namespace

PYBIND11_MODULE(_cgfl, m) {
    m.doc() = "Coverage-based fault localization core";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<TrainingError>(m, "TrainingError", PyExc_RuntimeError);
    py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_ValueError);

    m.def(
        "matrix_summary",
        [](const std::string& text) {
            const Dataset ds = parse_matrix(text);
            py::dict out;
            out["tests"] = ds.test_count();
            out["statements"] = ds.statement_count();
            out["failing"] = ds.fail_count();
            out["passing"] = ds.pass_count();
            return out;
        },
        py::arg("text"), "Parse a coverage matrix and return its shape.");

    m.def(
        "scores",
        [](const std::string& matrix_text, const std::string& formula) {
            const Dataset ds = parse_matrix(matrix_text);
            return sfl_score(formula_from(formula), spectrum_counts(ds));
        },
        py::arg("matrix_text"), py::arg("formula"),
        "Per-statement suspiciousness for one formula.");

    m.def(
        "ranking",
        [](const std::string& matrix_text, const std::string& formula) {
            const Dataset ds = parse_matrix(matrix_text);
            const auto listing = ranked_listing(
                ds.statement_ids,
                sfl_score(formula_from(formula), spectrum_counts(ds)));
            py::list out;
            for (const auto& r : listing)
                out.append(py::make_tuple(r.statement, r.score, r.rank));
            return out;
        },
        py::arg("matrix_text"), py::arg("formula"),
        "(statement, score, worst-case rank) triples, best first.");

    m.def(
        "backward_slice",
        [](const std::string& ddg_text, int out_stm) {
            return backward_slice(parse_ddg(ddg_text), {out_stm, "", 0});
        },
        py::arg("ddg_text"), py::arg("out_stm"),
        "Statements reaching out_stm through dependence edges.");

    m.def(
        "wilcoxon",
        [](const std::vector<std::pair<double, double>>& pairs) {
            const auto r = wilcoxon_signed_rank(pairs);
            py::dict out;
            out["less"] = r.less;
            out["greater"] = r.greater;
            out["two_sided"] = r.two_sided;
            out["nonzero"] = r.nonzero;
            out["exact"] = r.exact;
            return out;
        },
        py::arg("pairs"), "Paired Wilcoxon signed-rank test p-values.");

    m.def(
        "run",
        [](const std::filesystem::path& matrix, const std::filesystem::path& out_dir,
           const std::string& strategy, const std::vector<std::string>& formulas,
           std::optional<std::filesystem::path> ddg,
           std::optional<std::filesystem::path> faults, std::optional<int> criterion,
           bool dlfl, std::uint64_t seed, std::size_t gan_epochs,
           std::size_t gan_latent, std::size_t gan_hidden) {
            PipelineConfig config;
            config.matrix_path = matrix;
            config.out_dir = out_dir;
            config.strategy = balance_kind_from(strategy);
            config.formulas.clear();
            for (const auto& f : formulas)
                config.formulas.push_back(formula_from(f));
            config.ddg_path = ddg;
            config.faults_path = faults;
            if (criterion)
                config.criterion = SlicingCriterion{
                    *criterion, "", static_cast<std::size_t>(-1)};
            config.dlfl = dlfl;
            config.seed = seed;
            config.gan.epochs = gan_epochs;
            config.gan.latent_dim = gan_latent;
            config.gan.hidden_width = gan_hidden;
            const auto result = run_pipeline(config);
            py::dict out;
            out["report"] = report_to_dict(result.report);
            out["context"] = result.context;
            py::list names;
            for (const auto& [name, ranking] : result.rankings) names.append(name);
            out["localizers"] = names;
            return out;
        },
        py::arg("matrix"), py::arg("out_dir"), py::arg("strategy") = "none",
        py::arg("formulas") = std::vector<std::string>{"ochiai"},
        py::arg("ddg") = std::nullopt, py::arg("faults") = std::nullopt,
        py::arg("criterion") = std::nullopt, py::arg("dlfl") = false,
        py::arg("seed") = 0, py::arg("gan_epochs") = 1000,
        py::arg("gan_latent") = 100, py::arg("gan_hidden") = 128,
        "Full pipeline run; writes artifacts under out_dir.");
}
