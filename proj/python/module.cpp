#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leibcheck/description.hpp"
#include "leibcheck/partitions.hpp"
#include "leibcheck/signs.hpp"
#include "leibcheck/suites.hpp"

namespace py = pybind11;
using namespace leibcheck;

namespace {

SuiteConfig make_config(int max_arity, unsigned long long seed,
                        const std::vector<std::string>& suites) {
    SuiteConfig config;
    config.max_arity = max_arity;
    config.seed = seed;
    config.suites = suites;
    return config;
}

LoadOptions make_options(std::optional<int> truncation, bool validate) {
    LoadOptions options;
    options.truncation_override = truncation;
    options.validate = validate;
    return options;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact checker for derived-bracket Leibniz transfer constructions";

    m.def(
        "run_report",
        [](const std::string& path, const std::vector<std::string>& suites, int max_arity,
           unsigned long long seed, std::optional<int> truncation, bool validate) {
            Session session = load_description(path, make_options(truncation, validate));
            SuiteConfig config = make_config(max_arity, seed, suites);
            RunResult result = run_suites(session, config);
            return py::make_tuple(result.json_report(config, path), result.exit_code());
        },
        py::arg("path"), py::arg("suites") = std::vector<std::string>{},
        py::arg("max_arity") = 5, py::arg("seed") = 1,
        py::arg("truncation") = std::nullopt, py::arg("validate") = true,
        "Run verification suites on a description file; returns (json_report, exit_code).");

    m.def(
        "b_tables_report",
        [](const std::string& path, int max_arity, std::optional<int> truncation) {
            Session session = load_description(path, make_options(truncation, true));
            return describe_b_tables(compute_b_tables(session, max_arity));
        },
        py::arg("path"), py::arg("max_arity") = 4, py::arg("truncation") = std::nullopt,
        "Compute the transfer Taylor tables of a description file as a document string.");

    m.def(
        "session_report",
        [](const std::string& path, bool validate) {
            return describe_session(load_description(path, make_options(std::nullopt, validate)));
        },
        py::arg("path"), py::arg("validate") = true,
        "Reserialize a description file after validation.");

    m.def("suite_names", [] { return suite_names(); });

    m.def(
        "respectful_count",
        [](int n, int j) { return static_cast<long>(respectful_partitions(n, j).size()); },
        py::arg("n"), py::arg("j"),
        "Number of ordered partitions of [1;n] into j blocks with increasing maxima.");

    m.def(
        "respectful_blocks",
        [](int n, int j) {
            std::vector<std::vector<std::vector<int>>> out;
            for (const auto& p : respectful_partitions(n, j)) out.push_back(p.blocks);
            return out;
        },
        py::arg("n"), py::arg("j"));

    m.def(
        "koszul_sign",
        [](const std::vector<int>& degrees, const std::vector<std::vector<int>>& blocks) {
            SignContext ctx{degrees};
            BlockPartition partition{static_cast<int>(degrees.size()), blocks};
            return koszul_sign(ctx, partition);
        },
        py::arg("degrees"), py::arg("blocks"),
        "Koszul sign of the block shuffle for letters of the given degrees.");

    m.def(
        "insertion_sign",
        [](const std::vector<int>& degrees, int operator_degree,
           const std::vector<int>& positions) {
            SignContext ctx{degrees};
            return epsilon_insertion(ctx, operator_degree, positions);
        },
        py::arg("degrees"), py::arg("operator_degree"), py::arg("positions"),
        "Sign of carrying a coderivation coefficient to the last extracted slot.");

    py::register_exception<DescriptionError>(m, "DescriptionError");
    py::register_exception<ValidationError>(m, "ValidationError");
}
