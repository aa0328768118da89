#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "revcap/capacity.hpp"
#include "revcap/cli.hpp"
#include "revcap/verify.hpp"

namespace py = pybind11;
using namespace revcap;

namespace {

using Rows = std::vector<std::vector<complex>>;

ComplexMatrix matrix_from_rows(const Rows& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix: empty row list");
    ComplexMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols)
            throw std::invalid_argument("matrix: ragged row list");
        for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Rows rows_from_matrix(const ComplexMatrix& m) {
    Rows rows(m.rows, std::vector<complex>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) rows[i][j] = m(i, j);
    return rows;
}

Measure measure_from_string(const std::string& s) {
    if (s == "ci") return Measure::ci;
    if (s == "rci") return Measure::rci;
    throw std::invalid_argument("measure must be 'ci' or 'rci'");
}

Family family_from_string(const std::string& s) {
    if (s == "ad") return Family::ad;
    if (s == "gad") return Family::gad;
    if (s == "erasure") return Family::erasure;
    if (s == "identity") return Family::identity;
    if (s == "random") return Family::random;
    throw std::invalid_argument("unknown channel family: " + s);
}

ChannelSpec spec_of(const std::string& family, double eta, double alpha) {
    ChannelSpec spec;
    spec.family = family_from_string(family);
    spec.eta = eta;
    spec.alpha = alpha;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_revcap, m) {
    m.doc() = "coherent and reverse coherent information of small quantum channels";

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const Rows& rows) { return DensityMatrix::from_matrix(matrix_from_rows(rows)); }),
             py::arg("rows"))
        .def_readonly("dim", &DensityMatrix::dim)
        .def("to_list", [](const DensityMatrix& rho) { return rows_from_matrix(rho.matrix); })
        .def("eigenvalues",
             [](const DensityMatrix& rho) { return hermitian_eigenvalues(rho.matrix).values; });

    m.def("diagonal_state",
          [](const std::vector<double>& populations) { return diagonal_state(populations); },
          py::arg("populations"));
    m.def("random_density", &random_density, py::arg("dim"), py::arg("rank"), py::arg("seed"));

    py::class_<KrausChannel>(m, "KrausChannel")
        .def(py::init([](int in_dim, int out_dim, const std::vector<Rows>& kraus) {
                 std::vector<ComplexMatrix> ops;
                 ops.reserve(kraus.size());
                 for (const auto& rows : kraus) ops.push_back(matrix_from_rows(rows));
                 return make_kraus_channel(in_dim, out_dim, std::move(ops));
             }),
             py::arg("in_dim"), py::arg("out_dim"), py::arg("kraus"))
        .def_readonly("in_dim", &KrausChannel::in_dim)
        .def_readonly("out_dim", &KrausChannel::out_dim)
        .def("kraus",
             [](const KrausChannel& ch) {
                 std::vector<Rows> out;
                 out.reserve(ch.kraus.size());
                 for (const auto& e : ch.kraus) out.push_back(rows_from_matrix(e));
                 return out;
             })
        .def("choi", [](const KrausChannel& ch) { return rows_from_matrix(choi(ch).matrix); });

    m.def("make_identity", &make_identity, py::arg("dim") = 2);
    m.def("make_ad", &make_ad, py::arg("eta"));
    m.def("make_gad", [](double eta, double alpha) { return make_gad(eta, alpha).channel; },
          py::arg("eta"), py::arg("alpha"));
    m.def("make_erasure", &make_erasure, py::arg("epsilon"));
    m.def("random_channel", &random_channel, py::arg("in_dim"), py::arg("out_dim"),
          py::arg("env_dim"), py::arg("seed"));

    m.def("apply", &apply, py::arg("channel"), py::arg("rho"));
    m.def("compose", &compose, py::arg("second"), py::arg("first"));
    m.def("tensor_channels", &tensor_channels, py::arg("a"), py::arg("b"));
    m.def("complementary", &complementary, py::arg("channel"));
    m.def("gad_env_qubit_channel", &gad_env_qubit_channel, py::arg("eta"), py::arg("alpha"));
    m.def("choi_distance", &choi_distance, py::arg("a"), py::arg("b"));

    m.def("binary_entropy", &binary_entropy, py::arg("x"));
    m.def("shannon_entropy",
          [](const std::vector<double>& p) { return shannon_entropy(p); }, py::arg("p"));
    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
    m.def("coherent_information",
          [](const KrausChannel& ch, const DensityMatrix& rho) {
              return coherent_information(ch, rho).value;
          },
          py::arg("channel"), py::arg("rho"));
    m.def("reverse_coherent_information",
          [](const KrausChannel& ch, const DensityMatrix& rho) {
              return reverse_coherent_information(ch, rho).value;
          },
          py::arg("channel"), py::arg("rho"));
    m.def("rci_via_environment",
          [](const KrausChannel& ch, const DensityMatrix& rho) {
              return rci_via_environment(ch, rho).value;
          },
          py::arg("channel"), py::arg("rho"));

    m.def("lambda_pm", &lambda_pm, py::arg("x"), py::arg("p"), py::arg("theta"));
    m.def("ad_closed_form",
          [](double eta, double p, double theta, const std::string& measure) {
              return ad_closed_form(eta, InputParams{p, theta, 0.0}, measure_from_string(measure)).value;
          },
          py::arg("eta"), py::arg("p"), py::arg("theta"), py::arg("measure"));
    m.def("gad_closed_form",
          [](double eta, double alpha, double p, double theta, const std::string& measure) {
              return gad_closed_form(eta, alpha, InputParams{p, theta, 0.0},
                                     measure_from_string(measure))
                  .value;
          },
          py::arg("eta"), py::arg("alpha"), py::arg("p"), py::arg("theta"), py::arg("measure"));
    m.def("gad_diag_eigenvalues",
          [](double eta, double alpha, double p) { return gad_diag_eigenvalues(eta, alpha, p).values; },
          py::arg("eta"), py::arg("alpha"), py::arg("p"));
    m.def("derivative_dtheta",
          [](const std::string& family, const std::string& measure, double eta, double alpha,
             double p, double theta) {
              const ClosedFamily fam = family == "ad" ? ClosedFamily::ad : ClosedFamily::gad;
              return derivative_dtheta(fam, measure_from_string(measure), eta, alpha,
                                       InputParams{p, theta, 0.0})
                  .total;
          },
          py::arg("family"), py::arg("measure"), py::arg("eta"), py::arg("alpha"), py::arg("p"),
          py::arg("theta"));
    m.def("extremum_scan",
          [](const std::string& family, const std::string& measure, double eta, double alpha,
             double p, int grid_n) {
              const ClosedFamily fam = family == "ad" ? ClosedFamily::ad : ClosedFamily::gad;
              const ThetaScan scan =
                  extremum_scan(fam, measure_from_string(measure), eta, alpha, p, grid_n);
              std::vector<std::pair<double, std::string>> out;
              for (const auto& e : scan.extrema) {
                  const char* kind = e.kind == ExtremumKind::maximum   ? "max"
                                     : e.kind == ExtremumKind::minimum ? "min"
                                                                       : "degenerate";
                  out.emplace_back(e.theta, kind);
              }
              return out;
          },
          py::arg("family"), py::arg("measure"), py::arg("eta"), py::arg("alpha"), py::arg("p"),
          py::arg("grid_n") = 256);

    py::class_<OptimizationResult>(m, "OptimizationResult")
        .def_readonly("argmax_p", &OptimizationResult::argmax_p)
        .def_readonly("value", &OptimizationResult::value)
        .def_readonly("raw_value", &OptimizationResult::raw_value)
        .def_readonly("evaluations", &OptimizationResult::evaluations)
        .def_readonly("refined", &OptimizationResult::refined);

    m.def("optimize_population",
          [](const std::string& family, double eta, double alpha, const std::string& measure,
             double tol) {
              return optimize_population(spec_of(family, eta, alpha), measure_from_string(measure), tol);
          },
          py::arg("family"), py::arg("eta"), py::arg("alpha"), py::arg("measure"),
          py::arg("tol") = 1e-9);
    m.def("capacity_curve",
          [](const std::string& family, double eta_from, double eta_to, int steps,
             std::optional<double> alpha, int jobs) {
              const auto rows =
                  capacity_curve(family_from_string(family), eta_from, eta_to, steps, alpha, jobs);
              std::vector<std::map<std::string, double>> out;
              out.reserve(rows.size());
              for (const auto& r : rows) {
                  std::map<std::string, double> row{{"eta", r.eta},
                                                    {"value_ci", r.value_ci},
                                                    {"p_ci", r.p_ci},
                                                    {"value_rci", r.value_rci},
                                                    {"p_rci", r.p_rci}};
                  if (r.alpha) row["alpha"] = *r.alpha;
                  out.push_back(std::move(row));
              }
              return out;
          },
          py::arg("family"), py::arg("eta_from"), py::arg("eta_to"), py::arg("steps"),
          py::arg("alpha") = std::nullopt, py::arg("jobs") = 1);
    m.def("noise_threshold",
          [](const std::string& measure, double eta, double tol) {
              return noise_threshold(measure_from_string(measure), eta, tol);
          },
          py::arg("measure"), py::arg("eta"), py::arg("tol") = 1e-7);
    m.def("erasure_reference", &erasure_reference, py::arg("epsilon"), py::arg("p"));

    py::class_<ViolationReport>(m, "ViolationReport")
        .def_readonly("lhs", &ViolationReport::lhs)
        .def_readonly("rhs", &ViolationReport::rhs)
        .def_readonly("margin", &ViolationReport::margin)
        .def_readonly("witness", &ViolationReport::witness)
        .def_readonly("violated", &ViolationReport::violated)
        .def_readonly("domain_flag", &ViolationReport::domain_flag)
        .def_readonly("note", &ViolationReport::note);

    m.def("check_degradable_ad", &check_degradable_ad, py::arg("eta"));
    m.def("check_antidegradable_gad", &check_antidegradable_gad, py::arg("eta"), py::arg("alpha"));
    m.def("additivity_check",
          py::overload_cast<const KrausChannel&, const DensityMatrix&>(&additivity_check),
          py::arg("channel"), py::arg("joint_input"));
    m.def("dpi_probe", &dpi_probe, py::arg("first"), py::arg("post"), py::arg("rho"));

    py::class_<verify::SuiteReport>(m, "SuiteReport")
        .def_readonly("name", &verify::SuiteReport::name)
        .def_readonly("cases", &verify::SuiteReport::cases)
        .def_readonly("failures", &verify::SuiteReport::failures)
        .def_readonly("details", &verify::SuiteReport::details)
        .def_readonly("wall_seconds", &verify::SuiteReport::wall_seconds);

    m.def("verify_suite_names", [] { return verify::suite_names(); });
    m.def("run_verify_suite",
          [](const std::string& name, int jobs, std::uint64_t seed, double tolerance_scale) {
              verify::VerifyOptions opts;
              opts.jobs = jobs;
              opts.seed = seed;
              opts.tolerance_scale = tolerance_scale;
              return verify::run_suite(name, opts);
          },
          py::arg("name"), py::arg("jobs") = 1, py::arg("seed") = 20250811,
          py::arg("tolerance_scale") = 1.0);
}
