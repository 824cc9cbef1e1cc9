// pybind11 surface for the iqsim core. Vectors of complex samples map to
// python lists; the sweep harness is exposed through SimConfig/RunResult.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iqsim/errors.hpp"
#include "iqsim/harness.hpp"

namespace py = pybind11;
using namespace iqsim;

namespace {

Rng make_rng(std::uint64_t seed) { return Rng(seed); }

} // namespace

PYBIND11_MODULE(_iqsim, m) {
    m.doc() = "Subspace IQ-imbalance estimation for low-IF receivers (C++ core)";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "IqsimError");

    py::class_<Rng>(m, "Rng")
        .def(py::init(&make_rng), py::arg("seed"))
        .def("uniform01", &Rng::uniform01)
        .def("gaussian", &Rng::gaussian);

    // numerics
    py::class_<ComplexMatrix>(m, "ComplexMatrix")
        .def_readonly("rows", &ComplexMatrix::rows)
        .def_readonly("cols", &ComplexMatrix::cols)
        .def_readonly("data", &ComplexMatrix::data);
    py::class_<ProjectionBasis>(m, "ProjectionBasis")
        .def_readonly("q", &ProjectionBasis::q)
        .def_readonly("pilot_len", &ProjectionBasis::pilot_len);
    m.def("hermitian_dot",
          [](const ComplexVector& a, const ComplexVector& b) { return hermitian_dot(a, b); });
    m.def("null_projector", [](const ComplexVector& p) { return null_projector(p); });
    m.def("orthonormalize", &orthonormalize);
    m.def("pilot_basis", [](const ComplexVector& p) { return pilot_basis(p); });

    // waveforms
    py::class_<FrameConfig>(m, "FrameConfig")
        .def(py::init([](int pilot_len, int data_len, int zc_root, int frames_per_run) {
                 return FrameConfig{pilot_len, data_len, zc_root, frames_per_run};
             }),
             py::arg("pilot_len") = 8, py::arg("data_len") = 48, py::arg("zc_root") = 1,
             py::arg("frames_per_run") = 1)
        .def_readwrite("pilot_len", &FrameConfig::pilot_len)
        .def_readwrite("data_len", &FrameConfig::data_len)
        .def_readwrite("zc_root", &FrameConfig::zc_root)
        .def_readwrite("frames_per_run", &FrameConfig::frames_per_run)
        .def("frame_len", &FrameConfig::frame_len);
    py::class_<Frame>(m, "Frame")
        .def_readonly("pilot", &Frame::pilot)
        .def_readonly("data", &Frame::data)
        .def_readonly("samples", &Frame::samples);
    m.def("zadoff_chu", &zadoff_chu, py::arg("length"), py::arg("root"));
    m.def("qam64_symbols", &qam64_symbols, py::arg("count"), py::arg("rng"));
    m.def("qam64_constellation", &qam64_constellation);
    m.def("build_frame", &build_frame, py::arg("cfg"), py::arg("rng"));

    // channel
    py::class_<ChannelConfig>(m, "ChannelConfig")
        .def(py::init([](double doppler_hz, double sample_time_s, int oscillators,
                         bool unit_power) {
                 return ChannelConfig{doppler_hz, sample_time_s, oscillators, unit_power};
             }),
             py::arg("doppler_hz") = 100.0, py::arg("sample_time_s") = 2e-6,
             py::arg("oscillators") = 16, py::arg("unit_power") = true)
        .def_readwrite("doppler_hz", &ChannelConfig::doppler_hz)
        .def_readwrite("sample_time_s", &ChannelConfig::sample_time_s)
        .def_readwrite("oscillators", &ChannelConfig::oscillators)
        .def_readwrite("unit_power", &ChannelConfig::unit_power);
    py::class_<FadingProcess>(m, "FadingProcess")
        .def_readonly("coefficients", &FadingProcess::coefficients);
    m.def("jakes_fading", &jakes_fading, py::arg("cfg"), py::arg("length"), py::arg("rng"));
    m.def("awgn", &awgn, py::arg("length"), py::arg("variance_per_sample"), py::arg("rng"));
    m.def("apply_flat_fading", [](const ComplexVector& x, const FadingProcess& f) {
        return apply_flat_fading(x, f);
    });

    // impairment
    py::class_<IqiParams>(m, "IqiParams")
        .def_readonly("gain_imbalance_db", &IqiParams::gain_imbalance_db)
        .def_readonly("theta_rad", &IqiParams::theta_rad)
        .def_readonly("mu", &IqiParams::mu)
        .def_readonly("nu", &IqiParams::nu);
    m.def("iqi_params", &iqi_params, py::arg("gain_imbalance_db"), py::arg("theta_rad"));
    py::class_<ObservationPair>(m, "ObservationPair")
        .def_readonly("d", &ObservationPair::d)
        .def_readonly("g", &ObservationPair::g)
        .def_readonly("truth_s_in_d", &ObservationPair::truth_s_in_d)
        .def_readonly("truth_i_in_d", &ObservationPair::truth_i_in_d)
        .def_readonly("truth_s_in_g", &ObservationPair::truth_s_in_g)
        .def_readonly("truth_i_in_g", &ObservationPair::truth_i_in_g)
        .def_readonly("sir_in_db", &ObservationPair::sir_in_db)
        .def_readonly("snr_db", &ObservationPair::snr_db)
        .def("__len__", &ObservationPair::size);
    m.def("mix_baseband", [](const ComplexVector& s, const ComplexVector& i,
                             const IqiParams& p) { return mix_baseband(s, i, p); });
    m.def("image_rejection_ratio_db", &image_rejection_ratio_db);
    py::class_<IfChainConfig>(m, "IfChainConfig")
        .def(py::init<>())
        .def_readwrite("oversample_factor", &IfChainConfig::oversample_factor)
        .def_readwrite("f_if_norm", &IfChainConfig::f_if_norm)
        .def_readwrite("lpf_taps", &IfChainConfig::lpf_taps)
        .def_readwrite("self_check", &IfChainConfig::self_check)
        .def_readwrite("check_tol_db", &IfChainConfig::check_tol_db);
    m.def("if_chain_reference",
          [](const ComplexVector& s, const ComplexVector& i, const IqiParams& p,
             const IfChainConfig& cfg) { return if_chain_reference(s, i, p, cfg); },
          py::arg("s"), py::arg("i"), py::arg("params"), py::arg("cfg") = IfChainConfig{});
    m.def("if_chain_transient", &if_chain_transient);
    m.def("make_interference", &make_interference, py::arg("length"), py::arg("sir_in_db"),
          py::arg("signal_power"), py::arg("chan"), py::arg("rng"),
          py::arg("noise_variance") = 0.0);
    m.def("relative_error_db",
          [](const ComplexVector& a, const ComplexVector& ref, std::size_t skip) {
              return relative_error_db(a, ref, skip);
          },
          py::arg("a"), py::arg("ref"), py::arg("skip_edges") = 0);

    // estimation
    py::enum_<EstimationMethod>(m, "EstimationMethod")
        .value("SUBSPACE_PRODUCT", EstimationMethod::SubspaceProduct)
        .value("SUBSPACE_LSE", EstimationMethod::SubspaceLse)
        .value("BLIND", EstimationMethod::Blind)
        .value("UNCOMPENSATED", EstimationMethod::Uncompensated);
    py::class_<SegmentationPlan>(m, "SegmentationPlan")
        .def_static("for_pilot", &SegmentationPlan::for_pilot, py::arg("pilot_len"),
                    py::arg("segments"), py::arg("coherence_len") = 0)
        .def_readwrite("segments", &SegmentationPlan::segments)
        .def_readwrite("segment_len", &SegmentationPlan::segment_len)
        .def_readwrite("coherence_len", &SegmentationPlan::coherence_len);
    py::class_<ProjectedPair>(m, "ProjectedPair")
        .def_readonly("w1", &ProjectedPair::w1)
        .def_readonly("w2", &ProjectedPair::w2);
    py::class_<IqiEstimate>(m, "IqiEstimate")
        .def_readonly("mu_hat", &IqiEstimate::mu_hat)
        .def_readonly("nu_hat", &IqiEstimate::nu_hat)
        .def_readonly("mu_nu_product", &IqiEstimate::mu_nu_product)
        .def_readonly("method", &IqiEstimate::method)
        .def_readonly("samples_used", &IqiEstimate::samples_used)
        .def_readonly("clamped", &IqiEstimate::clamped);
    m.def("identity_estimate", &identity_estimate);
    m.def("project_training", [](const ComplexVector& d, const ComplexVector& g,
                                 const ProjectionBasis& b) { return project_training(d, g, b); });
    m.def("estimate_product", &estimate_product);
    py::class_<NuSolution>(m, "NuSolution")
        .def_readonly("nu", &NuSolution::nu)
        .def_readonly("mu", &NuSolution::mu)
        .def_readonly("clamped", &NuSolution::clamped);
    m.def("solve_nu", &solve_nu);
    m.def("estimate_lse_ratio", &estimate_lse_ratio);
    m.def("solve_nu_from_ratio", &solve_nu_from_ratio);
    m.def("estimate_blind", [](const ComplexVector& d, const ComplexVector& g) {
        return estimate_blind(d, g);
    });
    m.def("compensate", [](const ComplexVector& d, const ComplexVector& g,
                           const IqiEstimate& est) { return compensate(d, g, est); });
    m.def("run_subspace_estimator", &run_subspace_estimator, py::arg("obs"), py::arg("cfg"),
          py::arg("plan"), py::arg("frames"),
          py::arg("method") = EstimationMethod::SubspaceProduct);

    // metrics
    py::class_<CdfCurve>(m, "CdfCurve")
        .def_readonly("values", &CdfCurve::values)
        .def_readonly("probabilities", &CdfCurve::probabilities);
    m.def("output_sir_closed_form", &output_sir_closed_form);
    m.def("output_sir_empirical", &output_sir_empirical);
    py::class_<NmseResult>(m, "NmseResult")
        .def_readonly("value", &NmseResult::value)
        .def_readonly("absolute", &NmseResult::absolute);
    m.def("estimator_nmse", &estimator_nmse);
    m.def("build_cdf", &build_cdf);
    m.def("cap_sir_db", &cap_sir_db);

    // harness
    py::enum_<Recipe>(m, "Recipe").value("FIG3", Recipe::Fig3).value("FIG4", Recipe::Fig4);
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("snr_db", &SimConfig::snr_db)
        .def_readwrite("sir_in_db", &SimConfig::sir_in_db)
        .def_readwrite("frames", &SimConfig::frames)
        .def_readwrite("trials", &SimConfig::trials)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("frame", &SimConfig::frame)
        .def_readwrite("channel", &SimConfig::channel)
        .def_readwrite("gain_imbalance_db", &SimConfig::gain_imbalance_db)
        .def_readwrite("theta_deg", &SimConfig::theta_deg)
        .def_readwrite("segments", &SimConfig::segments)
        .def_readwrite("methods", &SimConfig::methods)
        .def_readwrite("threads", &SimConfig::threads);
    py::class_<Cell>(m, "Cell")
        .def_readonly("method", &Cell::method)
        .def_readonly("snr_db", &Cell::snr_db)
        .def_readonly("sir_in_db", &Cell::sir_in_db)
        .def_readonly("frames", &Cell::frames);
    py::class_<CellSummary>(m, "CellSummary")
        .def_readonly("median_db", &CellSummary::median_db)
        .def_readonly("p10_db", &CellSummary::p10_db)
        .def_readonly("p90_db", &CellSummary::p90_db)
        .def_readonly("nmse_median", &CellSummary::nmse_median)
        .def_readonly("clamp_rate", &CellSummary::clamp_rate)
        .def_readonly("trials", &CellSummary::trials)
        .def_readonly("failures", &CellSummary::failures)
        .def_readonly("all_failed", &CellSummary::all_failed);
    py::class_<CellResult>(m, "CellResult")
        .def_readonly("cell", &CellResult::cell)
        .def_readonly("cdf", &CellResult::cdf)
        .def_readonly("samples_db", &CellResult::samples_db)
        .def_readonly("summary", &CellResult::summary);
    py::class_<RunResult>(m, "RunResult")
        .def_readonly("config", &RunResult::config)
        .def_readonly("cells", &RunResult::cells)
        .def_readonly("version", &RunResult::version);
    m.def("run_sweep", &run_sweep, py::call_guard<py::gil_scoped_release>());
    m.def("export_csv", &export_csv);
    m.def("export_json", &export_json);
    m.def("export_result", &export_result);
    m.def("make_recipe", &make_recipe, py::arg("recipe"), py::arg("seed"),
          py::arg("trials") = 2000);
    m.def("summary_table", &summary_table);
    m.def("method_name", &method_name);

    m.attr("__all__") = py::make_tuple(
        "Rng", "ComplexMatrix", "ProjectionBasis", "hermitian_dot", "null_projector",
        "orthonormalize", "pilot_basis", "FrameConfig", "Frame", "zadoff_chu", "qam64_symbols",
        "qam64_constellation", "build_frame", "ChannelConfig", "FadingProcess", "jakes_fading",
        "awgn", "apply_flat_fading", "IqiParams", "iqi_params", "ObservationPair", "mix_baseband",
        "image_rejection_ratio_db", "IfChainConfig", "if_chain_reference", "if_chain_transient",
        "make_interference", "relative_error_db", "EstimationMethod", "SegmentationPlan",
        "ProjectedPair", "IqiEstimate", "identity_estimate", "project_training",
        "estimate_product", "NuSolution", "solve_nu", "estimate_lse_ratio", "solve_nu_from_ratio",
        "estimate_blind", "compensate", "run_subspace_estimator", "CdfCurve",
        "output_sir_closed_form", "output_sir_empirical", "NmseResult", "estimator_nmse",
        "build_cdf", "cap_sir_db", "Recipe", "SimConfig", "Cell", "CellSummary", "CellResult",
        "RunResult", "run_sweep", "export_csv", "export_json", "export_result", "make_recipe",
        "summary_table", "method_name", "IqsimError");
}
