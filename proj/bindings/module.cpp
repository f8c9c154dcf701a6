#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dtclab/calibration.hpp"
#include "dtclab/ensemble.hpp"
#include "dtclab/heff.hpp"
#include "dtclab/protocols.hpp"
#include "dtclab/stats.hpp"

namespace py = pybind11;
using namespace dtc;

namespace {

GateMatrix gate_from_array(const py::array_t<cplx>& arr) {
    const auto buf = arr.unchecked<2>();
    GateMatrix g;
    if (buf.shape(0) == 2 && buf.shape(1) == 2) g.arity = 1;
    else if (buf.shape(0) == 4 && buf.shape(1) == 4) g.arity = 2;
    else throw std::invalid_argument("gate must be 2x2 or 4x4");
    for (int r = 0; r < g.dim(); ++r)
        for (int c = 0; c < g.dim(); ++c) g.at(r, c) = buf(r, c);
    return g;
}

py::array_t<cplx> gate_to_array(const GateMatrix& g) {
    py::array_t<cplx> arr({g.dim(), g.dim()});
    auto buf = arr.mutable_unchecked<2>();
    for (int r = 0; r < g.dim(); ++r)
        for (int c = 0; c < g.dim(); ++c) buf(r, c) = g.at(r, c);
    return arr;
}

py::array_t<cplx> amps_to_array(const StateVector& s) {
    py::array_t<cplx> arr(static_cast<py::ssize_t>(s.dim()));
    auto buf = arr.mutable_unchecked<1>();
    for (std::uint64_t k = 0; k < s.dim(); ++k) buf(static_cast<py::ssize_t>(k)) = s.amp(k);
    return arr;
}

py::array_t<double> autocorr_to_array(const std::vector<AutocorrSeries>& series) {
    const auto L = static_cast<py::ssize_t>(series.size());
    const auto T = static_cast<py::ssize_t>(series.front().values.size());
    py::array_t<double> arr({L, T});
    auto buf = arr.mutable_unchecked<2>();
    for (py::ssize_t q = 0; q < L; ++q)
        for (py::ssize_t t = 0; t < T; ++t)
            buf(q, t) = series[static_cast<std::size_t>(q)].values[static_cast<std::size_t>(t)];
    return arr;
}

}  // namespace

PYBIND11_MODULE(_dtclab, m) {
    m.doc() = "kicked-Ising chain simulation lab (C++ core)";

    py::class_<DisorderInstance>(m, "DisorderInstance")
        .def_readonly("length", &DisorderInstance::length)
        .def_readonly("g", &DisorderInstance::g)
        .def_readonly("seed", &DisorderInstance::seed)
        .def_readonly("phi", &DisorderInstance::phi)
        .def_readonly("h", &DisorderInstance::h)
        .def_property_readonly("uniform",
                               [](const DisorderInstance& i) { return i.mode == CouplingMode::uniform; })
        .def("__repr__", [](const DisorderInstance& i) {
            return "<DisorderInstance L=" + std::to_string(i.length) + " g=" + std::to_string(i.g) +
                   " seed=" + std::to_string(i.seed) + ">";
        });

    m.def("sample_disorder", &sample_disorder, py::arg("length"), py::arg("g"), py::arg("seed"));
    m.def("uniform_instance", &uniform_instance, py::arg("length"), py::arg("g"), py::arg("phi_bar"),
          py::arg("seed"));
    m.def(
        "make_instance",
        [](int length, double g, std::uint64_t seed, std::vector<double> phi, std::vector<double> h,
           bool uniform) {
            return make_instance(length, g, seed, std::move(phi), std::move(h),
                                 uniform ? CouplingMode::uniform : CouplingMode::disordered);
        },
        py::arg("length"), py::arg("g"), py::arg("seed"), py::arg("phi"), py::arg("h"),
        py::arg("uniform") = false);

    py::class_<FsimParams>(m, "FsimParams")
        .def(py::init([](double theta, double delta_plus, double delta_minus, double delta_minus_off,
                         double phi) {
                 return FsimParams{theta, delta_plus, delta_minus, delta_minus_off, phi};
             }),
             py::arg("theta") = 0.0, py::arg("delta_plus") = 0.0, py::arg("delta_minus") = 0.0,
             py::arg("delta_minus_off") = 0.0, py::arg("phi") = 0.0)
        .def_readwrite("theta", &FsimParams::theta)
        .def_readwrite("delta_plus", &FsimParams::delta_plus)
        .def_readwrite("delta_minus", &FsimParams::delta_minus)
        .def_readwrite("delta_minus_off", &FsimParams::delta_minus_off)
        .def_readwrite("phi", &FsimParams::phi);

    m.def("fsim_matrix", [](const FsimParams& p) { return gate_to_array(fsim_matrix(p)); });
    m.def("zz_gate_matrix", [](double phi) { return gate_to_array(zz_gate_matrix(phi)); });

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int>(), py::arg("num_qubits"))
        .def_static("bitstring", &StateVector::bitstring, py::arg("bits"))
        .def_static(
            "haar_random",
            [](int L, std::uint64_t seed) {
                Rng rng(seed);
                return StateVector::haar_random(L, rng);
            },
            py::arg("num_qubits"), py::arg("seed"))
        .def_property_readonly("num_qubits", &StateVector::num_qubits)
        .def_property_readonly("amps", &amps_to_array)
        .def("apply_1q", [](StateVector& s, int q, const py::array_t<cplx>& u) { s.apply_1q(q, gate_from_array(u)); })
        .def("apply_2q", [](StateVector& s, int q1, int q2, const py::array_t<cplx>& u) {
            s.apply_2q(q1, q2, gate_from_array(u));
        })
        .def("expect_z", &StateVector::expect_z)
        .def("expect_zz", &StateVector::expect_zz)
        .def("expect_x", &StateVector::expect_x)
        .def("expect_z_all", &StateVector::expect_z_all)
        .def("norm_sq", &StateVector::norm_sq);

    m.def("apply_cycle", [](StateVector& s, const DisorderInstance& inst) { apply_cycle(s, inst); });
    m.def("apply_inverse_cycle",
          [](StateVector& s, const DisorderInstance& inst) { apply_inverse_cycle(s, inst); });

    m.def(
        "run_autocorrelator",
        [](const DisorderInstance& inst, const std::vector<int>& bits, int t_max) {
            return autocorr_to_array(run_autocorrelator(inst, bits, t_max));
        },
        py::arg("instance"), py::arg("bits"), py::arg("t_max"),
        "A[qubit, t] = z(0) <Z(t)> for one initial bitstring");

    m.def(
        "run_echo_normalization",
        [](const DisorderInstance& inst, const std::vector<int>& bits, int t, double p,
           const std::string& placement) {
            NoiseModel n;
            n.p = p;
            n.placement = placement == "symmetric" ? NoiseModel::Placement::symmetric_per_cycle
                                                   : NoiseModel::Placement::after_two_qubit;
            const EchoResult r = run_echo_normalization(inst, bits, t, n);
            return py::make_tuple(r.a0, r.radicand, r.flagged);
        },
        py::arg("instance"), py::arg("bits"), py::arg("t"), py::arg("p") = 0.0,
        py::arg("placement") = std::string("after-2q"),
        "returns (A0 per qubit, radicand per qubit, flagged)");

    py::class_<ScramblerSpec>(m, "ScramblerSpec")
        .def_readonly("length", &ScramblerSpec::length)
        .def_readonly("depth", &ScramblerSpec::depth)
        .def_readonly("seed", &ScramblerSpec::seed);

    m.def("build_scrambler", &build_scrambler, py::arg("length"), py::arg("depth"), py::arg("seed"));
    m.def("apply_scrambler",
          [](StateVector& s, const ScramblerSpec& spec) { apply_scrambler(s, spec); });
    m.def("run_typicality", &run_typicality, py::arg("instance"), py::arg("scrambler"), py::arg("bits"),
          py::arg("qubit"), py::arg("t"));
    m.def(
        "typicality_spread",
        [](const DisorderInstance& inst, int depth, int qubit, int t, int n_bitstrings, std::uint64_t seed) {
            const SpreadStats st = typicality_spread(inst, depth, qubit, t, n_bitstrings, seed);
            py::dict d;
            d["n"] = st.n;
            d["mean"] = st.mean;
            d["sigma"] = st.sigma;
            d["ratio"] = st.ratio;
            d["flagged"] = st.flagged;
            d["samples"] = st.samples;
            return d;
        },
        py::arg("instance"), py::arg("depth"), py::arg("qubit"), py::arg("t"), py::arg("n_bitstrings"),
        py::arg("seed"));

    m.def(
        "run_perturbation",
        [](const DisorderInstance& inst, const std::vector<int>& bits, int flip_at, int t_max) {
            const ZetaField f = run_perturbation(inst, bits, flip_at, t_max);
            const auto T = static_cast<py::ssize_t>(f.zeta_r.size());
            const auto L = static_cast<py::ssize_t>(f.zeta_r.front().size());
            py::array_t<double> zr({T, L});
            auto buf = zr.mutable_unchecked<2>();
            for (py::ssize_t t = 0; t < T; ++t)
                for (py::ssize_t q = 0; q < L; ++q)
                    buf(t, q) = f.zeta_r[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
            return zr;
        },
        py::arg("instance"), py::arg("bits"), py::arg("flip_at"), py::arg("t_max"),
        "zeta_r[t, qubit]");

    m.def(
        "spin_glass_chi",
        [](const DisorderInstance& inst, const std::vector<int>& bits, int t_lo, int t_hi, double p,
           bool even_only) {
            NoiseModel n;
            n.p = p;
            return spin_glass_chi(inst, bits, t_lo, t_hi, n, even_only).chi;
        },
        py::arg("instance"), py::arg("bits"), py::arg("t_lo"), py::arg("t_hi"), py::arg("p") = 0.0,
        py::arg("even_times_only") = true);

    m.def("bitstring_energy_uniform", &bitstring_energy_uniform, py::arg("bits"), py::arg("phi_bar"));
    m.def(
        "bitstring_energy_disordered",
        [](const std::vector<int>& bits, const std::vector<double>& dphi) {
            return bitstring_energy_disordered(bits, dphi);
        },
        py::arg("bits"), py::arg("delta_phi"));
    m.def("delta_phi_of", &delta_phi_of, py::arg("instance"));
    m.def(
        "gauge_map",
        [](const DisorderInstance& inst, const std::vector<int>& bits) {
            const GaugeMappedInstance gm = gauge_map(inst, bits);
            return py::make_tuple(gm.phi_mapped, gm.h_mapped);
        },
        py::arg("instance"), py::arg("bits"), "returns (phi_mapped, h_mapped)");
    m.def("bch_residual", &bch_residual, py::arg("instance"));

    m.def(
        "simulate_theta",
        [](const FsimParams& p, int d, int grid_points) {
            std::vector<double> grid;
            for (int i = 0; i < grid_points; ++i)
                grid.push_back(kPi * static_cast<double>(i) / grid_points);
            const ThetaResult r = simulate_theta(p, d, grid);
            return py::make_tuple(r.fit.estimate, r.peak_to_peak, r.fit.flagged);
        },
        py::arg("params"), py::arg("d"), py::arg("grid_points") = 32,
        "returns (theta_estimate, peak_to_peak, flagged)");
    m.def(
        "simulate_delta_minus",
        [](const FsimParams& p, int d, int grid_points) {
            std::vector<double> grid;
            for (int i = 0; i < grid_points; ++i)
                grid.push_back(2.0 * kPi * static_cast<double>(i) / grid_points);
            return simulate_delta_minus(p, d, grid).fit.estimate;
        },
        py::arg("params"), py::arg("d") = 8, py::arg("grid_points") = 16);
    m.def(
        "simulate_phase_sums",
        [](const FsimParams& p, const std::vector<int>& depths, bool negative_branch) {
            const PhaseSumResult r = simulate_phase_sums(p, depths, negative_branch);
            return py::make_tuple(r.delta_plus.estimate, r.phi.estimate);
        },
        py::arg("params"), py::arg("depths"), py::arg("negative_phase_branch") = false,
        "returns (delta_plus, phi)");

    m.def(
        "jackknife",
        [](const std::vector<double>& samples) {
            const auto r = jackknife_mean(samples);
            return py::make_tuple(r.estimate, r.stderr_);
        },
        py::arg("samples"), "leave-one-out jackknife of the mean: (estimate, stderr)");
    m.def(
        "histogram_stats",
        [](const std::vector<double>& values, int bins) {
            const auto st = histogram_stats(values, bins);
            py::dict d;
            d["n"] = st.n;
            d["mean"] = st.mean;
            d["sigma"] = st.sigma;
            d["ratio"] = st.ratio;
            d["flagged"] = st.ratio_flagged;
            d["bin_edges"] = st.bin_edges;
            d["bin_counts"] = st.bin_counts;
            return d;
        },
        py::arg("values"), py::arg("bins") = 30);

    m.def(
        "run_ensemble",
        [](const std::string& config_json) {
            const RunConfig cfg = RunConfig::from_json(nlohmann::json::parse(config_json));
            const auto out = run_ensemble(cfg);
            return py::make_tuple(out.path, out.failures);
        },
        py::arg("config_json"), "run a protocol ensemble from a JSON config string");
}
