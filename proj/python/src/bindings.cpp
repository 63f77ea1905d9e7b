#include "bekk/covariance.hpp"
#include "bekk/error.hpp"
#include "bekk/extremes.hpp"
#include "bekk/io.hpp"
#include "bekk/model.hpp"
#include "bekk/simulate.hpp"
#include "bekk/stationarity.hpp"
#include "bekk/tails.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace bekk;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
    if (a.ndim() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a 2-D array");
    Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::memcpy(m.data().data(), a.data(), sizeof(double) * m.data().size());
    return m;
}

Array from_matrix(const Matrix& m) {
    Array out({m.rows(), m.cols()});
    std::memcpy(out.mutable_data(), m.data().data(), sizeof(double) * m.data().size());
    return out;
}

Array path_array(const PathSample& p) {
    Array out({p.T, p.d});
    if (!p.data.empty()) std::memcpy(out.mutable_data(), p.data.data(), sizeof(double) * p.data.size());
    return out;
}

PathSample to_path(const Array& a) {
    if (a.ndim() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a (T, d) array");
    std::vector<double> data(a.data(), a.data() + a.size());
    return make_path(static_cast<std::size_t>(a.shape(1)), std::move(data));
}

std::vector<double> to_vector(const Array& a) { return {a.data(), a.data() + a.size()}; }

ModelSpec make_spec(const std::vector<Array>& A, const Array& C, const std::optional<Array>& A0) {
    ModelSpec spec;
    spec.C = to_matrix(C);
    spec.d = spec.C.rows();
    for (const auto& a : A) spec.A.push_back(to_matrix(a));
    spec.l = spec.A.size();
    if (A0) spec.A0 = to_matrix(*A0);
    return validate_spec(spec);
}

py::dict mc_dict(const McEstimate& e) {
    py::dict d;
    d["estimate"] = e.estimate;
    d["std_error"] = e.std_error;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "BEKK-ARCH simulation and tail analysis";
    m.attr("__version__") = kToolVersion;

    static py::exception<Error> bekk_error(m, "BekkError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string msg = std::string(to_string(e.code())) + ": " + e.what();
            bekk_error(msg.c_str());
        }
    });

    py::class_<ModelSpec>(m, "Spec")
        .def(py::init(&make_spec), py::arg("A"), py::arg("C"), py::arg("A0") = py::none())
        .def_static("from_json", [](const std::string& text) { return parse_spec(text); }, py::arg("text"))
        .def("to_json", [](const ModelSpec& s) { return spec_to_json(s).dump(); })
        .def("digest", [](const ModelSpec& s) { return spec_digest(s); })
        .def_property_readonly("d", [](const ModelSpec& s) { return s.d; })
        .def_property_readonly("l", [](const ModelSpec& s) { return s.l; })
        .def_property_readonly("A", [](const ModelSpec& s) {
            std::vector<Array> out;
            for (const auto& a : s.A) out.push_back(from_matrix(a));
            return out;
        })
        .def_property_readonly("C", [](const ModelSpec& s) { return from_matrix(s.C); })
        .def("__eq__", [](const ModelSpec& a, const ModelSpec& b) { return a == b; });

    m.def("classify", [](const ModelSpec& s) {
        const ParamClass pc = classify(s);
        std::vector<std::string> labels;
        for (ParamLabel l : pc.labels) labels.emplace_back(to_string(l));
        return labels;
    });

    m.def(
        "simulate",
        [](const ModelSpec& s, std::size_t T, std::size_t burnin, std::uint64_t seed, const std::string& form) {
            if (form != "sre" && form != "h") throw Error(ErrorCode::Domain, "form must be 'sre' or 'h'");
            const PathSample p = form == "h" ? simulate_h_form(s, T, burnin, seed) : simulate_sre(s, T, burnin, seed);
            py::dict out;
            out["X"] = path_array(p);
            out["diverged"] = p.diverged;
            out["diverged_at"] = p.diverged_at;
            return out;
        },
        py::arg("spec"), py::arg("T"), py::arg("burnin") = kDefaultBurnin, py::arg("seed") = 0, py::arg("form") = "sre");

    m.def("threshold_constant", &threshold_constant);
    m.def("gate_l1", [](const ModelSpec& s) {
        const GateResult g = gate_l1(s);
        py::dict d;
        d["rho"] = g.rho;
        d["threshold"] = g.threshold;
        d["pass"] = g.pass;
        return d;
    });
    m.def(
        "lyapunov_mc",
        [](const ModelSpec& s, std::size_t n_steps, std::size_t n_reps, std::uint64_t seed) {
            const LyapunovEstimate e = lyapunov_mc(s, n_steps, n_reps, seed);
            py::dict d;
            d["estimate"] = e.estimate;
            d["std_error"] = e.std_error;
            return d;
        },
        py::arg("spec"), py::arg("n_steps") = kLyapunovDefaultSteps, py::arg("n_reps") = kLyapunovDefaultReps,
        py::arg("seed") = 0);
    m.def(
        "moment_condition",
        [](const ModelSpec& s, unsigned n, std::size_t mc_samples, std::uint64_t seed) {
            const MomentResult r = moment_condition(s, n, mc_samples, seed);
            py::dict d;
            d["rho"] = r.rho;
            d["pass"] = r.pass;
            d["exact"] = r.exact;
            return d;
        },
        py::arg("spec"), py::arg("n") = 1, py::arg("mc_samples") = 100000, py::arg("seed") = 0);

    m.def("gaussian_abs_moment", &gaussian_abs_moment, py::arg("alpha"));
    m.def("solve_alpha", &solve_alpha, py::arg("a"));
    m.def("solve_coeff", &solve_coeff, py::arg("alpha"));
    m.def("alpha_cross", &alpha_cross, py::arg("alpha_i"), py::arg("alpha_j"));
    m.def("tail_indices", [](const ModelSpec& s) { return tail_profile(s).alpha; });
    m.def(
        "hill", [](const Array& x, std::size_t k) { return hill_abs(to_vector(x), k); }, py::arg("x"), py::arg("k"));
    m.def(
        "goldie_constant",
        [](const ModelSpec& s, std::size_t i, double alpha, std::size_t T, std::size_t reps, std::uint64_t seed) {
            py::dict d = mc_dict(goldie_constant_mc(s, i, alpha, T, reps, seed).value);
            return d;
        },
        py::arg("spec"), py::arg("i"), py::arg("alpha"), py::arg("T") = 1000000, py::arg("reps") = 20,
        py::arg("seed") = 0);

    m.def(
        "vsrv_norm",
        [](const Array& x, const std::vector<double>& alpha, const std::vector<double>& c) {
            return vsrv_norm(to_vector(x), VsrvScale{alpha, c});
        },
        py::arg("x"), py::arg("alpha"), py::arg("c"));
    m.def("angle_grid", &angle_grid, py::arg("points"));
    m.def(
        "spectral_measure",
        [](const Array& X, const std::vector<std::size_t>& k, const std::vector<double>& theta) {
            const SpectralEstimate e = spectral_measure(to_path(X), k, theta);
            Array out({e.k.size(), e.theta.size()});
            for (std::size_t j = 0; j < e.k.size(); ++j)
                std::memcpy(out.mutable_data(j, 0), e.phi[j].data(), sizeof(double) * e.theta.size());
            return out;
        },
        py::arg("X"), py::arg("k"), py::arg("theta"));
    m.def("default_extremal_horizon", &default_extremal_horizon, py::arg("a"));
    m.def(
        "extremal_index_mc",
        [](const ModelSpec& s, std::size_t i, double alpha, std::size_t K, std::size_t reps, std::uint64_t seed) {
            return mc_dict(extremal_index_mc(s, i, alpha, K, reps, seed));
        },
        py::arg("spec"), py::arg("i"), py::arg("alpha"), py::arg("K"), py::arg("reps") = 200000, py::arg("seed") = 0);
    m.def(
        "extremal_index_blocks",
        [](const Array& x, double q, std::size_t block) { return extremal_index_blocks(to_vector(x), q, block); },
        py::arg("x"), py::arg("quantile") = 0.999, py::arg("block_len") = 50);
    m.def(
        "cluster_sizes",
        [](const Array& x, double q, std::size_t gap) { return cluster_sizes(to_vector(x), q, gap); },
        py::arg("x"), py::arg("quantile") = 0.999, py::arg("gap") = 20);

    m.def("sample_cov", [](const Array& X) { return from_matrix(sample_cov(to_path(X))); }, py::arg("X"));
    m.def("predicted_fluctuation_slope", &predicted_fluctuation_slope, py::arg("alpha_ij"));
    m.def(
        "fluctuation_slopes",
        [](const ModelSpec& s, const std::vector<std::size_t>& n_grid, std::size_t reps, std::uint64_t seed) {
            const FluctuationScan scan = fluctuation_scan(s, tail_profile(s), n_grid, reps, seed);
            py::list out;
            for (const auto& e : scan.exponents) {
                py::dict d;
                d["i"] = e.i;
                d["j"] = e.j;
                d["alpha_cross"] = e.alpha_cross;
                d["slope"] = e.slope;
                d["predicted_slope"] = e.predicted_slope;
                out.append(d);
            }
            return out;
        },
        py::arg("spec"), py::arg("n_grid"), py::arg("reps") = 100, py::arg("seed") = 0);
}
