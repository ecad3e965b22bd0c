#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vortexlab/config.hpp"
#include "vortexlab/diagnostics.hpp"
#include "vortexlab/fft.hpp"
#include "vortexlab/field_gen.hpp"
#include "vortexlab/norms.hpp"
#include "vortexlab/runner.hpp"
#include "vortexlab/spectral_ops.hpp"
#include "vortexlab/verify.hpp"

namespace py = pybind11;
using namespace vlab;

namespace {

// numpy layout [3, n, n, n], C order (component-major, xi3 fastest)
PhysicalVectorField physical_from_array(const GridSpec& g, py::array_t<double> arr) {
    auto buf = arr.request();
    if (buf.ndim != 4 || buf.shape[0] != 3 || buf.shape[1] != g.n || buf.shape[2] != g.n ||
        buf.shape[3] != g.n)
        throw std::invalid_argument("expected array of shape (3, n, n, n)");
    py::array_t<double, py::array::c_style | py::array::forcecast> c(arr);
    PhysicalVectorField f(g);
    const double* data = c.data();
    for (int comp = 0; comp < 3; ++comp)
        std::copy(data + comp * g.size(), data + (comp + 1) * g.size(), f.comp[comp].begin());
    return f;
}

py::array_t<double> physical_to_array(const PhysicalVectorField& f) {
    int n = f.grid.n;
    py::array_t<double> arr({3, n, n, n});
    double* data = arr.mutable_data();
    for (int comp = 0; comp < 3; ++comp)
        std::copy(f.comp[comp].begin(), f.comp[comp].end(), data + comp * f.grid.size());
    return arr;
}

SpectralVectorField spectral_from_array(const GridSpec& g, py::array_t<std::complex<double>> arr) {
    auto buf = arr.request();
    if (buf.ndim != 4 || buf.shape[0] != 3 || buf.shape[1] != g.n || buf.shape[2] != g.n ||
        buf.shape[3] != g.n)
        throw std::invalid_argument("expected array of shape (3, n, n, n)");
    py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> c(arr);
    SpectralVectorField f(g);
    const std::complex<double>* data = c.data();
    for (int comp = 0; comp < 3; ++comp)
        std::copy(data + comp * g.size(), data + (comp + 1) * g.size(), f.comp[comp].begin());
    return f;
}

py::array_t<std::complex<double>> spectral_to_array(const SpectralVectorField& f) {
    int n = f.grid.n;
    py::array_t<std::complex<double>> arr({3, n, n, n});
    std::complex<double>* data = arr.mutable_data();
    for (int comp = 0; comp < 3; ++comp)
        std::copy(f.comp[comp].begin(), f.comp[comp].end(), data + comp * f.grid.size());
    return arr;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pseudo-spectral laboratory for the random vorticity equation";

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<int, double>(), py::arg("n"), py::arg("L"))
        .def_readonly("n", &GridSpec::n)
        .def_readonly("L", &GridSpec::L)
        .def("wavenumber", &GridSpec::wavenumber)
        .def("__repr__", [](const GridSpec& g) {
            return "GridSpec(n=" + std::to_string(g.n) + ", L=" + std::to_string(g.L) + ")";
        });

    m.def("to_spectral", [](const GridSpec& g, py::array_t<double> f) {
        return spectral_to_array(to_spectral(physical_from_array(g, f)));
    }, py::arg("grid"), py::arg("field"));
    m.def("to_physical", [](const GridSpec& g, py::array_t<std::complex<double>> f) {
        return physical_to_array(to_physical(spectral_from_array(g, f)));
    }, py::arg("grid"), py::arg("field"));

    m.def("lp_norm", [](const GridSpec& g, py::array_t<double> f, double p) {
        return lp_norm(physical_from_array(g, f), p);
    }, py::arg("grid"), py::arg("field"), py::arg("p"));

    auto spectral_unary = [](auto&& fn) {
        return [fn](const GridSpec& g, py::array_t<std::complex<double>> f) {
            return spectral_to_array(fn(spectral_from_array(g, f)));
        };
    };
    m.def("curl", spectral_unary([](const SpectralVectorField& f) { return curl(f); }));
    m.def("biot_savart",
          spectral_unary([](const SpectralVectorField& f) { return biot_savart(f); }));
    m.def("nonlinearity",
          spectral_unary([](const SpectralVectorField& f) { return nonlinearity(f); }));
    m.def("dealias", spectral_unary([](const SpectralVectorField& f) { return dealias(f); }));
    m.def("partial_derivative", [](const GridSpec& g, py::array_t<std::complex<double>> f,
                                   int axis) {
        return spectral_to_array(partial_derivative(spectral_from_array(g, f), axis));
    });
    m.def("heat_semigroup", [](const GridSpec& g, py::array_t<std::complex<double>> f, double t) {
        return spectral_to_array(heat_semigroup(spectral_from_array(g, f), t));
    });
    m.def("relative_divergence", [](const GridSpec& g, py::array_t<std::complex<double>> f) {
        return relative_divergence(spectral_from_array(g, f));
    });

    m.def("random_band_limited", [](const GridSpec& g, std::uint64_t seed, int kmax) {
        return spectral_to_array(random_band_limited(g, seed, {.kmax = kmax}));
    }, py::arg("grid"), py::arg("seed"), py::arg("kmax") = 5);
    m.def("u0_preset", [](const std::string& name, const GridSpec& g, double norm32,
                          std::uint64_t seed) {
        return spectral_to_array(u0_preset(name, g, norm32, seed));
    }, py::arg("name"), py::arg("grid"), py::arg("norm32"), py::arg("seed") = 0);

    py::class_<KernelSpec>(m, "KernelSpec")
        .def_static("parse", &KernelSpec::parse)
        .def("__repr__", &KernelSpec::str);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init([](const GridSpec& g, const std::vector<std::string>& kernels,
                         const std::vector<double>& lambdas) {
                 std::vector<KernelSpec> specs;
                 for (const auto& k : kernels) specs.push_back(KernelSpec::parse(k));
                 return NoiseModel(g, specs, lambdas);
             }),
             py::arg("grid"), py::arg("kernels"), py::arg("lambdas"))
        .def_property_readonly("channels", &NoiseModel::channels)
        .def("h_l1", [](const NoiseModel& nm, int i) { return nm.channel(i).h_l1; })
        .def("alpha", [](const NoiseModel& nm, int i) { return nm.channel(i).alpha; })
        .def("admissible", [](const NoiseModel& nm, int i) { return nm.channel(i).admissible; })
        .def("gamma_constant", &NoiseModel::gamma_constant)
        .def("convolve", [](const NoiseModel& nm, int i, py::array_t<std::complex<double>> f) {
            return spectral_to_array(nm.convolve(i, spectral_from_array(nm.grid(), f)));
        });

    py::class_<TimeGrid>(m, "TimeGrid")
        .def_static("graded", &TimeGrid::graded, py::arg("T"), py::arg("M"), py::arg("gamma"))
        .def_static("uniform", &TimeGrid::uniform, py::arg("T"), py::arg("steps"))
        .def_property_readonly("t", [](const TimeGrid& g) { return g.t; })
        .def("index_of", &TimeGrid::index_of);

    py::class_<BrownianPaths>(m, "BrownianPaths")
        .def_property_readonly("beta", [](const BrownianPaths& p) { return p.beta; })
        .def_property_readonly("grid", [](const BrownianPaths& p) { return p.grid; });
    m.def("sample_paths", &sample_paths, py::arg("seed"), py::arg("grid"), py::arg("channels"));

    py::class_<EtaPair>(m, "EtaPair")
        .def_readonly("exact_l2", &EtaPair::exact_l2)
        .def_readonly("analytic", &EtaPair::analytic)
        .def_readonly("log_exact_l2", &EtaPair::log_exact_l2)
        .def_readonly("log_analytic", &EtaPair::log_analytic);

    py::class_<GammaMultiplier>(m, "GammaMultiplier")
        .def(py::init<const NoiseModel&, const BrownianPaths&>(), py::keep_alive<1, 2>(),
             py::keep_alive<1, 3>())
        .def("apply", [](const GammaMultiplier& gm, std::size_t node,
                         py::array_t<std::complex<double>> f, bool inverse) {
            return spectral_to_array(gm.apply(node, spectral_from_array(gm.noise().grid(), f),
                                              inverse));
        }, py::arg("node"), py::arg("field"), py::arg("inverse") = false)
        .def("eta", &GammaMultiplier::eta);

    m.def("tail_probability_bound", &tail_probability_bound);
    py::class_<HittingLawResult>(m, "HittingLawResult")
        .def_readonly("estimate", &HittingLawResult::estimate)
        .def_readonly("stderr", &HittingLawResult::stderr_)
        .def_readonly("exact", &HittingLawResult::exact);
    m.def("hitting_law_mc", &hitting_law_mc, py::arg("nu"), py::arg("r"), py::arg("t_max"),
          py::arg("dt"), py::arg("n_paths"), py::arg("seed"));

    py::class_<BetaConstants>(m, "BetaConstants")
        .def_readonly("value1", &BetaConstants::value1)
        .def_readonly("value2", &BetaConstants::value2)
        .def_readonly("finite1", &BetaConstants::finite1)
        .def_readonly("finite2", &BetaConstants::finite2);
    m.def("beta_constants", &beta_constants, py::arg("p"));

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("p", &SolverConfig::p)
        .def_readwrite("T", &SolverConfig::T)
        .def_readwrite("M", &SolverConfig::M)
        .def_readwrite("grid_gamma", &SolverConfig::grid_gamma)
        .def_readwrite("n", &SolverConfig::n)
        .def_readwrite("L", &SolverConfig::L)
        .def_readwrite("tol", &SolverConfig::tol)
        .def_readwrite("max_iter", &SolverConfig::max_iter)
        .def_readwrite("nonlinearity_enabled", &SolverConfig::nonlinearity_enabled)
        .def_property_readonly("q", &SolverConfig::q)
        .def_property_readonly("r1", &SolverConfig::r1)
        .def_property_readonly("qprime", &SolverConfig::qprime);

    py::class_<KatoTrajectory>(m, "KatoTrajectory")
        .def_readonly("t", &KatoTrajectory::t)
        .def_readonly("w0", &KatoTrajectory::w0)
        .def_readonly("w1", &KatoTrajectory::w1)
        .def_readonly("w2", &KatoTrajectory::w2)
        .def_readonly("w3", &KatoTrajectory::w3)
        .def("znorm", &KatoTrajectory::znorm);

    py::class_<PicardOutcome>(m, "PicardOutcome")
        .def_readonly("converged", &PicardOutcome::converged)
        .def_readonly("iterations", &PicardOutcome::iterations)
        .def_readonly("failure_kind", &PicardOutcome::failure_kind)
        .def_property_readonly("deltas",
                               [](const PicardOutcome& o) { return o.record.deltas; })
        .def_property_readonly("ratios",
                               [](const PicardOutcome& o) { return o.record.ratios; })
        .def_property_readonly("residual",
                               [](const PicardOutcome& o) { return o.record.residual_rel; })
        .def_property_readonly("kato", [](const PicardOutcome& o) { return o.record.kato; })
        .def("y_at", [](const PicardOutcome& o, std::size_t node) {
            return spectral_to_array(o.record.y.at(node));
        });

    m.def("picard_solve",
          [](const GridSpec& g, py::array_t<std::complex<double>> u0, const GammaMultiplier& gm,
             const SolverConfig& cfg) {
              return picard_solve(spectral_from_array(g, u0), gm, cfg);
          },
          py::arg("grid"), py::arg("u0"), py::arg("gamma"), py::arg("config"));
    m.def("picard_solve_deterministic",
          [](const GridSpec& g, py::array_t<std::complex<double>> u0, const SolverConfig& cfg) {
              return picard_solve(spectral_from_array(g, u0), nullptr, {}, cfg);
          },
          py::arg("grid"), py::arg("u0"), py::arg("config"));
}
