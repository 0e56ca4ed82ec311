// Python bindings for the main operations: background geometry, grids,
// evolution, energy functionals, the stationary shooter, the inequality
// scans and the run-directory pipeline.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ymlab/background.hpp"
#include "ymlab/config.hpp"
#include "ymlab/decay.hpp"
#include "ymlab/evolve.hpp"
#include "ymlab/experiment.hpp"
#include "ymlab/functionals.hpp"
#include "ymlab/grid.hpp"
#include "ymlab/stationary.hpp"
#include "ymlab/verify.hpp"

namespace py = pybind11;
using namespace ymlab;

namespace {

TortoiseGrid py_build_grid(double x_min, double x_max, std::size_t n, double m) {
    return build_grid(x_min, x_max, n, BlackHoleMass(m));
}

FieldState py_vacuum(const TortoiseGrid& grid, int sign) {
    InitialDataSpec spec;
    spec.kind = InitialDataSpec::Kind::vacuum;
    spec.sign = sign;
    return make_initial_data(spec, grid);
}

FieldState py_gaussian(const TortoiseGrid& grid, double base, double amplitude, double center,
                       double width, bool ingoing) {
    InitialDataSpec spec;
    spec.kind = InitialDataSpec::Kind::gaussian;
    spec.base = base;
    spec.amplitude = amplitude;
    spec.center = center;
    spec.width = width;
    spec.mode = ingoing ? GaussianMode::ingoing : GaussianMode::time_symmetric;
    return make_initial_data(spec, grid);
}

RunResult py_run(const FieldState& initial, const TortoiseGrid& grid, double cfl, double t_end,
                 const std::string& boundary) {
    EvolutionConfig cfg;
    cfg.cfl_ratio = cfl;
    cfg.t_end = t_end;
    if (boundary == "causal_buffer") cfg.boundary_mode = BoundaryMode::causal_buffer;
    else if (boundary == "outgoing") cfg.boundary_mode = BoundaryMode::outgoing;
    else throw config_error("boundary must be causal_buffer|outgoing");
    return run(initial, grid, cfg, {});
}

py::dict py_stationary(int n, double m, double x_lo, double x_hi, std::size_t grid_n) {
    ShootingConfig sc;
    StationarySolution sol = find_a_n(n, sc, BlackHoleMass(m));
    py::dict d;
    d["n"] = sol.n;
    d["a_n"] = sol.a_n;
    d["zero_count"] = sol.zero_count;
    d["energy"] = sol.energy;
    d["tail_bound"] = sol.tail_bound;
    d["asymptote"] = sol.asymptote;
    if (grid_n >= 3) {
        TortoiseGrid g = build_grid(x_lo, x_hi, grid_n, BlackHoleMass(m));
        ShootingConfig sc2;
        d["W"] = sample_stationary_on_grid(sol.a_n, g, sc2);
        d["x"] = g.x;
    }
    return d;
}

py::dict py_verify(double m) {
    AdmissibleParameters params = find_admissible_parameters(BlackHoleMass(m));
    py::dict d;
    d["found"] = params.found;
    d["a"] = params.a;
    d["delta"] = params.delta;
    d["epsilon"] = params.epsilon;
    d["c3"] = params.c3;
    d["c4"] = params.c4;
    return d;
}

}  // namespace

PYBIND11_MODULE(_ymlab, mod) {
    mod.doc() = "numerical laboratory for the reduced SU(2) Yang-Mills wave equation";

    py::register_exception<config_error>(mod, "ConfigError");
    py::register_exception<numerical_error>(mod, "NumericalError");

    py::class_<BackgroundSample>(mod, "BackgroundSample")
        .def_readonly("r", &BackgroundSample::r)
        .def_readonly("r_star", &BackgroundSample::r_star)
        .def_readonly("N", &BackgroundSample::N)
        .def_readonly("mu", &BackgroundSample::mu)
        .def_readonly("P", &BackgroundSample::P)
        .def_readonly("V", &BackgroundSample::V)
        .def_readonly("f", &BackgroundSample::f);

    mod.def("r_star_of_r", [](double r, double m) { return r_star_of_r(r, BlackHoleMass(m)); },
            py::arg("r"), py::arg("m") = 1.0);
    mod.def("r_of_r_star", [](double x, double m) { return r_of_r_star(x, BlackHoleMass(m)); },
            py::arg("x"), py::arg("m") = 1.0);
    mod.def("lapse_of_r_star", [](double x, double m) { return lapse_of_r_star(x, BlackHoleMass(m)); },
            py::arg("x"), py::arg("m") = 1.0);
    mod.def("background", [](double x, double m) { return background_sample(x, BlackHoleMass(m)); },
            py::arg("x"), py::arg("m") = 1.0);
    mod.def("kruskal", [](double v, double w, double m) { return kruskal_map(v, w, BlackHoleMass(m)); },
            py::arg("v"), py::arg("w"), py::arg("m") = 1.0);

    py::class_<TortoiseGrid>(mod, "Grid")
        .def_readonly("x_min", &TortoiseGrid::x_min)
        .def_readonly("x_max", &TortoiseGrid::x_max)
        .def_readonly("n", &TortoiseGrid::n)
        .def_readonly("dx", &TortoiseGrid::dx)
        .def_readonly("x", &TortoiseGrid::x);
    mod.def("build_grid", &py_build_grid, py::arg("x_min"), py::arg("x_max"), py::arg("n"),
            py::arg("m") = 1.0);

    py::class_<FieldState>(mod, "State")
        .def_readwrite("t", &FieldState::t)
        .def_readwrite("W", &FieldState::W)
        .def_readwrite("Pi", &FieldState::Pi);
    mod.def("vacuum_state", &py_vacuum, py::arg("grid"), py::arg("sign") = 1);
    mod.def("gaussian_state", &py_gaussian, py::arg("grid"), py::arg("base") = 1.0,
            py::arg("amplitude") = 0.01, py::arg("center") = 0.0, py::arg("width") = 1.0,
            py::arg("ingoing") = false);

    mod.def("derivative1", &derivative1, py::arg("u"), py::arg("grid"));
    mod.def("derivative2", &derivative2, py::arg("u"), py::arg("grid"));

    py::class_<RunResult>(mod, "RunResult")
        .def_readonly("final_state", &RunResult::final_state)
        .def_readonly("steps", &RunResult::steps)
        .def_readonly("aborted", &RunResult::aborted)
        .def_readonly("abort_reason", &RunResult::abort_reason);
    py::enum_<BoundaryMode>(mod, "BoundaryMode")
        .value("causal_buffer", BoundaryMode::causal_buffer)
        .value("outgoing", BoundaryMode::outgoing);

    mod.def("evolve", &py_run, py::arg("initial"), py::arg("grid"), py::arg("cfl") = 0.25,
            py::arg("t_end") = 10.0, py::arg("boundary") = "causal_buffer");
    mod.def("step", &step, py::arg("state"), py::arg("grid"), py::arg("dt"),
            py::arg("cfl_ratio") = 1.0, py::arg("mode") = BoundaryMode::causal_buffer);

    py::class_<EnergyBreakdown>(mod, "Energy")
        .def_readonly("kinetic", &EnergyBreakdown::kinetic)
        .def_readonly("gradient", &EnergyBreakdown::gradient)
        .def_readonly("potential", &EnergyBreakdown::potential)
        .def_readonly("total", &EnergyBreakdown::total);
    mod.def("scalar_energy", &scalar_energy, py::arg("state"), py::arg("grid"));
    mod.def("local_energy", &local_energy, py::arg("state"), py::arg("grid"), py::arg("x1"),
            py::arg("x2"));
    mod.def("morawetz_bulk", &morawetz_bulk, py::arg("state"), py::arg("grid"));

    py::class_<GeometricEnergies>(mod, "GeometricEnergies")
        .def_readonly("e_dt", &GeometricEnergies::e_dt)
        .def_readonly("e_K", &GeometricEnergies::e_K)
        .def_readonly("e_H", &GeometricEnergies::e_H)
        .def_readonly("e_sharp", &GeometricEnergies::e_sharp);
    mod.def("geometric_energies",
            [](const FieldState& s, const TortoiseGrid& g) { return geometric_energies(s, g); },
            py::arg("state"), py::arg("grid"));

    mod.def("stationary", &py_stationary, py::arg("n") = 1, py::arg("m") = 1.0,
            py::arg("x_lo") = 0.0, py::arg("x_hi") = 0.0, py::arg("grid_n") = 0);
    mod.def("verify_parameters", &py_verify, py::arg("m") = 1.0);

    mod.def("run_from_config",
            [](const std::string& path, const std::string& output) {
                RunConfig rc = parse_run_config(ConfigDoc::parse_file(path));
                if (!output.empty()) rc.output_dir = output;
                RunArtifacts art = run_experiment(rc);
                write_artifacts(art, rc, rc.output_dir);
                py::dict d;
                d["t_end"] = art.result.final_state.t;
                d["steps"] = art.result.steps;
                d["aborted"] = art.result.aborted;
                d["drift"] = art.drift;
                d["energy0"] = art.scalar0.total;
                d["output_dir"] = rc.output_dir;
                return d;
            },
            py::arg("path"), py::arg("output") = std::string());
    mod.def("analyze_run",
            [](const std::string& dir, const std::string& which) {
                DecayAnalysis an = analyze_run_directory(dir, which);
                py::dict d;
                d["all_pass"] = an.all_pass;
                d["json"] = analysis_to_json(an);
                return d;
            },
            py::arg("dir"), py::arg("which") = "all");
}
