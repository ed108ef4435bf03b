#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "uamcov/config.hpp"

namespace py = pybind11;
using namespace uamcov;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coverage simulator for aircraft in Poisson-line air corridors";

    py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
    py::register_exception<InvalidLink>(m, "InvalidLink", PyExc_ValueError);
    py::register_exception<NoServer>(m, "NoServer", PyExc_RuntimeError);
    py::register_exception<OutOfRange>(m, "OutOfRange", PyExc_IndexError);
    // Leaked on purpose: the translator may run during interpreter shutdown.
    static auto* parse_error = new py::exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            // args = (message, line, key)
            PyErr_SetObject(parse_error->ptr(), py::make_tuple(e.what(), e.line(), e.key()).ptr());
        }
    });

    py::enum_<BsKind>(m, "BsKind").value("CT", BsKind::CT).value("UAV", BsKind::UAV).value("NTFP", BsKind::NTFP);
    py::enum_<Level>(m, "Level").value("LC", Level::LC).value("HC", Level::HC);
    py::enum_<Direction>(m, "Direction").value("DL", Direction::DL).value("UL", Direction::UL);
    py::enum_<LosModel>(m, "LosModel")
        .value("ELEVATION", LosModel::Elevation)
        .value("ALWAYS_LOS", LosModel::AlwaysLos)
        .value("ALWAYS_NLOS", LosModel::AlwaysNlos);
    py::enum_<UplinkInterferers>(m, "UplinkInterferers")
        .value("ALL_LEVELS", UplinkInterferers::AllLevels)
        .value("SAME_LEVEL", UplinkInterferers::SameLevel);

    py::class_<Point3>(m, "Point3")
        .def(py::init<>())
        .def(py::init([](double x, double y, double z) { return Point3{x, y, z}; }), py::arg("x"), py::arg("y"),
             py::arg("z"))
        .def_readwrite("x", &Point3::x)
        .def_readwrite("y", &Point3::y)
        .def_readwrite("z", &Point3::z)
        .def(py::self == py::self)
        .def("__repr__", [](const Point3& p) {
            return "Point3(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + ")";
        });

    py::class_<Rng>(m, "Rng", "64-bit Mersenne Twister used by every sampler")
        .def(py::init<std::uint64_t>(), py::arg("seed"));
    m.def("trial_stream", &trial_stream, py::arg("seed"), py::arg("index"),
          "Generator for trial `index` of a run seeded with `seed`.");

    py::class_<Corridor>(m, "Corridor")
        .def(py::init<>())
        .def(py::init([](double theta, double offset) { return Corridor{theta, offset}; }), py::arg("theta"),
             py::arg("offset"))
        .def_readwrite("theta", &Corridor::theta)
        .def_readwrite("offset", &Corridor::offset)
        .def_readwrite("level_low_alt", &Corridor::level_low_alt)
        .def_readwrite("level_high_alt", &Corridor::level_high_alt)
        .def("distance_to", &Corridor::distance_to, py::arg("point"));

    py::class_<Deployment>(m, "Deployment")
        .def(py::init<>())
        .def_readwrite("kind", &Deployment::kind)
        .def_readwrite("positions", &Deployment::positions)
        .def_readwrite("altitude", &Deployment::altitude)
        .def("__len__", &Deployment::size);

    m.def(
        "sample_corridors",
        [](double density, double radius, Rng& rng) { return sample_corridors(density, Region(radius), rng); },
        py::arg("line_density"), py::arg("region_radius"), py::arg("rng"));
    m.def(
        "sample_bs",
        [](BsKind kind, double density, double altitude, double radius, Rng& rng) {
            return sample_bs(kind, density, altitude, Region(radius), rng);
        },
        py::arg("kind"), py::arg("density"), py::arg("altitude"), py::arg("region_radius"), py::arg("rng"));
    m.def("apply_tether_exclusion", &apply_tether_exclusion, py::arg("deployment"), py::arg("corridors"),
          py::arg("exclusion_radius"));
    m.def(
        "sample_evtols",
        [](const std::vector<Corridor>& corridors, double density, double radius, Rng& rng) {
            return sample_evtols(corridors, density, Region(radius), rng);
        },
        py::arg("corridors"), py::arg("linear_density"), py::arg("region_radius"), py::arg("rng"));

    py::class_<ChannelParams>(m, "ChannelParams")
        .def(py::init<>())
        .def_readwrite("alpha_los", &ChannelParams::alpha_los)
        .def_readwrite("alpha_nlos", &ChannelParams::alpha_nlos)
        .def_readwrite("nakagami_m", &ChannelParams::nakagami_m)
        .def_readwrite("sigmoid_a", &ChannelParams::sigmoid_a)
        .def_readwrite("sigmoid_b", &ChannelParams::sigmoid_b)
        .def_readwrite("ref_gain", &ChannelParams::ref_gain)
        .def_readwrite("los_model", &ChannelParams::los_model)
        .def("validate", &ChannelParams::validate)
        .def(py::self == py::self);

    m.def("los_probability", &los_probability, py::arg("tx"), py::arg("rx"), py::arg("tx_is_terrestrial"),
          py::arg("params") = ChannelParams{});
    m.def("path_gain", &path_gain, py::arg("distance3d"), py::arg("los"), py::arg("params") = ChannelParams{});
    m.def("sample_fading", &sample_fading, py::arg("los"), py::arg("params"), py::arg("rng"));
    m.def("sigmoid_los", &sigmoid_los, py::arg("elevation_deg"), py::arg("a") = 9.61, py::arg("b") = 0.16);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("name", &ScenarioConfig::name)
        .def_readwrite("bs_kind", &ScenarioConfig::bs_kind)
        .def_readwrite("bs_density", &ScenarioConfig::bs_density)
        .def_readwrite("bs_altitude", &ScenarioConfig::bs_altitude)
        .def_readwrite("corridor_line_density", &ScenarioConfig::corridor_line_density)
        .def_readwrite("evtol_linear_density", &ScenarioConfig::evtol_linear_density)
        .def_readwrite("region_radius", &ScenarioConfig::region_radius)
        .def_readwrite("exclusion_radius", &ScenarioConfig::exclusion_radius)
        .def_readwrite("bs_tx_power", &ScenarioConfig::bs_tx_power)
        .def_readwrite("evtol_tx_power", &ScenarioConfig::evtol_tx_power)
        .def_readwrite("level_low_alt", &ScenarioConfig::level_low_alt)
        .def_readwrite("level_high_alt", &ScenarioConfig::level_high_alt)
        .def_readwrite("channel", &ScenarioConfig::channel)
        .def_readwrite("level", &ScenarioConfig::level)
        .def_readwrite("direction", &ScenarioConfig::direction)
        .def_readwrite("ul_interferers", &ScenarioConfig::ul_interferers)
        .def("validate", &ScenarioConfig::validate)
        .def(py::self == py::self);

    m.def("preset", &preset, py::arg("name"), py::arg("direction") = Direction::DL, py::arg("level") = Level::LC);

    py::class_<CoverageCurve>(m, "CoverageCurve")
        .def_readonly("thresholds_db", &CoverageCurve::thresholds_db)
        .def_readonly("pcov", &CoverageCurve::pcov)
        .def_readonly("ci_low", &CoverageCurve::ci_low)
        .def_readonly("ci_high", &CoverageCurve::ci_high)
        .def_readonly("trials", &CoverageCurve::trials)
        .def_readonly("seed", &CoverageCurve::seed)
        .def_readonly("scenario", &CoverageCurve::scenario)
        .def_readonly("notes", &CoverageCurve::notes)
        .def("half_width", &CoverageCurve::half_width, py::arg("index"));

    m.def(
        "estimate_coverage",
        [](const ScenarioConfig& config, const std::vector<double>& thresholds_db, std::uint64_t trials,
           std::uint64_t seed, unsigned workers) {
            py::gil_scoped_release release;
            return estimate_coverage(config, thresholds_db, trials, seed, EstimateOptions{workers});
        },
        py::arg("config"), py::arg("thresholds_db"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 1);
    m.def(
        "sample_sir",
        [](const ScenarioConfig& config, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
            py::gil_scoped_release release;
            return sample_sir(config, trials, seed, EstimateOptions{workers});
        },
        py::arg("config"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 1);
    m.def("closed_form_oracle", &closed_form_oracle, py::arg("threshold_linear"));
    m.def("db_to_linear", &db_to_linear, py::arg("db"));
    m.def(
        "wilson_interval",
        [](std::uint64_t successes, std::uint64_t trials) {
            const auto iv = wilson_interval(successes, trials);
            return py::make_tuple(iv.low, iv.high);
        },
        py::arg("successes"), py::arg("trials"));

    py::class_<RunSpec>(m, "RunSpec")
        .def(py::init<>())
        .def_readwrite("scenarios", &RunSpec::scenarios)
        .def_readwrite("thresholds_db", &RunSpec::thresholds_db)
        .def_readwrite("trials", &RunSpec::trials)
        .def_readwrite("seed", &RunSpec::seed)
        .def_readwrite("output_path", &RunSpec::output_path)
        .def(py::self == py::self);

    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("render_config", &render_config, py::arg("spec"));
    m.def("render_csv", &render_csv, py::arg("curves"));
    m.def(
        "run",
        [](const RunSpec& spec, unsigned workers) {
            py::gil_scoped_release release;
            return run(spec, RunOptions{workers});
        },
        py::arg("spec"), py::arg("workers") = 1);

    py::class_<ReliabilityResult>(m, "ReliabilityResult")
        .def_readonly("passed", &ReliabilityResult::pass)
        .def_readonly("pcov", &ReliabilityResult::pcov)
        .def_readonly("margin", &ReliabilityResult::margin);
    m.def(
        "check_reliability",
        [](const CoverageCurve& curve, double target, double threshold_db) {
            return check_reliability(curve, ReliabilityTarget{target, threshold_db});
        },
        py::arg("curve"), py::arg("target"), py::arg("threshold_db"));
}
