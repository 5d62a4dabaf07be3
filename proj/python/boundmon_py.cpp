#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "boundmon/benchmarks.hpp"
#include "boundmon/monitor_offline.hpp"
#include "boundmon/monitor_online.hpp"
#include "boundmon/report_io.hpp"

namespace py = pybind11;
using namespace boundmon;

namespace
{
Zonotope make_box(const Vector& lower, const Vector& upper)
{
    return box_to_zonotope(Box(lower, upper));
}

py::tuple hull_of(const Zonotope& z)
{
    Box const b = interval_hull(z);
    return py::make_tuple(b.lower(), b.upper());
}

std::string offline_json(const ModelConfig& cfg, const UncertainLog& log, unsigned threads)
{
    OfflineOptions opts;
    opts.threads = threads;
    return verdict_to_json(monitor_offline(cfg.system, log, cfg.unsafe, opts), log).dump();
}

std::string online_json(const ModelConfig& cfg, const GroundTruthTrace& trace, int horizon)
{
    SimulatedLogger logger(trace, cfg.logging.sensor_radius);
    return report_to_json(monitor_online(cfg.system, logger, cfg.unsafe, horizon)).dump();
}
}  // namespace

PYBIND11_MODULE(_boundmon, m)
{
    m.doc() = "Safety monitoring of uncertain linear systems from sparse logs";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<LogError>(m, "LogError", PyExc_ValueError);

    py::class_<Zonotope>(m, "Zonotope")
        .def(py::init<Vector, Matrix>(), py::arg("center"), py::arg("generators"))
        .def_static("point", &Zonotope::point, py::arg("x"))
        .def_static("box", &make_box, py::arg("lower"), py::arg("upper"))
        .def_property_readonly("center", [](const Zonotope& z) { return Vector(z.center()); })
        .def_property_readonly("generators", [](const Zonotope& z) { return Matrix(z.generators()); })
        .def_property_readonly("dim", &Zonotope::dim)
        .def_property_readonly("order", &Zonotope::order)
        .def("hull", &hull_of, "Interval hull as (lower, upper).")
        .def("contains", [](const Zonotope& z, const Vector& x) { return contains_point(z, x); },
             py::arg("x"));

    m.def("intersects", [](const Zonotope& a, const Zonotope& b, double eps) { return intersects(a, b, eps); },
          py::arg("a"), py::arg("b"), py::arg("eps") = kFeasibilityTolerance);

    py::class_<UncertainLinearSystem>(m, "System")
        .def(py::init<Matrix, Matrix>(), py::arg("center"), py::arg("radius"))
        .def_property_readonly("center", [](const UncertainLinearSystem& s) { return s.center(); })
        .def_property_readonly("radius", [](const UncertainLinearSystem& s) { return s.radius(); })
        .def_property_readonly("dim", &UncertainLinearSystem::dim)
        .def("step", [](const UncertainLinearSystem& s, const Zonotope& z) { return reach_step(s, z); },
             py::arg("z"))
        .def("reach",
             [](const UncertainLinearSystem& s, const Zonotope& z, int steps) { return reach(s, z, steps).sets; },
             py::arg("z"), py::arg("steps"));

    py::class_<UncertainLog>(m, "Log")
        .def_property_readonly("horizon", &UncertainLog::horizon)
        .def_property_readonly("dim", &UncertainLog::dim)
        .def("__len__", &UncertainLog::size)
        .def("intervals",
             [](const UncertainLog& log) {
                 std::vector<std::pair<int, int>> out;
                 for (const Sample& s : log.samples())
                     out.emplace_back(s.t_lb, s.t_ub);
                 return out;
             })
        .def("save", [](const UncertainLog& log, const std::string& path) { write_log(log, path); })
        .def_static("load", [](const std::string& path) { return read_log(path); });

    py::class_<GroundTruthTrace>(m, "Trace")
        .def_property_readonly("horizon", &GroundTruthTrace::horizon)
        .def_property_readonly("states",
                               [](const GroundTruthTrace& t) {
                                   Matrix out(static_cast<Index>(t.states.size()), t.dim());
                                   for (std::size_t i = 0; i < t.states.size(); ++i)
                                       out.row(static_cast<Index>(i)) = t.states[i].transpose();
                                   return out;
                               })
        .def("save", [](const GroundTruthTrace& t, const std::string& path) { write_trace(t, path); })
        .def_static("load", [](const std::string& path) { return read_trace(path); });

    py::class_<ModelConfig>(m, "Config")
        .def_static("load", [](const std::string& path) { return load_config(path); }, py::arg("path"))
        .def_readonly("name", &ModelConfig::name)
        .def_readonly("names", &ModelConfig::names)
        .def_readonly("horizon", &ModelConfig::horizon)
        .def_readonly("seed", &ModelConfig::seed)
        .def_readonly("system", &ModelConfig::system)
        .def_readonly("initial", &ModelConfig::initial)
        .def_property_readonly("dim", &ModelConfig::dim)
        .def("simulate",
             [](const ModelConfig& c, std::optional<int> horizon, std::optional<std::uint64_t> seed) {
                 return simulate_trace(c.system, c.initial, horizon.value_or(c.horizon),
                                       seed.value_or(c.seed), c.trace_mode);
             },
             py::arg("horizon") = py::none(), py::arg("seed") = py::none())
        .def("make_log",
             [](const ModelConfig& c, const GroundTruthTrace& trace, std::uint64_t seed,
                std::optional<double> p_log, std::optional<int> t_delta) {
                 LogSettings s = c.logging;
                 if (p_log)
                     s.p_log = *p_log;
                 if (t_delta)
                     s.t_delta = *t_delta;
                 return generate_log(c.system, trace, s, seed);
             },
             py::arg("trace"), py::arg("seed"), py::arg("p_log") = py::none(),
             py::arg("t_delta") = py::none());

    m.def("_offline_json", &offline_json, py::arg("config"), py::arg("log"), py::arg("threads") = 1);
    m.def("_online_json", &online_json, py::arg("config"), py::arg("trace"), py::arg("horizon"));
}
