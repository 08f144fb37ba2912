#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heatbound/scenario.hpp"

namespace py = pybind11;
using namespace heatbound;

namespace {

Vec2 to_vec(const std::pair<double, double>& p) { return {p.first, p.second}; }
std::pair<double, double> from_vec(const Vec2& v) { return {v.x, v.y}; }

Domain domain_from_json_str(const std::string& text) {
    return Domain::from_json(nlohmann::json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "heat-kernel bounds and metric geometry on non-convex planar regions";

    py::register_exception<GeometryError>(m, "GeometryError");
    py::register_exception<BudgetError>(m, "BudgetError");
    py::register_exception<SchemaError>(m, "SchemaError");

    py::class_<Domain>(m, "Domain")
        .def_static("interval", &Domain::interval, py::arg("a"), py::arg("b"))
        .def_static("square", &Domain::square, py::arg("side"))
        .def_static("disc", &Domain::disc, py::arg("radius"))
        .def_static("annulus", &Domain::annulus, py::arg("r_in"), py::arg("r_out"))
        .def_static("l_shape", &Domain::l_shape, py::arg("arm"), py::arg("thickness"))
        .def_static("horseshoe", &Domain::horseshoe, py::arg("r_in"), py::arg("r_out"),
                    py::arg("opening_angle"))
        .def_static("from_json", &domain_from_json_str, py::arg("text"))
        .def_property_readonly("dimension", &Domain::dimension)
        .def_property_readonly("diameter", &Domain::diameter)
        .def("describe", &Domain::describe)
        .def("inside", [](const Domain& d, double x, double y) { return d.inside({x, y}); },
             py::arg("x"), py::arg("y") = 0.0)
        .def("distance_to_boundary",
             [](const Domain& d, double x, double y) { return d.distance_to_boundary({x, y}); },
             py::arg("x"), py::arg("y") = 0.0);

    py::class_<Reach>(m, "Reach")
        .def_readonly("r", &Reach::r)
        .def_readonly("certified_samples", &Reach::certified_samples);

    m.def(
        "estimate_reach",
        [](const Domain& d, int samples, double tol) { return estimate_reach(d, samples, tol); },
        py::arg("domain"), py::arg("samples") = 1024, py::arg("tol") = 0.0);

    m.def(
        "boundary_samples",
        [](const Domain& d, int count) {
            std::vector<std::tuple<std::pair<double, double>, std::pair<double, double>, double>>
                out;
            for (const auto& s : boundary_samples(d, count))
                out.push_back({from_vec(s.point), from_vec(s.normal), s.curvature});
            return out;
        },
        py::arg("domain"), py::arg("count"),
        "list of (point, inward normal, curvature) samples");

    m.def(
        "project_to_closure",
        [](const Domain& d, const Reach& r, std::pair<double, double> z) {
            return from_vec(project_to_closure(d, r, to_vec(z)));
        },
        py::arg("domain"), py::arg("reach"), py::arg("z"));

    py::class_<MollifierKernel>(m, "MollifierKernel")
        .def_readonly("K", &MollifierKernel::K)
        .def_readonly("m", &MollifierKernel::m)
        .def_readonly("dimension", &MollifierKernel::dimension)
        .def_property_readonly("derivative_integrals", [](const MollifierKernel& k) {
            std::vector<std::pair<std::pair<int, int>, double>> out;
            for (const auto& [j, v] : k.derivative_integrals)
                out.push_back({{j[0], j[1]}, v});
            return out;
        });

    m.def("make_mollifier", &make_mollifier, py::arg("m"), py::arg("dimension"),
          py::arg("quadrature_points") = 96);

    py::enum_<MetricMethod>(m, "MetricMethod")
        .value("euclidean", MetricMethod::euclidean)
        .value("geodesic_grid", MetricMethod::geodesic_grid)
        .value("geodesic_visibility", MetricMethod::geodesic_visibility)
        .value("mollified_test_function", MetricMethod::mollified_test_function)
        .value("penult_formula", MetricMethod::penult_formula);

    py::class_<MetricEstimate>(m, "MetricEstimate")
        .def_readonly("lower", &MetricEstimate::lower)
        .def_readonly("upper", &MetricEstimate::upper)
        .def_readonly("method", &MetricEstimate::method);

    py::class_<GridDiscretization>(m, "GridDiscretization")
        .def(py::init<const Domain&, double>(), py::arg("domain"), py::arg("spacing"),
             py::keep_alive<1, 2>())
        .def_property_readonly("size", &GridDiscretization::size)
        .def_property_readonly("spacing", &GridDiscretization::spacing);

    py::class_<GeodesicSolver>(m, "GeodesicSolver")
        .def(py::init<const Domain&, const GridDiscretization&>(), py::arg("domain"),
             py::arg("grid"), py::keep_alive<1, 2>(), py::keep_alive<1, 3>())
        .def(
            "distance",
            [](const GeodesicSolver& s, std::pair<double, double> x, std::pair<double, double> y) {
                return s.distance(to_vec(x), to_vec(y));
            },
            py::arg("x"), py::arg("y"));

    m.def(
        "mollified_distance",
        [](const Domain& d, const Reach& r, const GeodesicSolver& s, const MollifierKernel& k,
           double beta, std::pair<double, double> x, std::pair<double, double> y) {
            return mollified_distance(d, r, s, k, beta, to_vec(x), to_vec(y));
        },
        py::arg("domain"), py::arg("reach"), py::arg("solver"), py::arg("kernel"), py::arg("beta"),
        py::arg("x"), py::arg("y"));

    m.def(
        "riemannian_type_estimate",
        [](const Domain& d, const Reach& r, const GeodesicSolver& s, const MollifierKernel& k,
           int m_, double beta, std::pair<double, double> x, std::pair<double, double> y) {
            return riemannian_type_estimate(d, r, s, k, m_, beta, to_vec(x), to_vec(y));
        },
        py::arg("domain"), py::arg("reach"), py::arg("solver"), py::arg("kernel"), py::arg("m"),
        py::arg("beta"), py::arg("x"), py::arg("y"));

    m.def("finsler_scaling_bound", &finsler_scaling_bound, py::arg("mu"), py::arg("m"),
          py::arg("d_m_beta"));

    m.def("sharp_decay_constant", &sharp_decay_constant, py::arg("m"));
    m.def("free_space_kernel", &free_space_kernel, py::arg("m"), py::arg("t"), py::arg("d"));
    m.def(
        "gaussian_bound_rhs",
        [](double c1, double c2, double k, int m_, int N, double d, double t) {
            BoundParameters p;
            p.c1 = c1;
            p.c2 = c2;
            p.k = k;
            p.m = m_;
            p.N = N;
            return gaussian_bound_rhs(p, d, t);
        },
        py::arg("c1"), py::arg("c2"), py::arg("k"), py::arg("m"), py::arg("N"), py::arg("d"),
        py::arg("t"));
    m.def("growth_rate_from_threshold", &growth_rate_from_threshold, py::arg("c2"),
          py::arg("epsilon"), py::arg("T"), py::arg("m"));
    m.def("threshold_from_growth_rate", &threshold_from_growth_rate, py::arg("k"),
          py::arg("epsilon"), py::arg("m"));

    m.def(
        "run_scenario_file",
        [](const std::string& config, const std::string& out_dir, int threads) {
            RunOptions options;
            options.out_dir = out_dir;
            options.threads = threads;
            const ScenarioResult r = run_scenario(Scenario::from_file(config), options);
            std::vector<std::tuple<std::string, bool, std::string>> checks;
            for (const auto& c : r.checks) checks.push_back({c.name, c.pass, c.detail});
            return py::make_tuple(r.exit_code, checks, r.written_files);
        },
        py::arg("config"), py::arg("out_dir") = ".", py::arg("threads") = 1);

    m.def("catalog_text", &catalog_text);
    m.def("bundled_scenario", [](const std::string& name) {
        const auto& all = bundled_scenarios();
        const auto it = all.find(name);
        if (it == all.end()) throw py::key_error(name);
        return it->second;
    });
}
