#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"
#include "planefn/expr.hpp"
#include "planefn/geodesic.hpp"
#include "planefn/json_io.hpp"
#include "planefn/pathint.hpp"
#include "planefn/planeset.hpp"
#include "planefn/qx.hpp"
#include "planefn/raster.hpp"
#include "planefn/svg.hpp"
#include "planefn/verification.hpp"

namespace py = pybind11;
using namespace planefn;

namespace {

std::string dump(const nlohmann::json& j) { return j.dump(); }

PlaneSet set_from_json(const std::string& text) { return planeset_from_json(nlohmann::json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_planefn, m) {
    m.doc() = "Native core of the planefn package";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<UnreachableError>(m, "UnreachableError", PyExc_RuntimeError);

    py::class_<PolyPath>(m, "PolyPath")
        .def(py::init<std::vector<Point>>(), py::arg("vertices"))
        .def_property_readonly("vertices", &PolyPath::vertices)
        .def("length", &PolyPath::length)
        .def("at", &PolyPath::at, py::arg("s"))
        .def("start", &PolyPath::start)
        .def("end", &PolyPath::end)
        .def("reversed", &PolyPath::reversed)
        .def("subpath", [](const PolyPath& p, double s0, double s1) { return subpath(p, s0, s1); });

    py::class_<PlaneSet>(m, "PlaneSet")
        .def_static("region", [](const Ring& outer, const std::vector<Ring>& holes) { return PlaneSet::region(outer, holes); },
                    py::arg("outer"), py::arg("holes") = std::vector<Ring>{})
        .def_static("skeleton", [](const std::vector<PolyPath>& arcs) { return PlaneSet::skeleton(arcs); }, py::arg("arcs"))
        .def_static("from_json", &set_from_json, py::arg("text"))
        .def("to_json", [](const PlaneSet& s) { return dump(nlohmann::json(s)); })
        .def("contains", [](const PlaneSet& s, Point p, double tol) { return contains(s, p, tol); }, py::arg("p"),
             py::arg("tol") = 0.0)
        .def("hull", [](const PlaneSet& s) { return hull(s); })
        .def("to_svg", [](const PlaneSet& s) { return to_svg(s); })
        .def("sample_points", [](const PlaneSet& s, int count, unsigned seed) { return sample_points(s, count, seed); },
             py::arg("count") = 512, py::arg("seed") = 0)
        .def_property_readonly("focus", [](const PlaneSet& s) { return s.features().focus; })
        .def_property_readonly("witnesses", [](const PlaneSet& s) { return s.features().witnesses; });

    m.def("gallery_names", &gallery_names);
    m.def(
        "materialize",
        [](const std::string& kind, int depth, const std::string& params) {
            const GalleryKind k = parse_gallery_kind(kind);
            const GalleryParams p = params.empty() ? GalleryParams{} : gallery_params_from_json(k, nlohmann::json::parse(params));
            return materialize(k, p, depth);
        },
        py::arg("kind"), py::arg("depth"), py::arg("params_json") = "");

    m.def(
        "geodesic_json", [](const PlaneSet& s, Point z, Point w) { return dump(nlohmann::json(geodesic_distance(s, z, w))); },
        py::arg("set"), py::arg("z"), py::arg("w"));
    m.def("geodesic_length", [](const PlaneSet& s, Point z, Point w) { return geodesic_distance(s, z, w).length; },
          py::arg("set"), py::arg("z"), py::arg("w"));
    m.def("raster_geodesic", &raster_geodesic, py::arg("set"), py::arg("z"), py::arg("w"), py::arg("pixel") = 1.0 / 1024);
    m.def(
        "regularity_json",
        [](const PlaneSet& s, Point z, const std::vector<Point>& ws) { return dump(nlohmann::json(regularity_at(s, z, ws))); },
        py::arg("set"), py::arg("z"), py::arg("witnesses"));
    m.def("star_centre", &star_centre, py::arg("set"));

    py::class_<FunctionExpr>(m, "FunctionExpr")
        .def(py::init<Complex>(), py::arg("value"))
        .def_static("z", &FunctionExpr::z)
        .def_static("polynomial", &FunctionExpr::polynomial, py::arg("coeffs"))
        .def_static("ppow", &FunctionExpr::ppow, py::arg("base"), py::arg("alpha"))
        .def_static("cantor", &FunctionExpr::cantor, py::arg("arg"))
        .def("__call__", &FunctionExpr::operator(), py::arg("p"))
        .def("derivative", &FunctionExpr::derivative)
        .def("to_json", [](const FunctionExpr& e) { return dump(nlohmann::json(e)); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def("__pow__", [](const FunctionExpr& e, int n) { return pow(e, n); });
    py::implicitly_convertible<Complex, FunctionExpr>();

    m.def(
        "path_integral", [](const FunctionExpr& f, const PolyPath& p, double tol) { return path_integral(f, p, {tol}).value; },
        py::arg("f"), py::arg("path"), py::arg("tol") = 1e-9);
    m.def(
        "ftc_json",
        [](const FunctionExpr& f, const FunctionExpr& g, const PolyPath& p, double tol) {
            return dump(nlohmann::json(ftc_check(f, g, p, tol)));
        },
        py::arg("f"), py::arg("fprime"), py::arg("path"), py::arg("tol") = 1e-9);
    m.def("cantor_function", &cantor_function, py::arg("x"));

    m.def("zpow_bound", &zpow_bound, py::arg("z"), py::arg("w"));
    m.def("zpow_direct_quotient", &zpow_direct_quotient, py::arg("z"), py::arg("w"));
    m.def(
        "completeness_json",
        [](const PlaneSet& s, const std::vector<Point>& probes) { return dump(nlohmann::json(completeness_report(s, probes))); },
        py::arg("set"), py::arg("probes"));

    m.def("suite_names", &suite_names);
    m.def(
        "run_suite_json",
        [](const std::string& name, unsigned seed, std::optional<int> depth) {
            SuiteConfig cfg;
            cfg.seed = seed;
            cfg.depth = depth;
            py::gil_scoped_release release;
            return dump(nlohmann::json(run_suite(name, cfg)));
        },
        py::arg("name"), py::arg("seed") = 0, py::arg("depth") = std::nullopt);
}
