#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conefix/harness.hpp"

namespace py = pybind11;
using namespace conefix;

namespace {

MPoint as_point(const py::object& obj) {
    if (py::isinstance<py::float_>(obj) || py::isinstance<py::int_>(obj))
        return MPoint::scalar(obj.cast<double>());
    return MPoint(obj.cast<std::vector<double>>());
}

DomainBox as_box(const std::vector<std::pair<double, double>>& intervals) {
    DomainBox box;
    for (const auto& [lo, hi] : intervals) box.push_back({lo, hi});
    return box;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fixed points of T-Kannan and T-Chatterjea contractions on cone metric "
              "spaces, with convergence certificates";

    py::register_exception<Error>(m, "ConefixError", PyExc_ValueError);

    // ---- ordered space ----
    py::class_<EVector>(m, "EVector")
        .def(py::init<std::vector<double>>())
        .def_property_readonly("samples", &EVector::samples)
        .def("sup_norm", &EVector::sup_norm)
        .def("is_zero", &EVector::is_zero)
        .def("__len__", &EVector::dimension)
        .def("__getitem__", [](const EVector& v, std::size_t i) {
            if (i >= v.dimension()) throw py::index_error();
            return v[i];
        });

    py::enum_<ConeKind>(m, "ConeKind").value("orthant", ConeKind::orthant);

    py::class_<ConeSpec>(m, "ConeSpec")
        .def(py::init([](std::size_t dimension, double interior_margin, double normal_constant,
                         double membership_slack) {
                 ConeSpec c{dimension, ConeKind::orthant, interior_margin, normal_constant,
                            membership_slack};
                 c.validate();
                 return c;
             }),
             py::arg("dimension"), py::arg("interior_margin") = 1e-12,
             py::arg("normal_constant") = 1.0, py::arg("membership_slack") = 0.0)
        .def_readonly("dimension", &ConeSpec::dimension)
        .def_readonly("interior_margin", &ConeSpec::interior_margin)
        .def_readonly("normal_constant", &ConeSpec::normal_constant);

    py::enum_<OrderRelation>(m, "OrderRelation")
        .value("incomparable", OrderRelation::incomparable)
        .value("leq", OrderRelation::leq)
        .value("lt", OrderRelation::lt)
        .value("ll", OrderRelation::ll);

    py::class_<OrderReport>(m, "OrderReport")
        .def_readonly("relation", &OrderReport::relation)
        .def_readonly("witness", &OrderReport::witness);

    py::class_<AxiomViolation>(m, "AxiomViolation")
        .def_readonly("axiom", &AxiomViolation::axiom)
        .def_readonly("detail", &AxiomViolation::detail);

    py::class_<AxiomReport>(m, "AxiomReport")
        .def_readonly("samples_checked", &AxiomReport::samples_checked)
        .def_readonly("violations", &AxiomReport::violations)
        .def("passed", &AxiomReport::pass);

    py::class_<NormalityReport>(m, "NormalityReport")
        .def_readonly("k_observed", &NormalityReport::k_observed)
        .def_readonly("passed", &NormalityReport::pass);

    m.def("cone_contains",
          [](const ConeSpec& c, const std::vector<double>& x) {
              return cone_contains(c, EVector(x));
          },
          py::arg("cone"), py::arg("x"));
    m.def("cone_interior_contains",
          [](const ConeSpec& c, const std::vector<double>& x) {
              return cone_interior_contains(c, EVector(x));
          },
          py::arg("cone"), py::arg("x"));
    m.def("compare",
          [](const ConeSpec& c, const std::vector<double>& x, const std::vector<double>& y) {
              return compare(c, EVector(x), EVector(y));
          },
          py::arg("cone"), py::arg("x"), py::arg("y"));
    m.def("verify_cone_axioms",
          [](const ConeSpec& c, std::size_t samples, std::uint64_t seed) {
              return verify_cone_axioms(c, samples, seed);
          },
          py::arg("cone"), py::arg("sample_count"), py::arg("seed") = 42);
    m.def("verify_normality", &verify_normality, py::arg("cone"), py::arg("sample_count"),
          py::arg("seed") = 42);

    // ---- maps ----
    py::class_<MapExpr>(m, "MapExpr")
        .def_static("identity", &MapExpr::identity)
        .def("__str__", [](const MapExpr& e) { return to_string(e); })
        .def("__call__", [](const MapExpr& e, const py::object& p) {
            const MPoint r = eval_map(e, as_point(p));
            if (r.dimension() == 1) return py::cast(r[0]);
            return py::cast(r.coords);
        });

    m.def("parse_map", &parse_map, py::arg("source"));
    m.def("eval_map",
          [](const MapExpr& e, const py::object& p) { return eval_map(e, as_point(p)).coords; },
          py::arg("expr"), py::arg("point"));
    m.def("eval_weight", &eval_weight, py::arg("expr"), py::arg("t"));

    py::class_<InjectivityCollision>(m, "InjectivityCollision")
        .def_readonly("a", &InjectivityCollision::a)
        .def_readonly("b", &InjectivityCollision::b)
        .def_readonly("value_gap", &InjectivityCollision::value_gap);

    py::class_<InjectivityReport>(m, "InjectivityReport")
        .def_readonly("samples_used", &InjectivityReport::samples_used)
        .def_readonly("collisions", &InjectivityReport::collisions)
        .def("injective_on_samples", &InjectivityReport::injective_on_samples);

    m.def("spot_check_injective",
          [](const MapExpr& e, std::size_t samples, double lo, double hi, std::uint64_t seed) {
              return spot_check_injective(e, samples, Interval{lo, hi}, seed);
          },
          py::arg("expr"), py::arg("samples"), py::arg("lo"), py::arg("hi"),
          py::arg("seed") = 42);

    // ---- cone metric space ----
    py::enum_<BaseDistance>(m, "BaseDistance")
        .value("absolute_difference", BaseDistance::absolute_difference)
        .value("euclidean", BaseDistance::euclidean);

    py::class_<ConeMetricSpace>(m, "ConeMetricSpace")
        .def_static(
            "make",
            [](std::size_t point_dimension, std::size_t grid_size, const std::string& weight,
               BaseDistance base, double interior_margin, double normal_constant) {
                return ConeMetricSpace::make(point_dimension, grid_size, parse_map(weight), base,
                                             interior_margin, normal_constant);
            },
            py::arg("point_dimension") = 1, py::arg("grid_size") = 33,
            py::arg("weight") = "exp(t)",
            py::arg("base") = BaseDistance::absolute_difference,
            py::arg("interior_margin") = 1e-12, py::arg("normal_constant") = 1.0)
        .def_readonly("point_dimension", &ConeMetricSpace::point_dimension)
        .def_readonly("cone", &ConeMetricSpace::cone)
        .def_readonly("weight", &ConeMetricSpace::weight)
        .def("min_weight", &ConeMetricSpace::min_weight);

    m.def("distance",
          [](const ConeMetricSpace& s, const py::object& x, const py::object& y) {
              return distance(s, as_point(x), as_point(y));
          },
          py::arg("space"), py::arg("x"), py::arg("y"));
    m.def("verify_metric_axioms", &verify_metric_axioms, py::arg("space"),
          py::arg("sample_count"), py::arg("seed") = 42);
    m.def("sequence_converges",
          [](const ConeMetricSpace& s, const std::vector<py::object>& seq, const py::object& lim,
             double tol) {
              std::vector<MPoint> pts;
              for (const auto& p : seq) pts.push_back(as_point(p));
              return sequence_converges(s, pts, as_point(lim), tol);
          },
          py::arg("space"), py::arg("sequence"), py::arg("limit"), py::arg("tol"));
    m.def("is_cauchy",
          [](const ConeMetricSpace& s, const std::vector<py::object>& seq, double tol) {
              std::vector<MPoint> pts;
              for (const auto& p : seq) pts.push_back(as_point(p));
              return is_cauchy(s, pts, tol);
          },
          py::arg("space"), py::arg("sequence"), py::arg("tol"));

    // ---- contraction ----
    py::enum_<ContractionKind>(m, "ContractionKind")
        .value("TK1", ContractionKind::TK1)
        .value("TK2", ContractionKind::TK2)
        .value("K1", ContractionKind::K1)
        .value("K2", ContractionKind::K2);

    py::class_<ContractionViolation>(m, "ContractionViolation")
        .def_readonly("pair_index", &ContractionViolation::pair_index)
        .def_property_readonly("x", [](const ContractionViolation& v) { return v.x.coords; })
        .def_property_readonly("y", [](const ContractionViolation& v) { return v.y.coords; })
        .def_readonly("lhs_norm", &ContractionViolation::lhs_norm)
        .def_readonly("rhs_norm", &ContractionViolation::rhs_norm);

    py::class_<ContractionReport>(m, "ContractionReport")
        .def_readonly("kind", &ContractionReport::kind)
        .def_readonly("constant", &ContractionReport::constant)
        .def_readonly("violations", &ContractionReport::violations)
        .def_readonly("pairs_checked", &ContractionReport::pairs_checked)
        .def_readonly("estimated_min_constant", &ContractionReport::estimated_min_constant)
        .def("clean", &ContractionReport::clean);

    m.def("check_condition",
          [](const ConeMetricSpace& space, const MapExpr& T, const MapExpr& S,
             ContractionKind kind, double constant, std::size_t sample_pairs,
             const std::vector<std::pair<double, double>>& domain, std::uint64_t seed) {
              return check_condition(space, T, S, kind, constant, sample_pairs, as_box(domain),
                                     seed);
          },
          py::arg("space"), py::arg("T"), py::arg("S"), py::arg("kind"), py::arg("constant"),
          py::arg("sample_pairs"), py::arg("domain"), py::arg("seed") = 42);
    m.def("estimate_min_constant",
          [](const ConeMetricSpace& space, const MapExpr& T, const MapExpr& S,
             ContractionKind kind, std::size_t sample_pairs,
             const std::vector<std::pair<double, double>>& domain, std::uint64_t seed) {
              return estimate_min_constant(space, T, S, kind, sample_pairs, as_box(domain), seed);
          },
          py::arg("space"), py::arg("T"), py::arg("S"), py::arg("kind"),
          py::arg("sample_pairs"), py::arg("domain"), py::arg("seed") = 42);
    m.def("kannan_reduction_check",
          [](const ConeMetricSpace& space, const MapExpr& S, double constant,
             std::size_t sample_pairs, const std::vector<std::pair<double, double>>& domain,
             std::uint64_t seed) {
              return kannan_reduction_check(space, S, constant, sample_pairs, as_box(domain),
                                            seed);
          },
          py::arg("space"), py::arg("S"), py::arg("constant"), py::arg("sample_pairs"),
          py::arg("domain"), py::arg("seed") = 42);

    // ---- solver ----
    py::class_<MapCapabilities>(m, "MapCapabilities")
        .def(py::init([](bool injective, bool continuous, bool subsequentially_convergent,
                         bool sequentially_convergent) {
                 MapCapabilities c{injective, continuous, subsequentially_convergent,
                                   sequentially_convergent};
                 c.validate();
                 return c;
             }),
             py::arg("injective") = true, py::arg("continuous") = true,
             py::arg("subsequentially_convergent") = true,
             py::arg("sequentially_convergent") = true)
        .def_readonly("injective", &MapCapabilities::injective)
        .def_readonly("continuous", &MapCapabilities::continuous)
        .def_readonly("subsequentially_convergent", &MapCapabilities::subsequentially_convergent)
        .def_readonly("sequentially_convergent", &MapCapabilities::sequentially_convergent);

    py::class_<Problem>(m, "Problem")
        .def(py::init([](const ConeMetricSpace& space, const MapExpr& T, const MapExpr& S,
                         ContractionKind kind, double constant, const py::object& x0,
                         const std::vector<std::pair<double, double>>& domain,
                         const MapCapabilities& caps) {
                 Problem p{space, T, caps, S, kind, constant, as_point(x0), as_box(domain)};
                 p.validate();
                 return p;
             }),
             py::arg("space"), py::arg("T"), py::arg("S"), py::arg("kind"), py::arg("constant"),
             py::arg("x0"), py::arg("domain"),
             py::arg("capabilities") = MapCapabilities{});

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("h", &Certificate::h)
        .def_readonly("d0_norm", &Certificate::d0_norm)
        .def_readonly("apriori_curve", &Certificate::apriori_curve)
        .def_readonly("aposteriori_residual", &Certificate::aposteriori_residual)
        .def_readonly("decay_verified", &Certificate::decay_verified);

    py::class_<FixedPointResult>(m, "FixedPointResult")
        .def_property_readonly("u", [](const FixedPointResult& r) { return r.u.coords; })
        .def_readonly("v_norm_gap", &FixedPointResult::v_norm_gap)
        .def_readonly("iterations", &FixedPointResult::iterations)
        .def_readonly("trace", &FixedPointResult::trace)
        .def_readonly("certificate", &FixedPointResult::certificate)
        .def_readonly("unique_probe", &FixedPointResult::unique_probe)
        .def_readonly("converged", &FixedPointResult::converged)
        .def_readonly("subsequential_only", &FixedPointResult::subsequential_only);

    m.def("solve", &solve, py::arg("problem"), py::arg("tol") = 1e-9,
          py::arg("max_iter") = 10000);
    m.def("apriori_bound", &apriori_bound, py::arg("h"), py::arg("d0_norm"), py::arg("K"),
          py::arg("n"));
    m.def("iterations_needed", &iterations_needed, py::arg("h"), py::arg("d0_norm"),
          py::arg("K"), py::arg("tol"));
    m.def("verify_decay",
          [](const std::vector<double>& trace, double h, double K) {
              return verify_decay(trace, h, K);
          },
          py::arg("trace"), py::arg("h"), py::arg("K") = 1.0);
    m.def("uniqueness_probe",
          [](const Problem& p, const std::vector<py::object>& starts, double tol,
             std::size_t max_iter) {
              std::vector<MPoint> pts;
              for (const auto& s : starts) pts.push_back(as_point(s));
              return uniqueness_probe(p, pts, tol, max_iter);
          },
          py::arg("problem"), py::arg("starts"), py::arg("tol") = 1e-9,
          py::arg("max_iter") = 10000);

    // ---- harness ----
    py::class_<ProblemFile>(m, "ProblemFile")
        .def_readonly("origin", &ProblemFile::origin)
        .def_readonly("grid_size", &ProblemFile::grid_size)
        .def_readonly("weight_source", &ProblemFile::weight_source)
        .def_readonly("T_source", &ProblemFile::T_source)
        .def_readonly("S_source", &ProblemFile::S_source)
        .def_readonly("kind", &ProblemFile::kind)
        .def_readonly("constant", &ProblemFile::constant)
        .def_property_readonly("x0", [](const ProblemFile& pf) { return pf.x0.coords; })
        .def_readonly("tol", &ProblemFile::tol)
        .def_readonly("max_iter", &ProblemFile::max_iter)
        .def("to_space", &ProblemFile::to_space)
        .def("to_problem", &ProblemFile::to_problem);

    m.def("load_problem", &load_problem, py::arg("path_or_fixture"));
    m.def("parse_problem_json", &parse_problem_json, py::arg("text"),
          py::arg("origin") = "<string>");
    m.def("fixture_names", &fixture_names);
    m.def("fixture_json", &fixture_json, py::arg("name"));

    m.def("run_report",
          [](const std::string& problem, const std::string& subcommand, std::uint64_t seed,
             std::optional<double> tol, std::optional<std::size_t> max_iter,
             std::size_t check_pairs, std::size_t verify_samples) {
              RunOptions options;
              options.subcommand = subcommand_from_string(subcommand);
              options.seed = seed;
              options.tol = tol;
              options.max_iter = max_iter;
              options.check_pairs = check_pairs;
              options.verify_samples = verify_samples;
              RunReport report = run(problem, options);
              return py::make_tuple(report.success() ? 0 : 1, report.to_json_text());
          },
          py::arg("problem"), py::arg("subcommand") = "all", py::arg("seed") = 42,
          py::arg("tol") = py::none(), py::arg("max_iter") = py::none(),
          py::arg("check_pairs") = 100000, py::arg("verify_samples") = 10000,
          "Run a subcommand against a problem file or fixture; returns "
          "(exit_status, report_json)");
}
