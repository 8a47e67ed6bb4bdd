#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "umbilic/report_io.hpp"
#include "umbilic/umbilics.hpp"
#include "umbilic/verify.hpp"

namespace py = pybind11;
using namespace umbilic;

namespace {

SurfaceChart chart_for(const SphereFamilyParams& params, bool antipodal) {
  return sphere_surface_chart(
      params, antipodal ? ChartLabel::Antipodal : ChartLabel::Primary);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Perturbed-metric constructions, umbilic indices and identity "
            "verification (bindings over the C++ core)";

  py::register_exception<InvalidParamsError>(m, "InvalidParamsError");
  py::register_exception<DegenerateNormalError>(m, "DegenerateNormalError");
  py::register_exception<SingularMetricError>(m, "SingularMetricError");

  py::class_<FlatFamilyParams>(m, "FlatParams")
      .def(py::init([](int n, int m_, double lam, double r0, double r1,
                       double epsilon) {
             FlatFamilyParams p{n, m_, lam, r0, r1, epsilon};
             p.validate();
             return p;
           }),
           py::arg("n") = 1, py::arg("m") = 1, py::arg("lam") = 0.3,
           py::arg("r0") = 0.5, py::arg("r1") = 0.9, py::arg("epsilon") = 0.1)
      .def_readwrite("n", &FlatFamilyParams::n)
      .def_readwrite("m", &FlatFamilyParams::m)
      .def_readwrite("lam", &FlatFamilyParams::lambda)
      .def_readwrite("r0", &FlatFamilyParams::r0)
      .def_readwrite("r1", &FlatFamilyParams::r1)
      .def_readwrite("epsilon", &FlatFamilyParams::epsilon);

  py::class_<SphereFamilyParams>(m, "SphereParams")
      .def(py::init([](double lam, double R0, double epsilon) {
             SphereFamilyParams p{lam, R0, epsilon};
             p.validate();
             return p;
           }),
           py::arg("lam") = 0.5, py::arg("R0") = 1.0, py::arg("epsilon") = 0.1)
      .def_readwrite("lam", &SphereFamilyParams::lambda)
      .def_readwrite("R0", &SphereFamilyParams::R0)
      .def_readwrite("epsilon", &SphereFamilyParams::epsilon);

  py::class_<HalfInteger>(m, "HalfInteger")
      .def_readonly("twice", &HalfInteger::twice)
      .def("value", &HalfInteger::value)
      .def("__float__", &HalfInteger::value)
      .def("__repr__", &HalfInteger::str)
      .def("__eq__", [](const HalfInteger& a, const HalfInteger& b) { return a == b; });

  py::class_<ShapeData>(m, "ShapeData")
      .def_readonly("sigma", &ShapeData::sigma)
      .def_readonly("rho", &ShapeData::rho)
      .def_readonly("kappa", &ShapeData::kappa);

  py::class_<IndexResult>(m, "IndexResult")
      .def_readonly("index", &IndexResult::index)
      .def_readonly("radius", &IndexResult::radius)
      .def_readonly("samples", &IndexResult::samples)
      .def_readonly("multiple_zero_warning", &IndexResult::multiple_zero_warning);

  py::class_<UmbilicPoint>(m, "UmbilicPoint")
      .def_readonly("location", &UmbilicPoint::location)
      .def_readonly("index", &UmbilicPoint::index)
      .def_readonly("loop_radius", &UmbilicPoint::loop_radius)
      .def_readonly("loop_samples", &UmbilicPoint::loop_samples)
      .def_property_readonly("chart", [](const UmbilicPoint& p) {
        return p.chart == ChartLabel::Primary ? "primary" : "antipodal";
      });

  py::class_<UmbilicReport>(m, "UmbilicReport")
      .def_readonly("points", &UmbilicReport::points)
      .def_readonly("totally_umbilic", &UmbilicReport::totally_umbilic)
      .def("total_index", &UmbilicReport::total_index);

  py::class_<ResidualEntry>(m, "ResidualEntry")
      .def_readonly("name", &ResidualEntry::name)
      .def_readonly("max_residual", &ResidualEntry::max_residual)
      .def_readonly("tolerance", &ResidualEntry::tolerance)
      .def_readonly("passed", &ResidualEntry::pass);

  py::class_<ResidualReport>(m, "ResidualReport")
      .def_readonly("family", &ResidualReport::family)
      .def_readonly("provenance", &ResidualReport::provenance)
      .def_readonly("entries", &ResidualReport::entries)
      .def_readonly("notes", &ResidualReport::notes)
      .def("all_pass", &ResidualReport::all_pass)
      .def("csv", [](const ResidualReport& r) { return residual_report_csv(r); });

  py::class_<BudgetReport>(m, "BudgetReport")
      .def_readonly("numeric_l2", &BudgetReport::numeric_l2)
      .def_readonly("closed_form_bound", &BudgetReport::closed_form_bound)
      .def_readonly("tight_bound", &BudgetReport::tight_bound)
      .def_readonly("epsilon_target", &BudgetReport::epsilon_target)
      .def_readonly("lambda_used", &BudgetReport::lambda_used)
      .def_readonly("satisfied", &BudgetReport::satisfied);

  py::class_<ConvexityScanResult>(m, "ConvexityScanResult")
      .def_readonly("min_kappa", &ConvexityScanResult::min_kappa)
      .def_readonly("argmin", &ConvexityScanResult::argmin);

  py::class_<Theorem1Report>(m, "Theorem1Report")
      .def_readonly("requested_index", &Theorem1Report::requested_index)
      .def_readonly("params", &Theorem1Report::params)
      .def_readonly("budget", &Theorem1Report::budget)
      .def_readonly("index", &Theorem1Report::index)
      .def_readonly("index_matches", &Theorem1Report::index_matches)
      .def_readonly("passed", &Theorem1Report::passed);

  py::class_<Theorem2Report>(m, "Theorem2Report")
      .def_readonly("params", &Theorem2Report::params)
      .def_readonly("budget", &Theorem2Report::budget)
      .def_readonly("umbilics", &Theorem2Report::umbilics)
      .def_readonly("convexity", &Theorem2Report::convexity)
      .def_readonly("passed", &Theorem2Report::passed);

  // perturbation fields
  m.def("beta_flat", &beta_flat, py::arg("params"), py::arg("z"));
  m.def("beta_sphere", &beta_sphere, py::arg("params"), py::arg("xi"));
  m.def("beta_antipodal", &beta_antipodal, py::arg("params"), py::arg("xi_prime"));
  m.def("antipodal_coordinate", &antipodal_coordinate, py::arg("xi"));

  // metric evaluation
  m.def(
      "flat_metric_components",
      [](const FlatFamilyParams& params, double x, double y, double t) {
        return build_flat_metric(params).components(ChartPoint(x, y, t));
      },
      py::arg("params"), py::arg("x"), py::arg("y"), py::arg("t"));
  m.def(
      "sphere_metric_components",
      [](const SphereFamilyParams& params, double u, double v, double R,
         bool antipodal) {
        const ChartLabel label =
            antipodal ? ChartLabel::Antipodal : ChartLabel::Primary;
        return build_sphere_metric(params, label).components(ChartPoint(u, v, R));
      },
      py::arg("params"), py::arg("u"), py::arg("v"), py::arg("R"),
      py::arg("antipodal") = false);
  m.def(
      "flat_metric_det",
      [](const FlatFamilyParams& params, double x, double y, double t) {
        return metric_det(build_flat_metric(params), ChartPoint(x, y, t));
      },
      py::arg("params"), py::arg("x"), py::arg("y"), py::arg("t"));
  m.def(
      "flat_deviation",
      [](const FlatFamilyParams& params, double x, double y, double t) {
        const MetricField g = build_flat_metric(params);
        return pointwise_deviation(g, *g.reference(), ChartPoint(x, y, t));
      },
      py::arg("params"), py::arg("x"), py::arg("y"), py::arg("t"));

  // second fundamental form
  m.def(
      "flat_shape_data",
      [](const FlatFamilyParams& params, Complex w) {
        return second_fundamental_components(flat_surface_chart(params), w);
      },
      py::arg("params"), py::arg("w"));
  m.def(
      "sphere_shape_data",
      [](const SphereFamilyParams& params, Complex xi, bool antipodal) {
        return second_fundamental_components(chart_for(params, antipodal), xi);
      },
      py::arg("params"), py::arg("xi"), py::arg("antipodal") = false);

  // umbilic indices
  m.def(
      "flat_umbilic_index",
      [](const FlatFamilyParams& params, Complex center, double radius) {
        return umbilic_index(flat_surface_chart(params), center, radius);
      },
      py::arg("params"), py::arg("center") = Complex{0.0, 0.0},
      py::arg("radius") = 0.1);
  m.def(
      "sphere_umbilic_index",
      [](const SphereFamilyParams& params, Complex center, double radius,
         bool antipodal) {
        return umbilic_index(chart_for(params, antipodal), center, radius);
      },
      py::arg("params"), py::arg("center") = Complex{0.0, 0.0},
      py::arg("radius") = 0.3, py::arg("antipodal") = true);
  m.def("sphere_umbilic_scan", &sphere_umbilic_scan, py::arg("params"),
        py::arg("grid") = 100);
  m.def(
      "winding_number",
      [](const std::function<Complex(double)>& field, int samples) {
        return winding_number(field, samples);
      },
      py::arg("field"), py::arg("samples") = 720);

  // verification
  m.def(
      "run_residual_suite_flat",
      [](const FlatFamilyParams& params, int samples, std::uint64_t seed) {
        return run_residual_suite(params, samples, seed);
      },
      py::arg("params"), py::arg("samples") = 100, py::arg("seed") = 42);
  m.def(
      "run_residual_suite_sphere",
      [](const SphereFamilyParams& params, int samples, std::uint64_t seed) {
        return run_residual_suite(params, samples, seed);
      },
      py::arg("params"), py::arg("samples") = 100, py::arg("seed") = 42);
  m.def("lambda_budget_flat", &lambda_budget_flat, py::arg("epsilon"));
  m.def("lambda_budget_sphere", &lambda_budget_sphere, py::arg("epsilon"),
        py::arg("R0"));
  m.def("flat_l2", &flat_family_l2, py::arg("params"), py::arg("order") = 16);
  m.def("sphere_l2", &sphere_family_l2, py::arg("params"), py::arg("order") = 16);
  m.def("flat_budget_report", &flat_budget_report, py::arg("params"),
        py::arg("order") = 16);
  m.def("sphere_budget_report", &sphere_budget_report, py::arg("params"),
        py::arg("order") = 16);
  m.def("convexity_scan", &convexity_scan, py::arg("params"), py::arg("grid") = 100);
  m.def(
      "verify_theorem1",
      [](int k_twice, double epsilon) {
        return verify_theorem1(HalfInteger{k_twice}, epsilon);
      },
      py::arg("k_twice"), py::arg("epsilon"),
      "k_twice is twice the requested half-integer index");
  m.def("verify_theorem2", &verify_theorem2, py::arg("epsilon"), py::arg("R0") = 1.0,
        py::arg("grid") = 100);
}
