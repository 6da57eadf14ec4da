#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mzls/approximation.hpp"
#include "mzls/error.hpp"
#include "mzls/io.hpp"
#include "mzls/quadrature.hpp"
#include "mzls/selftest.hpp"
#include "mzls/sobolev_lab.hpp"

namespace py = pybind11;
using namespace mzls;

namespace {

using PointArray = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

PointArray points_of(const Layer& l) {
  PointArray P(static_cast<Eigen::Index>(l.size()), 3);
  for (std::size_t k = 0; k < l.size(); ++k) {
    for (int c = 0; c < 3; ++c) P(static_cast<Eigen::Index>(k), c) = l.points[k][c];
  }
  return P;
}

std::vector<UnitPoint> to_points(const Eigen::Ref<const PointArray>& P) {
  std::vector<UnitPoint> out;
  out.reserve(static_cast<std::size_t>(P.rows()));
  for (Eigen::Index k = 0; k < P.rows(); ++k) out.push_back(UnitPoint::from(P(k, 0), P(k, 1), P(k, 2)));
  return out;
}

UnitPoint to_point(const std::array<double, 3>& x) { return UnitPoint::from(x[0], x[1], x[2]); }

Layer make_layer(const Eigen::Ref<const PointArray>& P, const std::vector<double>& w, int degree) {
  Layer l;
  l.degree = degree;
  l.points = to_points(P);
  l.weights = w;
  l.provenance = "python";
  l.validate();
  return l;
}

}  // namespace

PYBIND11_MODULE(_mzls, m) {
  m.doc() = "Weighted least squares approximation and quadrature on the 2-sphere";

  auto base = py::register_exception<Error>(m, "Error");
  auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", invalid.ptr());
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", invalid.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", invalid.ptr());
  py::register_exception<OverflowError>(m, "OverflowError", base.ptr());
  auto numerical = py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
  py::register_exception<RankDeficient>(m, "RankDeficient", numerical.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", numerical.ptr());
  py::register_exception<MZDeficient>(m, "MZDeficient", numerical.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def("gegenbauer", &gegenbauer, py::arg("lam"), py::arg("ell"), py::arg("t"));
  m.def("dim_harmonic", &dim_harmonic, py::arg("d"), py::arg("ell"));
  m.def("dim_poly", &dim_poly, py::arg("d"), py::arg("n"));
  m.def("kernel_E", &kernel_E, py::arg("d"), py::arg("n"), py::arg("u"));
  m.def(
      "basis_eval", [](int n, const std::array<double, 3>& x) { return basis_eval({2, n}, to_point(x)); },
      py::arg("n"), py::arg("x"), "Real orthonormal harmonics of degree <= n at x.");

  py::class_<Layer>(m, "Layer")
      .def(py::init(&make_layer), py::arg("points"), py::arg("weights"), py::arg("degree"))
      .def_property_readonly("points", &points_of)
      .def_readonly("weights", &Layer::weights)
      .def_readonly("degree", &Layer::degree)
      .def_readonly("provenance", &Layer::provenance)
      .def("__len__", &Layer::size)
      .def("to_string", &layer_to_string)
      .def_static("from_string", [](const std::string& s) {
        std::istringstream in(s);
        return parse_layer(in);
      });

  m.def("gauss_product_layer", &gauss_product_layer, py::arg("n"));
  m.def("fibonacci_layer", &fibonacci_layer, py::arg("n"), py::arg("oversampling") = 2.0);
  m.def("perturb_layer", &perturb_layer, py::arg("layer"), py::arg("epsilon"), py::arg("seed"));
  m.def("mesh_norm", &mesh_norm, py::arg("layer"), py::arg("grid_resolution"));
  m.def("min_separation", &min_separation, py::arg("layer"));

  py::class_<DesignOptions>(m, "DesignOptions")
      .def(py::init<>())
      .def_readwrite("rank_tol", &DesignOptions::rank_tol)
      .def_readwrite("eig_tol", &DesignOptions::eig_tol);

  py::class_<DesignSystem>(m, "DesignSystem")
      .def_property_readonly("degree", &DesignSystem::degree)
      .def_property_readonly("A", &DesignSystem::A)
      .def_property_readonly("B", &DesignSystem::B)
      .def_property_readonly("kappa", &DesignSystem::kappa)
      .def_property_readonly("layer", &DesignSystem::layer, py::return_value_policy::reference_internal)
      .def_property_readonly("design", &DesignSystem::design, py::return_value_policy::reference_internal)
      .def_property_readonly("gram", &DesignSystem::gram, py::return_value_policy::reference_internal);

  m.def(
      "build_design", [](const Layer& l, int n, const DesignOptions& o) { return build_design(l, n, o); },
      py::arg("layer"), py::arg("n"), py::arg("options") = DesignOptions{});

  py::class_<MZVerification>(m, "MZVerification")
      .def_readonly("trials", &MZVerification::trials)
      .def_readonly("min_quotient", &MZVerification::min_quotient)
      .def_readonly("max_quotient", &MZVerification::max_quotient)
      .def_readonly("contained", &MZVerification::contained);
  m.def("verify_mz", &verify_mz, py::arg("sys"), py::arg("trials"), py::arg("seed") = 0, py::arg("tol") = 1e-9);

  py::class_<Approximant>(m, "Approximant")
      .def(py::init([](int n, const Eigen::VectorXd& c) {
             if (static_cast<std::size_t>(c.size()) != BasisSpec{2, n}.size()) throw DimensionMismatch("coefficient count must be (n+1)^2");
             return Approximant{BasisSpec{2, n}, c};
           }),
           py::arg("n"), py::arg("coeffs"))
      .def_property_readonly("degree", [](const Approximant& a) { return a.basis.degree; })
      .def_readonly("coeffs", &Approximant::coeffs)
      .def("__call__", [](const Approximant& a, const std::array<double, 3>& x) { return evaluate(a, to_point(x)); })
      .def("evaluate", [](const Approximant& a, const Eigen::Ref<const PointArray>& P) {
        Eigen::VectorXd out(P.rows());
        const auto pts = to_points(P);
        for (std::size_t k = 0; k < pts.size(); ++k) out[static_cast<Eigen::Index>(k)] = evaluate(a, pts[k]);
        return out;
      });

  m.def("fit", &fit, py::arg("sys"), py::arg("samples"));
  m.def("hyperinterpolate", &hyperinterpolate, py::arg("layer"), py::arg("n"), py::arg("samples"));
  m.def(
      "discrete_kernel",
      [](const DesignSystem& s, const std::array<double, 3>& x, const std::array<double, 3>& y) {
        return discrete_kernel(s, to_point(x), to_point(y));
      },
      py::arg("sys"), py::arg("x"), py::arg("y"));
  m.def("lebesgue_constant", &lebesgue_constant, py::arg("sys"), py::arg("grid_resolution"));

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def_readonly("degree", &QuadratureRule::degree)
      .def_readonly("weights", &QuadratureRule::weights)
      .def_readonly("exactness_degree", &QuadratureRule::exactness_degree)
      .def("integrate", [](const QuadratureRule& r, const Eigen::VectorXd& y) { return integrate(r, y); });
  m.def("lsq_weights", &lsq_weights, py::arg("sys"));

  py::class_<ZonalTestFunction>(m, "ZonalTestFunction")
      .def(py::init([](const std::array<double, 3>& pole, double t, int l_max) {
             return ZonalTestFunction::power_law(UnitPoint::normalized(pole[0], pole[1], pole[2]), t, l_max);
           }),
           py::arg("pole"), py::arg("t"), py::arg("l_max"))
      .def("__call__", [](const ZonalTestFunction& f, const std::array<double, 3>& x) { return f(to_point(x)); })
      .def("sample", [](const ZonalTestFunction& f, const Layer& l) { return sample(f.source(), l); })
      .def("harmonic_coefficients", &ZonalTestFunction::harmonic_coefficients)
      .def_property_readonly("integral", &ZonalTestFunction::integral)
      .def_property_readonly("l_max", &ZonalTestFunction::l_max);
  m.def("sobolev_norm", &sobolev_norm, py::arg("f"), py::arg("sigma"));
  m.def("projection_error_exact", &projection_error_exact, py::arg("f"), py::arg("n"));
  m.def("lsq_error_exact", &lsq_error_exact, py::arg("f"), py::arg("p"), py::arg("n"));

  m.def(
      "convergence_sweep",
      [](const std::string& family, const ZonalTestFunction& f, const std::vector<int>& degrees, double oversampling,
         double epsilon, std::uint64_t seed) {
        if (family != "gauss" && family != "fibonacci") throw InvalidArgument("family must be gauss or fibonacci");
        const LayerFamily fam{family == "gauss" ? FamilyKind::Gauss : FamilyKind::Fibonacci, oversampling, epsilon, seed};
        const ConvergenceReport r = convergence_sweep(fam, f, degrees);
        py::list points;
        for (const ConvergencePoint& p : r.points) {
          py::dict d;
          d["n"] = p.n;
          d["valid"] = p.valid;
          d["kappa"] = p.kappa;
          d["err_l2"] = p.err_l2;
          d["err_Sn"] = p.err_Sn;
          d["err_quad"] = p.err_quad;
          points.append(d);
        }
        py::dict out;
        out["family"] = r.family;
        out["points"] = points;
        out["slope_l2"] = r.slope_l2.slope;
        out["slope_quad"] = r.slope_quad.slope;
        return out;
      },
      py::arg("family"), py::arg("f"), py::arg("degrees"), py::arg("oversampling") = 2.0, py::arg("epsilon") = 0.0,
      py::arg("seed") = 0);

  m.def("selftest", []() {
    py::list out;
    for (const SelfTestResult& r : run_selftest()) out.append(py::make_tuple(r.name, r.passed, r.detail));
    return out;
  });
}
