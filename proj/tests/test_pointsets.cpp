#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mzls/core_math.hpp"
#include "mzls/error.hpp"
#include "mzls/mz_analysis.hpp"
#include "mzls/pointsets.hpp"
#include "oracles.hpp"

using namespace mzls;

namespace {

double weight_sum(const Layer& l) {
  long double s = 0.0L;
  for (double w : l.weights) s += w;
  return static_cast<double>(s);
}

}  // namespace

TEST_SUITE("pointsets") {

TEST_CASE("unit point validation") {
  CHECK_NOTHROW(UnitPoint::from(0.6, 0.8, 0.0));
  CHECK_THROWS_AS(UnitPoint::from(0.6, 0.8, 0.1), DomainError);
  CHECK_THROWS_AS(UnitPoint::normalized(0.0, 0.0, 0.0), DomainError);
  const UnitPoint a = UnitPoint::from(1, 0, 0), b = UnitPoint::from(0, 1, 0);
  CHECK(geodesic_distance(a, b) == doctest::Approx(std::numbers::pi / 2));
  CHECK(geodesic_distance(a, a) == 0.0);
}

TEST_CASE("gauss legendre rule") {
  for (int count : {1, 2, 5, 17, 65}) {
    const GaussLegendre gl = gauss_legendre(count);
    double s = 0.0;
    for (double w : gl.weights) s += w;
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 1; i < count; ++i) CHECK(gl.nodes[i] > gl.nodes[i - 1]);
    // exact on t^(2 count - 2)
    double m = 0.0;
    for (int i = 0; i < count; ++i) m += gl.weights[i] * std::pow(gl.nodes[i], 2 * count - 2);
    CHECK(m == doctest::Approx(2.0 / (2 * count - 1)).epsilon(1e-13));
  }
}

TEST_CASE("gauss product layer structure") {
  const Layer l0 = gauss_product_layer(0);
  CHECK(l0.size() == 2);
  CHECK(l0.weights[0] == doctest::Approx(0.5));
  CHECK(l0.weights[1] == doctest::Approx(0.5));
  for (int n : {0, 1, 4, 8, 16, 33}) {
    const Layer l = gauss_product_layer(n);
    CHECK(l.size() == static_cast<std::size_t>((n + 1) * (2 * n + 2)));
    CHECK(std::abs(weight_sum(l) - 1.0) <= 1e-14);
    CHECK(l.degree == n);
    CHECK_NOTHROW(l.validate());
  }
}

TEST_CASE("gauss product layer is exact through degree 2n+1") {
  const int n = 7;
  const Layer l = gauss_product_layer(n);
  const SphericalHarmonics Y(2 * n + 1);
  Eigen::VectorXd moments = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(Y.size()));
  for (std::size_t k = 0; k < l.size(); ++k) moments += l.weights[k] * Y.eval(l.points[k]);
  CHECK(std::abs(moments[0] - 1.0) <= 1e-14);
  CHECK(moments.tail(moments.size() - 1).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("gauss product layer certifies A = B = 1") {
  const DesignSystem sys = build_design(gauss_product_layer(4), 4);
  CHECK(std::abs(sys.A() - 1.0) <= 1e-10);
  CHECK(std::abs(sys.B() - 1.0) <= 1e-10);
}

TEST_CASE("fibonacci layer") {
  const Layer l = fibonacci_layer(3, 2.0);
  CHECK(l.size() == 32);
  for (double w : l.weights) CHECK(w == doctest::Approx(1.0 / 32).epsilon(1e-15));
  CHECK(fibonacci_layer(8, 0.5).size() == 41);  // ceil(0.5 * 81)
  const DesignSystem sys = build_design(fibonacci_layer(8, 2.0), 8);
  CHECK(sys.A() > 0.0);
  CHECK(std::isfinite(sys.kappa()));
  CHECK_THROWS_AS(build_design(fibonacci_layer(8, 0.5), 8), MZDeficient);
  CHECK_THROWS_AS(fibonacci_layer(3, 0.0), InvalidArgument);
  // counts are exact when c (n+1)^2 is an integer
  CHECK(fibonacci_layer(9, 1.2).size() == 120);
}

TEST_CASE("perturbation contract") {
  const Layer base = gauss_product_layer(8);
  const Layer same = perturb_layer(base, 0.0, 5);
  for (std::size_t k = 0; k < base.size(); ++k) CHECK(same.points[k] == base.points[k]);

  const Layer a = perturb_layer(base, 0.5, 42);
  const Layer b = perturb_layer(base, 0.5, 42);
  const Layer c = perturb_layer(base, 0.5, 43);
  bool differ = false;
  for (std::size_t k = 0; k < base.size(); ++k) {
    CHECK(a.points[k] == b.points[k]);
    differ = differ || !(a.points[k] == c.points[k]);
    CHECK(geodesic_distance(a.points[k], base.points[k]) <= 0.5 / 9 + 1e-14);
    CHECK(std::abs(std::hypot(a.points[k].x(), a.points[k].y(), a.points[k].z()) - 1.0) <= 1e-12);
  }
  CHECK(differ);
  CHECK(a.size() == base.size());
  CHECK(weight_sum(a) == doctest::Approx(weight_sum(base)).epsilon(1e-15));
  CHECK(build_design(a, 8).kappa() > 1.0);
}

TEST_CASE("covering grid") {
  for (int r : {1, 2, 5, 20}) {
    const auto g = covering_grid(r);
    CHECK(g.size() == covering_grid_size(r));
  }
  CHECK(covering_grid_size(10) == 2 + 9 * 20);
}

TEST_CASE("mesh norm") {
  Layer one;
  one.points = {UnitPoint::north_pole()};
  one.weights = {1.0};
  CHECK(mesh_norm(one, 40) == doctest::Approx(std::numbers::pi).epsilon(1e-12));

  Layer two;
  two.points = {UnitPoint::north_pole(), UnitPoint::from(0, 0, -1)};
  two.weights = {0.5, 0.5};
  CHECK(mesh_norm(two, 40) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));

  // Gauss product grid: bounded by the gap between the pole and the first
  // latitude ring, so n * rho stays near 2.2 rather than below pi / 2.
  const Layer g = gauss_product_layer(16);
  const GaussLegendre gl = gauss_legendre(17);
  const double pole_gap = std::acos(gl.nodes.back());
  const double rho = mesh_norm(g, 96);
  CHECK(rho >= pole_gap - 1e-12);
  CHECK(16 * rho == doctest::Approx(2.2).epsilon(0.02));

  CHECK_THROWS_AS(mesh_norm(Layer{}, 4), InvalidArgument);
}

TEST_CASE("mesh norm is antitone under insertion") {
  Layer l = fibonacci_layer(4, 1.5);
  const double before = mesh_norm(l, 30);
  const double sep_before = min_separation(l);
  l.points.push_back(UnitPoint::normalized(0.3, -0.2, 0.9));
  l.weights.push_back(1.0 / 40);
  CHECK(mesh_norm(l, 30) <= before);
  CHECK(min_separation(l) <= sep_before);
}

TEST_CASE("minimum separation") {
  Layer two;
  two.points = {UnitPoint::north_pole(), UnitPoint::from(0, 0, -1)};
  two.weights = {0.5, 0.5};
  CHECK(min_separation(two) == doctest::Approx(std::numbers::pi));
  two.points[1] = two.points[0];
  CHECK(min_separation(two) == 0.0);

  const Layer f = fibonacci_layer(8, 2.0);
  const double sep = min_separation(f);
  CHECK(sep > 0.0);
  // equals a brute-force scan
  double brute = 10.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) brute = std::min(brute, std::acos(std::clamp(f.points[i].dot(f.points[j]), -1.0, 1.0)));
  CHECK(sep == doctest::Approx(brute).epsilon(1e-7));
  CHECK(9 * sep > 0.5);

  Layer single;
  single.points = {UnitPoint::north_pole()};
  single.weights = {1.0};
  CHECK_THROWS_AS(min_separation(single), InvalidArgument);
}

TEST_CASE("layer validation") {
  Layer l = fibonacci_layer(2, 2.0);
  l.weights[3] = 0.0;
  CHECK_THROWS_AS(l.validate(), InvalidArgument);
  l.weights.pop_back();
  CHECK_THROWS_AS(l.validate(), DimensionMismatch);
}

}  // TEST_SUITE
