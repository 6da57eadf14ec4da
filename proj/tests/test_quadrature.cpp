#include "doctest.h"

#include <cmath>

#include "mzls/error.hpp"
#include "mzls/quadrature.hpp"
#include "mzls/sobolev_lab.hpp"
#include "oracles.hpp"

using namespace mzls;

TEST_SUITE("quadrature") {

TEST_CASE("gauss layers reproduce their own weights") {
  for (int n : {1, 4, 10}) {
    const DesignSystem sys = build_design(gauss_product_layer(n), n);
    const QuadratureRule rule = lsq_weights(sys);
    for (std::size_t k = 0; k < sys.layer().size(); ++k) {
      CHECK(std::abs(rule.weights[static_cast<Eigen::Index>(k)] - sys.layer().weights[k]) <= 1e-10);
    }
    CHECK(rule.exactness_degree == 2 * n + 1);
    CHECK(certify_rule(rule, n).negative_weights == 0);
  }
}

TEST_CASE("weights sum to one and integrate Pi_n exactly") {
  for (int n : {2, 5, 8}) {
    const DesignSystem sys = build_design(perturb_layer(fibonacci_layer(n, 2.0), 0.7, n), n);
    const QuadratureRule rule = lsq_weights(sys);
    CHECK(std::abs(rule.weights.sum() - 1.0) <= 1e-10);
    const RuleCertificate cert = certify_rule(rule, n);
    CHECK(cert.exactness_degree >= n);
    CHECK(cert.max_harmonic_residual <= 1e-9);
    CHECK(cert.sum_abs_w >= cert.sum_w - 1e-15);

    const Approximant p{BasisSpec{2, n}, oracle::random_coefficients(BasisSpec{2, n}.size(), 30 + n)};
    CHECK(std::abs(integrate(rule, sample(p, sys.layer())) - p.coeffs[0]) <= 1e-9 * p.coeffs.norm());
    // oracle: fit then read the constant coefficient
    CHECK(std::abs(fit(sys, sample(p, sys.layer())).coeffs[0] - p.coeffs[0]) <= 1e-9 * p.coeffs.norm());
  }
}

TEST_CASE("the two weight formulas agree") {
  const DesignSystem sys = build_design(perturb_layer(fibonacci_layer(7, 2.0), 0.9, 3), 7);
  const Eigen::VectorXd a = lsq_weights(sys).weights;
  const Eigen::VectorXd b = lsq_weights_by_kernel(sys);
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("integration of simple functions") {
  const DesignSystem sys = build_design(perturb_layer(fibonacci_layer(6, 2.0), 0.5, 4), 6);
  const QuadratureRule rule = lsq_weights(sys);
  CHECK(std::abs(integrate(rule, [](const UnitPoint&) { return 1.0; }) - 1.0) <= 1e-10);
  const SphericalHarmonics Y(3);
  for (std::size_t i = BasisSpec::block_offset(3); i < Y.size(); ++i) {
    CHECK(std::abs(integrate(rule, [&](const UnitPoint& x) { return Y.eval(x)[static_cast<Eigen::Index>(i)]; })) <= 1e-9);
  }
  CHECK_THROWS_AS(integrate(rule, SampleVector::Ones(2)), DimensionMismatch);

  const DesignSystem g = build_design(gauss_product_layer(16), 16);
  const auto ex = [](const UnitPoint& x) { return std::exp(x.z()); };
  CHECK(std::abs(integrate(lsq_weights(g), ex) - reference_integral(ex, 64)) <= 1e-12);
  CHECK(std::abs(reference_integral(ex, 64) - std::sinh(1.0)) <= 1e-14);
}

TEST_CASE("reference integral") {
  CHECK(reference_integral([](const UnitPoint&) { return 1.0; }, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(reference_integral([](const UnitPoint& x) { return x.z() * x.z(); }, 2) - 1.0 / 3) <= 1e-14);
  const SphericalHarmonics Y(2);
  for (std::size_t i = BasisSpec::block_offset(2); i < Y.size(); ++i) {
    const auto sq = [&](const UnitPoint& x) {
      const double v = Y.eval(x)[static_cast<Eigen::Index>(i)];
      return v * v;
    };
    CHECK(std::abs(reference_integral(sq, 4) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(reference_integral([](const UnitPoint&) { return 1.0; }, 0), InvalidArgument);
}

TEST_CASE("negative weights are counted") {
  const DesignSystem sys = build_design(perturb_layer(fibonacci_layer(10, 1.2), 3.0, 5), 10);
  const QuadratureRule rule = lsq_weights(sys);
  const RuleCertificate cert = certify_rule(rule, 10);
  std::size_t neg = 0;
  for (Eigen::Index k = 0; k < rule.weights.size(); ++k) neg += rule.weights[k] < 0.0 ? 1 : 0;
  CHECK(cert.negative_weights == neg);
  CHECK(cert.sum_abs_w == doctest::Approx(rule.weights.cwiseAbs().sum()));
}

TEST_CASE("quadrature error and the Hoelder bound") {
  const DesignSystem sys = build_design(perturb_layer(fibonacci_layer(5, 2.0), 0.4, 6), 5);
  const Approximant q{BasisSpec{2, 5}, oracle::random_coefficients(36, 7)};
  const QuadratureError e0 = quadrature_error(sys, [&](const UnitPoint& x) { return evaluate(q, x); }, 12);
  CHECK(e0.err_quad <= 1e-9);
  CHECK(e0.err_l2 <= 1e-9);
  CHECK(e0.holder_ok);

  const ZonalTestFunction f = ZonalTestFunction::power_law(UnitPoint::north_pole(), 3.0, 128);
  const DesignSystem g = build_design(gauss_product_layer(16), 16);
  const QuadratureError e = quadrature_error(g, f.source(), 2 * 128 + 2);
  CHECK(e.err_quad <= e.err_l2);
  CHECK(e.holder_ok);
  CHECK(e.err_l2 == doctest::Approx(lsq_error_exact(f, fit(g, sample(f.source(), g.layer())), 16)).epsilon(1e-6));
  CHECK_THROWS_AS(quadrature_error(g, f.source(), 20), InvalidArgument);
}

}  // TEST_SUITE
