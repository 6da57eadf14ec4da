#include "mzls/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "mzls/approximation.hpp"
#include "mzls/core_math.hpp"
#include "mzls/mz_analysis.hpp"
#include "mzls/pointsets.hpp"
#include "mzls/quadrature.hpp"
#include "mzls/random.hpp"

namespace mzls {

namespace {

UnitPoint random_point(const CounterRng& rng, std::uint64_t i) {
  return UnitPoint::normalized(rng.normal(i, 0), rng.normal(i, 1), rng.normal(i, 2));
}

Eigen::VectorXd random_coeffs(const CounterRng& rng, std::uint64_t stream, Eigen::Index m) {
  Eigen::VectorXd c(m);
  for (Eigen::Index i = 0; i < m; ++i) c[i] = rng.normal(static_cast<std::uint64_t>(i), stream);
  return c;
}

SelfTestResult check(const std::string& name, double value, double tol) {
  std::ostringstream os;
  os.precision(3);
  os << "max deviation " << value << " (tol " << tol << ")";
  return {name, std::isfinite(value) && value <= tol, os.str()};
}

}  // namespace

std::vector<SelfTestResult> run_selftest() {
  std::vector<SelfTestResult> out;
  const CounterRng rng(20240601);

  auto guarded = [&](const std::string& name, const std::function<SelfTestResult()>& body) {
    try {
      out.push_back(body());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };

  guarded("addition theorem (l <= 16)", [&] {
    const SphericalHarmonics harm(16);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      const UnitPoint x = random_point(rng, 2 * i);
      const UnitPoint y = random_point(rng, 2 * i + 1);
      const Eigen::VectorXd px = harm.eval(x), py = harm.eval(y);
      for (int ell = 0; ell <= 16; ++ell) {
        const auto off = static_cast<Eigen::Index>(BasisSpec::block_offset(ell));
        const double lhs = px.segment(off, 2 * ell + 1).dot(py.segment(off, 2 * ell + 1));
        worst = std::max(worst, std::abs(lhs - (2 * ell + 1) * gegenbauer(0.5, ell, x.dot(y))));
      }
    }
    return check("addition theorem (l <= 16)", worst, 1e-10);
  });

  guarded("E_n(x,x) = (n+1)^2", [&] {
    double worst = 0.0;
    for (int n = 0; n <= 40; ++n) worst = std::max(worst, std::abs(kernel_E(2, n, 1.0) / ((n + 1.0) * (n + 1.0)) - 1.0));
    return check("E_n(x,x) = (n+1)^2", worst, 1e-12);
  });

  guarded("gauss layer kappa = 1 and fit = hyperinterpolation", [&] {
    const Layer layer = gauss_product_layer(5);
    const DesignSystem sys = build_design(layer, 5);
    const SampleVector y = sample([](const UnitPoint& x) { return std::exp(x.z()) * x.x(); }, layer);
    const double diff = (fit(sys, y).coeffs - hyperinterpolate(layer, 5, y).coeffs).cwiseAbs().maxCoeff();
    const double dk = std::max(std::abs(sys.A() - 1.0), std::abs(sys.B() - 1.0));
    return check("gauss layer kappa = 1 and fit = hyperinterpolation", std::max(diff, dk), 1e-9);
  });

  guarded("projection exactness on fibonacci layer", [&] {
    const DesignSystem sys = build_design(fibonacci_layer(6, 2.0), 6);
    const Approximant q{sys.basis(), random_coeffs(rng, 7, static_cast<Eigen::Index>(sys.basis().size()))};
    const double err = (fit(sys, sample(q, sys.layer())).coeffs - q.coeffs).cwiseAbs().maxCoeff();
    return check("projection exactness on fibonacci layer", err, 1e-9);
  });

  guarded("quadrature sum and exactness", [&] {
    const DesignSystem sys = build_design(perturb_layer(fibonacci_layer(6, 2.0), 0.3, 5), 6);
    const QuadratureRule rule = lsq_weights(sys);
    const RuleCertificate cert = certify_rule(rule, 6);
    const double dev = std::max(std::abs(cert.sum_w - 1.0), cert.max_harmonic_residual);
    return check("quadrature sum and exactness", dev, 1e-9);
  });

  guarded("Lebesgue constant at n = 0", [&] {
    const DesignSystem sys = build_design(fibonacci_layer(0, 4.0), 0);
    return check("Lebesgue constant at n = 0", std::abs(lebesgue_constant(sys, 8) - 1.0), 1e-12);
  });

  guarded("MZ spectrum containment", [&] {
    const DesignSystem sys = build_design(perturb_layer(gauss_product_layer(6), 0.5, 3), 6);
    const MZVerification v = verify_mz(sys, 50, 11);
    return SelfTestResult{"MZ spectrum containment", v.contained && sys.kappa() >= 1.0,
                          "quotients in [" + std::to_string(v.min_quotient) + ", " + std::to_string(v.max_quotient) + "]"};
  });

  return out;
}

}  // namespace mzls
