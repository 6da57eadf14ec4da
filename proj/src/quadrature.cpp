#include "mzls/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "mzls/pointsets.hpp"

namespace mzls {

namespace {

double neumaier_sum(const Eigen::VectorXd& w, const Eigen::VectorXd& v) {
  double sum = 0.0;
  double comp = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double term = w[i] * v[i];
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace

QuadratureRule lsq_weights(const DesignSystem& sys) {
  const auto m = static_cast<Eigen::Index>(sys.basis().size());
  const Eigen::VectorXd g = gram_apply_inverse(sys.factorization(), Eigen::VectorXd(Eigen::VectorXd::Unit(m, 0)));
  QuadratureRule rule;
  rule.layer = sys.layer_ptr();
  rule.degree = sys.degree();
  rule.weights = sys.sqrt_weights().cwiseProduct(sys.design() * g);
  rule.exactness_degree = certify_rule(rule, sys.degree()).exactness_degree;
  return rule;
}

Eigen::VectorXd lsq_weights_by_kernel(const DesignSystem& sys) {
  const Layer& layer = sys.layer();
  Eigen::VectorXd w(static_cast<Eigen::Index>(layer.size()));
  for (std::size_t k = 0; k < layer.size(); ++k) {
    w[static_cast<Eigen::Index>(k)] = layer.weights[k] * discrete_kernel_coefficients(sys, layer.points[k])[0];
  }
  return w;
}

double integrate(const QuadratureRule& rule, const SampleVector& samples) {
  if (samples.size() != rule.weights.size()) {
    throw DimensionMismatch("sample vector has " + std::to_string(samples.size()) + " entries, rule has " +
                            std::to_string(rule.weights.size()) + " nodes");
  }
  return neumaier_sum(rule.weights, samples);
}

SampleVector sample(const SampleSource& f, const Layer& layer) {
  SampleVector v(static_cast<Eigen::Index>(layer.size()));
  for (std::size_t k = 0; k < layer.size(); ++k) v[static_cast<Eigen::Index>(k)] = f(layer.points[k]);
  return v;
}

double integrate(const QuadratureRule& rule, const SampleSource& f) {
  return integrate(rule, sample(f, *rule.layer));
}

double reference_integral(const SampleSource& f, int degree) {
  if (degree < 1) throw InvalidArgument("reference degree must be >= 1");
  const Layer ref = gauss_product_layer((degree + 1) / 2);
  const Eigen::Map<const Eigen::VectorXd> tau(ref.weights.data(), static_cast<Eigen::Index>(ref.size()));
  return neumaier_sum(tau, sample(f, ref));
}

RuleCertificate certify_rule(const QuadratureRule& rule, int n, int max_degree, double tol) {
  const Layer& layer = *rule.layer;
  if (max_degree < 0) max_degree = 2 * layer.degree + 1;
  max_degree = std::max(max_degree, n);

  RuleCertificate cert;
  for (Eigen::Index k = 0; k < rule.weights.size(); ++k) {
    cert.sum_w += rule.weights[k];
    cert.sum_abs_w += std::abs(rule.weights[k]);
    if (rule.weights[k] < 0.0) ++cert.negative_weights;
  }

  // Moments of every harmonic up to max_degree: M = Phi(X)^T w.
  const SphericalHarmonics harm(max_degree);
  Eigen::VectorXd phi(static_cast<Eigen::Index>(harm.size()));
  Eigen::VectorXd moments = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(harm.size()));
  for (std::size_t k = 0; k < layer.size(); ++k) {
    harm.eval(layer.points[k], std::span<double>(phi.data(), harm.size()));
    moments += rule.weights[static_cast<Eigen::Index>(k)] * phi;
  }
  moments[0] -= 1.0;

  cert.exactness_degree = -1;
  for (int ell = 0; ell <= max_degree; ++ell) {
    const auto off = static_cast<Eigen::Index>(BasisSpec::block_offset(ell));
    const double block = moments.segment(off, 2 * ell + 1).cwiseAbs().maxCoeff();
    if (ell <= n) cert.max_harmonic_residual = std::max(cert.max_harmonic_residual, block);
    if (block > tol) break;
    cert.exactness_degree = ell;
  }
  return cert;
}

QuadratureError quadrature_error(const DesignSystem& sys, const SampleSource& f, int reference_degree) {
  if (reference_degree < 2 * sys.degree()) {
    throw InvalidArgument("reference degree must be at least 2n");
  }
  const QuadratureRule rule = lsq_weights(sys);
  const SampleVector samples = sample(f, sys.layer());
  const Approximant p = fit(sys, samples);

  const Layer ref = gauss_product_layer((reference_degree + 1) / 2);
  const SphericalHarmonics harm(sys.degree());
  Eigen::VectorXd phi(static_cast<Eigen::Index>(harm.size()));
  double integral = 0.0;
  double sq = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    const double fx = f(ref.points[k]);
    harm.eval(ref.points[k], std::span<double>(phi.data(), harm.size()));
    const double r = fx - phi.dot(p.coeffs);
    integral += ref.weights[k] * fx;
    sq += ref.weights[k] * r * r;
  }
  QuadratureError e;
  e.err_quad = std::abs(integral - integrate(rule, samples));
  e.err_l2 = std::sqrt(sq);
  e.holder_ok = e.err_quad <= e.err_l2 + 1e-9;
  return e;
}

}  // namespace mzls
