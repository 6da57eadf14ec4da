#pragma once

// Least squares quadrature I_n(f) = integral of L_n f, its certification, and
// the exact product rule used as ground truth.

#include <functional>
#include <memory>

#include <Eigen/Core>

#include "mzls/approximation.hpp"
#include "mzls/mz_analysis.hpp"

namespace mzls {

using SampleSource = std::function<double(const UnitPoint&)>;

struct QuadratureRule {
  std::shared_ptr<const Layer> layer;
  int degree = 0;           // fitting degree n of the generating system
  Eigen::VectorXd weights;  // may be negative on ill-conditioned layers
  int exactness_degree = 0;
};

// w_k = tau_k (R^{-1} Phi(x_k))_1, evaluated as tau^{1/2} .* (U R^{-1} e_1).
// The exactness degree is certified by certify_rule (at least n).
QuadratureRule lsq_weights(const DesignSystem& sys);

// Same weights from the per-point kernel route: w_k = tau_k * integral of
// D_n(x_k, .), read off as the constant coefficient of R^{-1} Phi(x_k).
Eigen::VectorXd lsq_weights_by_kernel(const DesignSystem& sys);

// Compensated (Neumaier) weighted sum.
double integrate(const QuadratureRule& rule, const SampleVector& samples);
double integrate(const QuadratureRule& rule, const SampleSource& f);

SampleVector sample(const SampleSource& f, const Layer& layer);

// Integral under the probability measure using the product rule with
// exactness degree >= degree.
double reference_integral(const SampleSource& f, int degree);

struct RuleCertificate {
  double sum_w = 0.0;
  double sum_abs_w = 0.0;
  int exactness_degree = 0;         // largest degree up to max_degree integrating every harmonic correctly
  double max_harmonic_residual = 0.0;  // over the basis of Pi_n
  std::size_t negative_weights = 0;
};

// Applies the rule to every harmonic up to max_degree (default 2 * layer degree + 1).
RuleCertificate certify_rule(const QuadratureRule& rule, int n, int max_degree = -1, double tol = 1e-9);

struct QuadratureError {
  double err_quad = 0.0;  // |integral f - I_n(f)|
  double err_l2 = 0.0;    // ||f - L_n f||_2
  bool holder_ok = false; // err_quad <= err_l2 + 1e-9
};

// err_l2 by cubature on the reference product rule of degree reference_degree.
QuadratureError quadrature_error(const DesignSystem& sys, const SampleSource& f, int reference_degree);

}  // namespace mzls
