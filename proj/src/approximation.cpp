#include "mzls/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "mzls/pointsets.hpp"

namespace mzls {

namespace {

void require_samples(const DesignSystem& sys, const SampleVector& samples) {
  if (samples.size() != static_cast<Eigen::Index>(sys.layer().size())) {
    throw DimensionMismatch("sample vector has " + std::to_string(samples.size()) + " entries, layer has " +
                            std::to_string(sys.layer().size()) + " points");
  }
}

}  // namespace

Approximant fit(const DesignSystem& sys, const SampleVector& samples) {
  require_samples(sys, samples);
  const Eigen::VectorXd y = sys.sqrt_weights().cwiseProduct(samples);
  return {sys.basis(), lsq_solve(sys.factorization(), y)};
}

double evaluate(const Approximant& p, const UnitPoint& x) {
  if (p.coeffs.size() != static_cast<Eigen::Index>(p.basis.size())) {
    throw DimensionMismatch("approximant coefficient count does not match its basis");
  }
  return basis_eval(p.basis, x).dot(p.coeffs);
}

SampleVector sample(const Approximant& p, const Layer& layer) {
  const SphericalHarmonics harm(p.basis.degree);
  Eigen::VectorXd phi(static_cast<Eigen::Index>(harm.size()));
  SampleVector out(static_cast<Eigen::Index>(layer.size()));
  for (std::size_t k = 0; k < layer.size(); ++k) {
    harm.eval(layer.points[k], std::span<double>(phi.data(), harm.size()));
    out[static_cast<Eigen::Index>(k)] = phi.dot(p.coeffs);
  }
  return out;
}

Eigen::VectorXd discrete_kernel_coefficients(const DesignSystem& sys, const UnitPoint& x) {
  return gram_apply_inverse(sys.factorization(), sys.harmonics().eval(x));
}

double discrete_kernel(const DesignSystem& sys, const UnitPoint& x, const UnitPoint& y) {
  return sys.harmonics().eval(y).dot(discrete_kernel_coefficients(sys, x));
}

Eigen::VectorXd dual_frame_coefficients(const DesignSystem& sys, std::size_t k) {
  if (k >= sys.layer().size()) throw InvalidArgument("dual frame index out of range");
  const auto row = static_cast<Eigen::Index>(k);
  const Eigen::VectorXd frame_elem = sys.design().row(row).transpose();  // tau_k^{1/2} Phi(x_k)
  return sys.sqrt_weights()[row] * gram_apply_inverse(sys.factorization(), frame_elem);
}

Christoffel christoffel(const DesignSystem& sys, const UnitPoint& x) {
  return {1.0 / kernel_E(2, sys.degree(), 1.0), 1.0 / discrete_kernel(sys, x, x)};
}

Approximant hyperinterpolate(const Layer& layer, int n, const SampleVector& samples) {
  layer.validate();
  if (samples.size() != static_cast<Eigen::Index>(layer.size())) {
    throw DimensionMismatch("sample vector length does not match layer size");
  }
  const SphericalHarmonics harm(n);
  Eigen::VectorXd phi(static_cast<Eigen::Index>(harm.size()));
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(harm.size()));
  for (std::size_t k = 0; k < layer.size(); ++k) {
    harm.eval(layer.points[k], std::span<double>(phi.data(), harm.size()));
    coeffs += (layer.weights[k] * samples[static_cast<Eigen::Index>(k)]) * phi;
  }
  return {BasisSpec{2, n}, coeffs};
}

double lebesgue_constant(const DesignSystem& sys, int grid_resolution) {
  const std::vector<UnitPoint> grid = covering_grid(grid_resolution);
  const auto m = static_cast<Eigen::Index>(sys.basis().size());
  constexpr Eigen::Index kChunk = 256;
  // U R^{-1} Phi(x) has entries tau_k^{1/2} D_n(x_k, x), so
  // sum_k tau_k |D_n(x_k, x)| = sum_k tau_k^{1/2} |(U R^{-1} Phi(x))_k|.
  double best = 0.0;
  Eigen::MatrixXd phi(m, kChunk);
  for (std::size_t start = 0; start < grid.size(); start += kChunk) {
    const auto cols = static_cast<Eigen::Index>(std::min<std::size_t>(kChunk, grid.size() - start));
    for (Eigen::Index j = 0; j < cols; ++j) {
      sys.harmonics().eval(grid[start + j], std::span<double>(phi.col(j).data(), static_cast<std::size_t>(m)));
    }
    const Eigen::MatrixXd g = gram_apply_inverse(sys.factorization(), Eigen::MatrixXd(phi.leftCols(cols)));
    const Eigen::MatrixXd v = sys.design() * g;
    const Eigen::RowVectorXd sums = sys.sqrt_weights().transpose() * v.cwiseAbs();
    best = std::max(best, sums.maxCoeff());
  }
  return best;
}

int default_lebesgue_resolution(int n) {
  const double target = 40.0 * static_cast<double>(dim_poly(2, n));
  int r = 1;
  while (static_cast<double>(covering_grid_size(r)) < target) ++r;
  return r;
}

LebesgueEstimate lebesgue_refinement(const DesignSystem& sys, int base_resolution, int levels, double stability_tol) {
  if (levels < 1) throw InvalidArgument("at least one refinement level is required");
  const int base = base_resolution > 0 ? base_resolution : default_lebesgue_resolution(sys.degree());
  const int step = std::max(1, base / 2);
  LebesgueEstimate est;
  for (int i = 0; i < levels; ++i) {
    const int r = base + i * step;
    est.resolutions.push_back(r);
    est.values.push_back(lebesgue_constant(sys, r));
  }
  est.value = *std::max_element(est.values.begin(), est.values.end());
  if (levels >= 2) {
    const double a = est.values[levels - 2];
    const double b = est.values[levels - 1];
    est.stable = std::abs(b - a) <= stability_tol * std::max(a, b);
  } else {
    est.stable = false;
  }
  return est;
}

}  // namespace mzls
