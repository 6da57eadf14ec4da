#pragma once

// Weighted design matrix U (row k = tau_k^{1/2} Phi(x_k)), Gram matrix
// R = U^T U, and the per-layer Marcinkiewicz-Zygmund constants: A and B are
// the extremal eigenvalues of R, i.e. the tightest constants for which
//   A |p|_2^2 <= sum_k tau_k p(x_k)^2 <= B |p|_2^2   for all p in Pi_n.

#include <cstdint>
#include <memory>

#include <Eigen/Core>

#include "mzls/core_math.hpp"
#include "mzls/linalg.hpp"
#include "mzls/pointsets.hpp"

namespace mzls {

struct DesignOptions {
  double rank_tol = kDefaultRankTol;
  double eig_tol = 1e-9;
};

class DesignSystem {
 public:
  const BasisSpec& basis() const noexcept { return basis_; }
  int degree() const noexcept { return basis_.degree; }
  const Layer& layer() const noexcept { return *layer_; }
  const std::shared_ptr<const Layer>& layer_ptr() const noexcept { return layer_; }
  const SphericalHarmonics& harmonics() const noexcept { return *harmonics_; }

  const Eigen::MatrixXd& design() const noexcept { return U_; }
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  const Eigen::VectorXd& sqrt_weights() const noexcept { return sqrt_tau_; }
  const TallFactorization& factorization() const noexcept { return factorization_; }
  const DesignOptions& options() const noexcept { return options_; }

  double A() const noexcept { return A_; }
  double B() const noexcept { return B_; }
  double kappa() const noexcept { return B_ / A_; }

 private:
  friend DesignSystem build_design(std::shared_ptr<const Layer> layer, int n, const DesignOptions& options);
  BasisSpec basis_;
  std::shared_ptr<const Layer> layer_;
  std::shared_ptr<const SphericalHarmonics> harmonics_;
  Eigen::MatrixXd U_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd sqrt_tau_;
  TallFactorization factorization_;
  DesignOptions options_;
  double A_ = 0.0;
  double B_ = 0.0;
};

// Requires n <= layer.degree and l_n >= d_n; throws MZDeficient when the
// design is rank deficient or A <= rank_tol * B.
DesignSystem build_design(std::shared_ptr<const Layer> layer, int n, const DesignOptions& options = {});
DesignSystem build_design(const Layer& layer, int n, const DesignOptions& options = {});

struct MZVerification {
  int trials = 0;
  double min_quotient = 0.0;
  double max_quotient = 0.0;
  bool contained = true;  // every quotient within [A - tol, B + tol]
};

// Discrete Rayleigh quotients |U c|^2 / |c|^2 for the first basis vector and
// `trials` random unit vectors.
MZVerification verify_mz(const DesignSystem& sys, int trials, std::uint64_t seed, double tol = 1e-9);

struct WeightSumCheck {
  double sum_tau = 0.0;
  bool lower_ok = false;  // A <= sum tau
  bool upper_ok = false;  // sum tau <= B
};

// p = 1 in the MZ inequality gives A <= sum_k tau_k <= B.
WeightSumCheck weight_sum_bounds(const DesignSystem& sys, double tol = 1e-9);

// Copy of the layer with every weight multiplied by factor.
Layer scale_weights(const Layer& layer, double factor);

}  // namespace mzls
