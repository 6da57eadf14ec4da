#pragma once

// Dense kernels for the least squares pipeline.

#include <Eigen/Core>
#include <Eigen/Householder>
#include <Eigen/QR>

namespace mzls {

inline constexpr double kDefaultRankTol = 1e-10;

// Householder QR of a tall l x m matrix U (l >= m). Immutable once built.
class TallFactorization {
 public:
  TallFactorization() = default;

  Eigen::Index rows() const { return qr_.rows(); }
  Eigen::Index cols() const { return qr_.cols(); }
  double rank_tol() const noexcept { return rank_tol_; }

  // Upper triangular factor T with U = Q T, so that U^T U = T^T T.
  auto triangular() const {
    return qr_.matrixQR().topRows(qr_.cols()).template triangularView<Eigen::Upper>();
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd>& qr() const noexcept { return qr_; }

 private:
  friend TallFactorization factorize(const Eigen::MatrixXd& U, double rank_tol);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr_;
  double rank_tol_ = kDefaultRankTol;
};

// Throws RankDeficient (carrying the first offending column) when a diagonal
// entry of T falls below rank_tol times the largest one.
TallFactorization factorize(const Eigen::MatrixXd& U, double rank_tol = kDefaultRankTol);

// argmin_z |U z - b|_2.
Eigen::VectorXd lsq_solve(const TallFactorization& f, const Eigen::VectorXd& b);

// (U^T U)^{-1} v via two triangular solves; columnwise for matrices.
Eigen::VectorXd gram_apply_inverse(const TallFactorization& f, const Eigen::VectorXd& v);
Eigen::MatrixXd gram_apply_inverse(const TallFactorization& f, const Eigen::MatrixXd& v);

struct EigenExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int iterations = 0;  // Krylov steps taken (0 for the dense path)
};

inline constexpr Eigen::Index kDenseEigenLimit = 512;

// Extremal eigenvalues of a symmetric matrix. Sizes up to kDenseEigenLimit use
// a full symmetric reduction; larger ones use Lanczos with full
// reorthogonalization from two fixed start vectors, stopping when both Ritz
// residual bounds fall below tol * max|theta|. Throws NonConvergence after
// the step cap.
EigenExtremes sym_eig_extremes(const Eigen::MatrixXd& R, double tol = 1e-9);

}  // namespace mzls
