#include "mzls/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "mzls/error.hpp"

namespace mzls {

TallFactorization factorize(const Eigen::MatrixXd& U, double rank_tol) {
  if (U.rows() < U.cols()) {
    throw RankDeficient("factorize needs rows >= cols (" + std::to_string(U.rows()) + " < " +
                            std::to_string(U.cols()) + ")",
                        U.rows());
  }
  if (U.cols() == 0) throw InvalidArgument("factorize needs at least one column");
  TallFactorization f;
  f.rank_tol_ = rank_tol;
  f.qr_.compute(U);

  const auto diag = f.qr_.matrixQR().diagonal().cwiseAbs();
  const double largest = diag.maxCoeff();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (!(diag[i] > rank_tol * largest)) {
      throw RankDeficient("matrix is rank deficient at column " + std::to_string(i), i);
    }
  }
  return f;
}

Eigen::VectorXd lsq_solve(const TallFactorization& f, const Eigen::VectorXd& b) {
  if (b.size() != f.rows()) throw DimensionMismatch("right-hand side length does not match matrix rows");
  Eigen::VectorXd qtb = b;
  qtb.applyOnTheLeft(f.qr().householderQ().transpose());
  return f.triangular().solve(qtb.head(f.cols()));
}

Eigen::VectorXd gram_apply_inverse(const TallFactorization& f, const Eigen::VectorXd& v) {
  if (v.size() != f.cols()) throw DimensionMismatch("vector length does not match Gram size");
  const auto T = f.triangular();
  const Eigen::VectorXd y = T.transpose().solve(v);
  return T.solve(y);
}

Eigen::MatrixXd gram_apply_inverse(const TallFactorization& f, const Eigen::MatrixXd& v) {
  if (v.rows() != f.cols()) throw DimensionMismatch("matrix rows do not match Gram size");
  const auto T = f.triangular();
  const Eigen::MatrixXd y = T.transpose().solve(v);
  return T.solve(y);
}

namespace {

constexpr int kMaxLanczosSteps = 1500;
constexpr int kCheckEvery = 8;

struct LanczosResult {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
  bool converged = false;
};

LanczosResult lanczos(const Eigen::MatrixXd& R, Eigen::VectorXd start, double tol) {
  const Eigen::Index m = R.rows();
  const int cap = static_cast<int>(std::min<Eigen::Index>(m, kMaxLanczosSteps));
  Eigen::MatrixXd V(m, cap);
  std::vector<double> alpha;
  std::vector<double> beta;
  alpha.reserve(cap);
  beta.reserve(cap);
  const double scale = R.cwiseAbs().rowwise().sum().maxCoeff();  // ||R||_inf >= ||R||_2

  V.col(0) = start / start.norm();
  LanczosResult res;
  for (int j = 0; j < cap; ++j) {
    Eigen::VectorXd w = R * V.col(j);
    const double a = V.col(j).dot(w);
    alpha.push_back(a);
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      const auto basis = V.leftCols(j + 1);
      w -= basis * (basis.transpose() * w);
    }
    const double b = w.norm();
    const bool breakdown = b <= 1e-13 * scale;
    const bool last = (j + 1 == cap);

    if (breakdown || last || (j + 1) % kCheckEvery == 0) {
      const int k = j + 1;
      Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
      Eigen::VectorXd e = (k > 1) ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), k - 1))
                                  : Eigen::VectorXd();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
      const auto& theta = tri.eigenvalues();
      const auto& S = tri.eigenvectors();
      res.lo = theta[0];
      res.hi = theta[k - 1];
      res.steps = k;
      const double bound = tol * std::max(std::abs(res.lo), std::abs(res.hi));
      const double r_lo = b * std::abs(S(k - 1, 0));
      const double r_hi = b * std::abs(S(k - 1, k - 1));
      if (breakdown || (r_lo <= bound && r_hi <= bound) || k == m) {
        res.converged = true;
        return res;
      }
    }
    if (last) break;
    beta.push_back(b);
    V.col(j + 1) = w / b;
  }
  return res;
}

}  // namespace

EigenExtremes sym_eig_extremes(const Eigen::MatrixXd& R, double tol) {
  if (R.rows() != R.cols() || R.rows() == 0) throw DimensionMismatch("eigenvalue input must be square and non-empty");
  double asym = 0.0;
  for (Eigen::Index j = 0; j < R.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < R.rows(); ++i) asym = std::max(asym, std::abs(R(i, j) - R(j, i)));
  }
  if (asym > 1e-12 * std::max(1.0, R.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("eigenvalue input is not symmetric");
  }
  const Eigen::Index m = R.rows();
  if (m <= kDenseEigenLimit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NonConvergence("dense symmetric eigensolver failed");
    return {es.eigenvalues()[0], es.eigenvalues()[m - 1], 0};
  }

  // Start vectors: all ones, then a fixed pseudo-random fallback.
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  Eigen::VectorXd fallback(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    fallback[i] = std::sin(12.9898 * static_cast<double>(i + 1)) + 0.5 * std::cos(78.233 * static_cast<double>(i + 1));
  }
  const LanczosResult a = lanczos(R, ones, tol);
  const LanczosResult b = lanczos(R, fallback, tol);
  if (!a.converged || !b.converged) {
    throw NonConvergence("Lanczos did not reach tolerance within " + std::to_string(kMaxLanczosSteps) + " steps");
  }
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi), a.steps + b.steps};
}

}  // namespace mzls
