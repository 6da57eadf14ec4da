#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>
#include <Eigen/QR>

#include "mzls/core_math.hpp"
#include "mzls/pointsets.hpp"
#include "mzls/random.hpp"
#include "mzls/unit_point.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Float50 = boost::multiprecision::cpp_dec_float_50;

inline BigInt factorial(int k) {
  BigInt r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// Explicit sum C_l^lam(t) = sum_k (-1)^k (lam)_{l-k} / (k! (l-2k)!) (2t)^{l-2k}, lam rational.
inline Rational gegenbauer_exact(const Rational& lam, int ell, const Rational& t) {
  Rational sum = 0;
  for (int k = 0; 2 * k <= ell; ++k) {
    Rational poch = 1;
    for (int i = 0; i < ell - k; ++i) poch *= lam + i;
    Rational term = poch / Rational(factorial(k) * factorial(ell - 2 * k));
    Rational p = 1;
    for (int i = 0; i < ell - 2 * k; ++i) p *= 2 * t;
    sum += (k % 2 ? -term : term) * p;
  }
  return sum;
}

// (2l+d-1)(l+d-2)! / ((d-1)! l!)
inline BigInt dim_harmonic_exact(int d, int ell) {
  if (ell == 0) return 1;
  return BigInt(2 * ell + d - 1) * factorial(ell + d - 2) / (factorial(d - 1) * factorial(ell));
}

// (2n+d)(n+d-1)! / (d! n!)
inline BigInt dim_poly_exact(int d, int n) {
  return BigInt(2 * n + d) * factorial(n + d - 1) / (factorial(d) * factorial(n));
}

// Least squares through explicitly assembled normal equations and a
// hand-written Cholesky factorization.
inline Eigen::VectorXd normal_equations(const Eigen::MatrixXd& U, const Eigen::VectorXd& b) {
  const Eigen::Index m = U.cols();
  std::vector<double> G(static_cast<std::size_t>(m * m), 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < U.rows(); ++k) s += U(k, i) * U(k, j);
      G[i * m + j] = s;
    }
    double s = 0.0;
    for (Eigen::Index k = 0; k < U.rows(); ++k) s += U(k, i) * b[k];
    rhs[i] = s;
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    double d = G[j * m + j];
    for (Eigen::Index k = 0; k < j; ++k) d -= G[j * m + k] * G[j * m + k];
    G[j * m + j] = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < m; ++i) {
      double s = G[i * m + j];
      for (Eigen::Index k = 0; k < j; ++k) s -= G[i * m + k] * G[j * m + k];
      G[i * m + j] = s / G[j * m + j];
    }
  }
  std::vector<double> y(rhs);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = 0; k < i; ++k) y[i] -= G[i * m + k] * y[k];
    y[i] /= G[i * m + i];
  }
  Eigen::VectorXd x(m);
  for (Eigen::Index i = m - 1; i >= 0; --i) {
    double s = y[i];
    for (Eigen::Index k = i + 1; k < m; ++k) s -= G[k * m + i] * x[k];
    x[i] = s / G[i * m + i];
  }
  return x;
}

// Random matrix with singular values spread geometrically over [1/cond, 1].
inline Eigen::MatrixXd conditioned_matrix(int rows, int cols, double cond, std::uint64_t seed) {
  mzls::CounterRng rng(seed);
  auto gaussian = [&](int r, int c, std::uint64_t stream) {
    Eigen::MatrixXd M(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) M(i, j) = rng.normal(static_cast<std::uint64_t>(i * c + j), stream);
    return M;
  };
  const Eigen::MatrixXd Q1 = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian(rows, cols, 0)).householderQ() *
                             Eigen::MatrixXd::Identity(rows, cols);
  const Eigen::MatrixXd Q2 = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian(cols, cols, 1)).householderQ();
  Eigen::VectorXd s(cols);
  for (int i = 0; i < cols; ++i) s[i] = std::pow(cond, -static_cast<double>(i) / std::max(1, cols - 1));
  return Q1 * s.asDiagonal() * Q2.transpose();
}

// Naive term-by-term sum.
inline double naive_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Eigen::VectorXd random_coefficients(std::size_t size, std::uint64_t seed, std::uint64_t stream = 0) {
  mzls::CounterRng rng(seed);
  Eigen::VectorXd c(static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i) c[static_cast<Eigen::Index>(i)] = rng.normal(i, stream);
  return c;
}

inline mzls::UnitPoint random_point(std::uint64_t seed, std::uint64_t index) {
  mzls::CounterRng rng(seed);
  return mzls::UnitPoint::normalized(rng.normal(index, 0), rng.normal(index, 1), rng.normal(index, 2));
}

// Sum of tau_k g(x_k) over a product rule exact to degree >= 2*half_degree+1.
template <class F>
double cubature(F&& g, int half_degree) {
  const mzls::Layer rule = mzls::gauss_product_layer(half_degree);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) s += rule.weights[k] * g(rule.points[k]);
  return s;
}

// sum_{l <= L} (1 + l(l+1))^sigma (1+l)^{-2t} (2l+1) in 50-digit arithmetic.
inline double sobolev_norm_hp(double t, int l_max, double sigma) {
  Float50 sum = 0;
  for (int l = 0; l <= l_max; ++l) {
    const Float50 w = boost::multiprecision::pow(Float50(1 + l * (l + 1)), Float50(sigma));
    const Float50 a = boost::multiprecision::pow(Float50(1 + l), Float50(-2 * t));
    sum += w * a * (2 * l + 1);
  }
  return static_cast<double>(boost::multiprecision::sqrt(sum));
}

// Brute-force (1+l)^{-2t}(2l+1) tail, summed from the top.
inline double tail_sum(double t, int n, int l_max) {
  long double s = 0.0L;
  for (int l = l_max; l > n; --l) s += std::pow(static_cast<long double>(1 + l), -2.0L * t) * (2 * l + 1);
  return static_cast<double>(std::sqrt(s));
}

}  // namespace oracle
