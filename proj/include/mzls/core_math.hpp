#pragma once

// Special functions and the real orthonormal harmonic basis on S^2.
//
// Measure convention: the rotation-invariant probability measure on the
// sphere. Every kernel, Gram matrix and quadrature weight in the library uses
// it, so the constant basis element is identically 1 and E_n(x, x) equals the
// dimension of the polynomial space at d = 2.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mzls/unit_point.hpp"

namespace mzls {

// C_ell^lambda(t), normalized so that C_ell^lambda(1) = binom(ell + 2 lambda - 1, ell).
// Three-term recurrence, no Gamma evaluations.
double gegenbauer(double lambda, int ell, double t);

// dim H_ell^d: dimension of the spherical harmonics of degree ell on S^d.
std::int64_t dim_harmonic(int d, int ell);

// dim Pi_n^d: dimension of spherical polynomials of degree <= n on S^d.
// Throws OverflowError when the exact value does not fit in int64.
std::int64_t dim_poly(int d, int n);

// Zonal reproducing kernel of Pi_n^d as a function of u = x.y:
//   E_n(u) = sum_{ell <= n} (ell + lambda) / lambda * C_ell^lambda(u),  lambda = (d-1)/2.
double kernel_E(int d, int n, double u);

// Enumeration of the harmonic basis of Pi_n^d. Ordering is lexicographic in
// (ell, k); within a degree-ell block on S^2 the order is m = 0 followed by
// (cos m phi, sin m phi) pairs for m = 1..ell. Index 0 is the constant.
struct BasisSpec {
  int dimension = 2;
  int degree = 0;

  std::size_t size() const { return static_cast<std::size_t>(dim_poly(dimension, degree)); }

  // Offset of the first element of the degree-ell block (S^2 only).
  static std::size_t block_offset(int ell) { return static_cast<std::size_t>(ell) * ell; }
  // Index of Y_{ell,m} with m = 0 (cos_part ignored), cos (m > 0) or sin (m > 0).
  static std::size_t index(int ell, int m, bool cos_part = true) {
    if (m == 0) return block_offset(ell);
    return block_offset(ell) + 2 * static_cast<std::size_t>(m) - (cos_part ? 1 : 0);
  }

  bool operator==(const BasisSpec&) const = default;
};

// Precomputed normalized recurrence coefficients for the real harmonics of
// degree <= n on S^2. Evaluation is a pure function; one table can be shared
// between threads.
class SphericalHarmonics {
 public:
  explicit SphericalHarmonics(int degree);

  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return size_; }

  // Writes Phi(x) (size() values) into out.
  void eval(const UnitPoint& x, std::span<double> out) const;
  Eigen::VectorXd eval(const UnitPoint& x) const;

 private:
  int degree_;
  std::size_t size_;
  std::vector<double> sectoral_;  // Q_m^m / Q_{m-1}^{m-1}
  std::vector<double> a_;         // packed by (m, ell), ell >= m + 2
  std::vector<double> b_;
  std::vector<std::size_t> offset_;  // start of column m in a_/b_
};

// Phi(x) in BasisSpec order. Only dimension 2 is supported.
Eigen::VectorXd basis_eval(const BasisSpec& spec, const UnitPoint& x);

}  // namespace mzls
