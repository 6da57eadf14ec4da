#pragma once

// Weighted least squares projection L_n, the discrete reproducing kernel
// D_n(x, y) = Phi(x)^T R^{-1} Phi(y), hyperinterpolation, Christoffel
// functions and the Lebesgue constant estimator.

#include <vector>

#include <Eigen/Core>

#include "mzls/core_math.hpp"
#include "mzls/mz_analysis.hpp"

namespace mzls {

// Degree-n spherical polynomial in the orthonormal harmonic basis.
struct Approximant {
  BasisSpec basis;
  Eigen::VectorXd coeffs;
};

// Values f(x_k) aligned with the layer's point order.
using SampleVector = Eigen::VectorXd;

// argmin_p sum_k tau_k (f(x_k) - p(x_k))^2 over p in Pi_n.
Approximant fit(const DesignSystem& sys, const SampleVector& samples);

double evaluate(const Approximant& p, const UnitPoint& x);

// Samples of p at every point of a layer.
SampleVector sample(const Approximant& p, const Layer& layer);

double discrete_kernel(const DesignSystem& sys, const UnitPoint& x, const UnitPoint& y);
// Harmonic coefficients of D_n(x, .), i.e. R^{-1} Phi(x).
Eigen::VectorXd discrete_kernel_coefficients(const DesignSystem& sys, const UnitPoint& x);

// Coefficients of tau_k^{1/2} e_{n,k}, where e_{n,k} is the dual frame element:
// the frame operator acts as R on coefficient vectors, so this is
// tau_k^{1/2} R^{-1} (tau_k^{1/2} Phi(x_k)).
Eigen::VectorXd dual_frame_coefficients(const DesignSystem& sys, std::size_t k);

struct Christoffel {
  double continuous = 0.0;  // 1 / E_n(x, x)
  double discrete = 0.0;    // 1 / D_n(x, x)
};
Christoffel christoffel(const DesignSystem& sys, const UnitPoint& x);

// Discrete Fourier coefficients sum_k tau_k f(x_k) Y(x_k).
Approximant hyperinterpolate(const Layer& layer, int n, const SampleVector& samples);

// max over covering_grid(grid_resolution) of sum_k tau_k |D_n(x_k, x)|.
double lebesgue_constant(const DesignSystem& sys, int grid_resolution);

// Smallest resolution whose covering grid has at least 40 * d_n nodes.
int default_lebesgue_resolution(int n);

struct LebesgueEstimate {
  std::vector<int> resolutions;
  std::vector<double> values;  // one per resolution
  double value = 0.0;          // best (largest) lower estimate
  bool stable = false;         // last relative change <= stability_tol
};

// Evaluates at `levels` resolutions base, base + base/2, base + 2 (base/2), ...
// (base 0 selects default_lebesgue_resolution).
LebesgueEstimate lebesgue_refinement(const DesignSystem& sys, int base_resolution, int levels = 3,
                                     double stability_tol = 1e-2);

}  // namespace mzls
