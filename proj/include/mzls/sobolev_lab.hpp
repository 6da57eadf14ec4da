#pragma once

// Zonal test functions with exactly known harmonic coefficients and the
// convergence / Lebesgue sweeps built on them. All L2 and Sobolev quantities
// are evaluated by Parseval, without cubature.

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mzls/approximation.hpp"
#include "mzls/mz_analysis.hpp"
#include "mzls/pointsets.hpp"
#include "mzls/quadrature.hpp"

namespace mzls {

// f(x) = sum_{ell <= L_max} a_ell (2 ell + 1) P_ell(x . pole), so that
// <f, Y_{ell,m}> = a_ell Y_{ell,m}(pole).
class ZonalTestFunction {
 public:
  // a_ell = (1 + ell)^{-t}.
  static ZonalTestFunction power_law(const UnitPoint& pole, double t, int l_max);
  static ZonalTestFunction from_coefficients(const UnitPoint& pole, std::vector<double> a);

  double operator()(const UnitPoint& x) const;
  // Truncation S_n f evaluated pointwise from the zonal series.
  double truncated(const UnitPoint& x, int n) const;
  // <f, Y> for the basis of Pi_n (n may exceed L_max; the surplus is zero).
  Eigen::VectorXd harmonic_coefficients(int n) const;

  double integral() const { return a_[0]; }
  int l_max() const { return static_cast<int>(a_.size()) - 1; }
  double decay() const { return t_; }
  const UnitPoint& pole() const { return pole_; }
  const std::vector<double>& law() const { return a_; }
  SampleSource source() const;

 private:
  UnitPoint pole_;
  std::vector<double> a_;
  double t_ = std::numeric_limits<double>::quiet_NaN();
};

// ( sum_ell (1 + ell(ell+1))^sigma a_ell^2 (2 ell + 1) )^{1/2}.
double sobolev_norm(const ZonalTestFunction& f, double sigma);

// ||f - S_n f||_2; requires n < L_max.
double projection_error_exact(const ZonalTestFunction& f, int n);

// ||f - p||_2 for p of degree n < L_max.
double lsq_error_exact(const ZonalTestFunction& f, const Approximant& p, int n);

// ||f - p||_2 by cubature on the reference product rule of the given degree.
double l2_error_cubature(const ZonalTestFunction& f, const Approximant& p, int reference_degree);

enum class FamilyKind { Gauss, Fibonacci };

// Generator of one layer per degree: base construction plus optional perturbation.
struct LayerFamily {
  FamilyKind kind = FamilyKind::Gauss;
  double oversampling = 2.0;  // fibonacci only
  double epsilon = 0.0;       // perturbation size; 0 disables
  std::uint64_t seed = 0;

  Layer make(int n) const;
  std::string tag() const;
};

struct SlopeFit {
  bool defined = false;
  double slope = std::numeric_limits<double>::quiet_NaN();
  double stderr_ = std::numeric_limits<double>::quiet_NaN();
  double band_lo = std::numeric_limits<double>::quiet_NaN();  // slope -/+ 2 standard errors
  double band_hi = std::numeric_limits<double>::quiet_NaN();
  int points_used = 0;
};

// OLS on (log x, log y), ignoring points with y below floor (or x <= 0).
SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                          double floor = 1e3 * std::numeric_limits<double>::epsilon());

struct ConvergencePoint {
  int n = 0;
  std::size_t l_n = 0;
  bool valid = false;  // false when the layer was MZ-deficient (a gap)
  std::string failure;
  double A = 0.0, B = 0.0, kappa = 0.0;
  double err_l2 = 0.0;    // ||f - L_n f||_2 exact
  double err_Sn = 0.0;    // ||f - S_n f||_2 exact
  double err_quad = 0.0;  // |integral f - I_n f|
  double lebesgue = std::numeric_limits<double>::quiet_NaN();
  double stability_lhs = 0.0;  // ||S_n f - L_n f||_2
  double stability_rhs = 0.0;  // A^{-1} B^{1/2} ||f - S_n f||_(n)
  bool holder_ok = false;
  bool stability_ok = false;
};

struct ConvergenceReport {
  std::string family;
  std::vector<int> degrees;
  std::vector<ConvergencePoint> points;
  SlopeFit slope_l2, slope_quad, slope_Sn;
};

struct SweepOptions {
  int lebesgue_resolution = -1;  // < 0: skip; 0: default resolution
  DesignOptions design;
};

// Receives each finished design system (for extra per-n checks).
using SweepObserver = std::function<void(const DesignSystem&, const Approximant&, ConvergencePoint&)>;

ConvergenceReport convergence_sweep(const LayerFamily& family, const ZonalTestFunction& f,
                                    const std::vector<int>& degrees, const SweepOptions& options = {},
                                    const SweepObserver& observer = {});

struct LebesguePoint {
  int n = 0;
  double kappa = 0.0;
  LebesgueEstimate estimate;
  double bound_ratio = 0.0;  // value / (kappa^{1/2} max(n, 1))
};

struct LebesgueReport {
  std::string family;
  std::vector<LebesguePoint> points;
  SlopeFit growth;         // over n >= 1
  bool exponent_ok = false;  // within [(d-1)/2 - 0.3, d/2 + 0.3]
  double max_bound_ratio = 0.0;
};

LebesgueReport lebesgue_sweep(const LayerFamily& family, const std::vector<int>& degrees, int grid_resolution = 0,
                              int levels = 3);

}  // namespace mzls
