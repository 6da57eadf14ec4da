#include "mzls/sobolev_lab.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>

namespace mzls {

namespace {

// sum_{ell <= upto} a_ell (2 ell + 1) P_ell(u)
double zonal_series(const std::vector<double>& a, int upto, double u) {
  u = std::clamp(u, -1.0, 1.0);
  upto = std::min(upto, static_cast<int>(a.size()) - 1);
  double sum = a[0];
  double prev = 1.0;
  double cur = u;
  for (int ell = 1; ell <= upto; ++ell) {
    sum += a[ell] * (2.0 * ell + 1.0) * cur;
    const double next = ((2.0 * ell + 1.0) * u * cur - ell * prev) / (ell + 1.0);
    prev = cur;
    cur = next;
  }
  return sum;
}

double block_energy(const std::vector<double>& a, int ell) {
  return a[ell] * a[ell] * (2.0 * ell + 1.0);
}

}  // namespace

ZonalTestFunction ZonalTestFunction::power_law(const UnitPoint& pole, double t, int l_max) {
  if (l_max < 0) throw InvalidArgument("truncation degree must be non-negative");
  if (!std::isfinite(t)) throw InvalidArgument("decay exponent must be finite");
  ZonalTestFunction f;
  f.pole_ = pole;
  f.t_ = t;
  f.a_.resize(l_max + 1);
  for (int ell = 0; ell <= l_max; ++ell) f.a_[ell] = std::pow(1.0 + ell, -t);
  return f;
}

ZonalTestFunction ZonalTestFunction::from_coefficients(const UnitPoint& pole, std::vector<double> a) {
  if (a.empty()) throw InvalidArgument("zonal coefficient law must be non-empty");
  ZonalTestFunction f;
  f.pole_ = pole;
  f.a_ = std::move(a);
  return f;
}

double ZonalTestFunction::operator()(const UnitPoint& x) const { return zonal_series(a_, l_max(), x.dot(pole_)); }

double ZonalTestFunction::truncated(const UnitPoint& x, int n) const { return zonal_series(a_, n, x.dot(pole_)); }

Eigen::VectorXd ZonalTestFunction::harmonic_coefficients(int n) const {
  Eigen::VectorXd c = basis_eval(BasisSpec{2, n}, pole_);
  for (int ell = 0; ell <= n; ++ell) {
    const double a = ell <= l_max() ? a_[ell] : 0.0;
    c.segment(static_cast<Eigen::Index>(BasisSpec::block_offset(ell)), 2 * ell + 1) *= a;
  }
  return c;
}

SampleSource ZonalTestFunction::source() const {
  return [f = *this](const UnitPoint& x) { return f(x); };
}

double sobolev_norm(const ZonalTestFunction& f, double sigma) {
  if (!(sigma >= 0.0)) throw InvalidArgument("Sobolev index must be >= 0");
  double sum = 0.0;
  for (int ell = f.l_max(); ell >= 0; --ell) {
    sum += std::pow(1.0 + ell * (ell + 1.0), sigma) * block_energy(f.law(), ell);
  }
  return std::sqrt(sum);
}

double projection_error_exact(const ZonalTestFunction& f, int n) {
  if (n < 0) throw InvalidArgument("degree must be non-negative");
  if (n >= f.l_max()) {
    throw InvalidArgument("projection degree " + std::to_string(n) + " must be below the truncation degree " +
                          std::to_string(f.l_max()));
  }
  double sum = 0.0;
  for (int ell = f.l_max(); ell > n; --ell) sum += block_energy(f.law(), ell);
  return std::sqrt(sum);
}

double lsq_error_exact(const ZonalTestFunction& f, const Approximant& p, int n) {
  if (p.basis.degree != n) throw DimensionMismatch("approximant degree does not match n");
  const double tail = projection_error_exact(f, n);
  const double diff = (f.harmonic_coefficients(n) - p.coeffs).norm();
  return std::sqrt(tail * tail + diff * diff);
}

double l2_error_cubature(const ZonalTestFunction& f, const Approximant& p, int reference_degree) {
  const Layer ref = gauss_product_layer((reference_degree + 1) / 2);
  const SphericalHarmonics harm(p.basis.degree);
  Eigen::VectorXd phi(static_cast<Eigen::Index>(harm.size()));
  double sq = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    harm.eval(ref.points[k], std::span<double>(phi.data(), harm.size()));
    const double r = f(ref.points[k]) - phi.dot(p.coeffs);
    sq += ref.weights[k] * r * r;
  }
  return std::sqrt(sq);
}

Layer LayerFamily::make(int n) const {
  Layer layer = kind == FamilyKind::Gauss ? gauss_product_layer(n) : fibonacci_layer(n, oversampling);
  if (epsilon > 0.0) layer = perturb_layer(layer, epsilon, seed);
  return layer;
}

std::string LayerFamily::tag() const {
  std::ostringstream os;
  os.precision(17);
  os << (kind == FamilyKind::Gauss ? "gauss" : "fibonacci");
  if (kind == FamilyKind::Fibonacci) os << "(c=" << oversampling << ")";
  if (epsilon > 0.0) os << "+perturb(eps=" << epsilon << ",seed=" << seed << ")";
  return os.str();
}

SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && std::isfinite(y[i]) && y[i] >= floor) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  SlopeFit fit;
  fit.points_used = static_cast<int>(lx.size());
  if (lx.size() < 2) return fit;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) return fit;
  fit.defined = true;
  fit.slope = sxy / sxx;
  if (lx.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double r = ly[i] - my - fit.slope * (lx[i] - mx);
      rss += r * r;
    }
    fit.stderr_ = std::sqrt(rss / (n - 2.0) / sxx);
  } else {
    fit.stderr_ = 0.0;
  }
  fit.band_lo = fit.slope - 2.0 * fit.stderr_;
  fit.band_hi = fit.slope + 2.0 * fit.stderr_;
  return fit;
}

ConvergenceReport convergence_sweep(const LayerFamily& family, const ZonalTestFunction& f,
                                    const std::vector<int>& degrees, const SweepOptions& options,
                                    const SweepObserver& observer) {
  if (degrees.empty()) throw InvalidArgument("sweep needs at least one degree");
  const int n_max = *std::max_element(degrees.begin(), degrees.end());
  if (2 * n_max > f.l_max()) {
    throw InvalidArgument("sweep degrees must not exceed L_max / 2 (max degree " + std::to_string(n_max) +
                          ", L_max " + std::to_string(f.l_max()) + ")");
  }

  ConvergenceReport rep;
  rep.family = family.tag();
  rep.degrees = degrees;
  for (int n : degrees) {
    ConvergencePoint pt;
    pt.n = n;
    auto layer = std::make_shared<const Layer>(family.make(n));
    pt.l_n = layer->size();
    std::optional<DesignSystem> sys;
    try {
      sys.emplace(build_design(layer, n, options.design));
    } catch (const MZDeficient& e) {
      pt.failure = e.what();
      rep.points.push_back(pt);
      continue;
    }
    pt.valid = true;
    pt.A = sys->A();
    pt.B = sys->B();
    pt.kappa = sys->kappa();

    const SampleVector samples = sample(f.source(), *layer);
    const Approximant p = fit(*sys, samples);
    pt.err_Sn = projection_error_exact(f, n);
    pt.stability_lhs = (f.harmonic_coefficients(n) - p.coeffs).norm();
    pt.err_l2 = std::hypot(pt.err_Sn, pt.stability_lhs);

    const QuadratureRule rule = lsq_weights(*sys);
    pt.err_quad = std::abs(f.integral() - integrate(rule, samples));
    pt.holder_ok = pt.err_quad <= pt.err_l2 + 1e-9;

    // Discrete norm of f - S_n f from pointwise evaluation of both series.
    double disc = 0.0;
    for (std::size_t k = 0; k < layer->size(); ++k) {
      const double r = samples[static_cast<Eigen::Index>(k)] - f.truncated(layer->points[k], n);
      disc += layer->weights[k] * r * r;
    }
    pt.stability_rhs = std::sqrt(pt.B) / pt.A * std::sqrt(disc);
    pt.stability_ok = pt.stability_lhs <= pt.stability_rhs + 1e-8;

    if (options.lebesgue_resolution >= 0) {
      pt.lebesgue = lebesgue_constant(*sys, options.lebesgue_resolution > 0 ? options.lebesgue_resolution
                                                                            : default_lebesgue_resolution(n));
    }
    if (observer) observer(*sys, p, pt);
    rep.points.push_back(pt);
  }

  std::vector<double> ns, l2, quad, sn;
  for (const auto& pt : rep.points) {
    if (!pt.valid) continue;
    ns.push_back(pt.n);
    l2.push_back(pt.err_l2);
    quad.push_back(pt.err_quad);
    sn.push_back(pt.err_Sn);
  }
  rep.slope_l2 = fit_loglog_slope(ns, l2);
  rep.slope_quad = fit_loglog_slope(ns, quad);
  rep.slope_Sn = fit_loglog_slope(ns, sn);
  return rep;
}

LebesgueReport lebesgue_sweep(const LayerFamily& family, const std::vector<int>& degrees, int grid_resolution,
                              int levels) {
  LebesgueReport rep;
  rep.family = family.tag();
  std::vector<double> ns, vals;
  for (int n : degrees) {
    const DesignSystem sys = build_design(family.make(n), n);
    LebesguePoint pt;
    pt.n = n;
    pt.kappa = sys.kappa();
    pt.estimate = lebesgue_refinement(sys, grid_resolution, levels);
    pt.bound_ratio = pt.estimate.value / (std::sqrt(pt.kappa) * std::max(n, 1));
    rep.max_bound_ratio = std::max(rep.max_bound_ratio, pt.bound_ratio);
    if (n >= 1) {
      ns.push_back(n);
      vals.push_back(pt.estimate.value);
    }
    rep.points.push_back(pt);
  }
  rep.growth = fit_loglog_slope(ns, vals);
  constexpr double d = 2.0;
  rep.exponent_ok = rep.growth.defined && rep.growth.slope >= (d - 1.0) / 2.0 - 0.3 &&
                    rep.growth.slope <= d / 2.0 + 0.3;
  return rep;
}

}  // namespace mzls
