#include "mzls/mz_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "mzls/random.hpp"

namespace mzls {

DesignSystem build_design(std::shared_ptr<const Layer> layer, int n, const DesignOptions& options) {
  if (!layer) throw InvalidArgument("build_design: null layer");
  layer->validate();
  if (n < 0) throw InvalidArgument("degree must be non-negative");
  if (n > layer->degree) {
    throw DimensionMismatch("fitting degree " + std::to_string(n) + " exceeds layer degree " +
                            std::to_string(layer->degree));
  }
  const BasisSpec basis{2, n};
  const auto m = static_cast<Eigen::Index>(basis.size());
  const auto l = static_cast<Eigen::Index>(layer->size());
  if (l < m) {
    throw MZDeficient("layer has " + std::to_string(l) + " points, fewer than dim Pi_n = " + std::to_string(m));
  }

  DesignSystem sys;
  sys.basis_ = basis;
  sys.layer_ = layer;
  sys.options_ = options;
  sys.harmonics_ = std::make_shared<const SphericalHarmonics>(n);
  sys.sqrt_tau_.resize(l);

  sys.U_.resize(l, m);
  Eigen::VectorXd row(m);
  for (Eigen::Index k = 0; k < l; ++k) {
    const double st = std::sqrt(layer->weights[k]);
    sys.sqrt_tau_[k] = st;
    sys.harmonics_->eval(layer->points[k], std::span<double>(row.data(), static_cast<std::size_t>(m)));
    sys.U_.row(k) = st * row.transpose();
  }

  try {
    sys.factorization_ = factorize(sys.U_, options.rank_tol);
  } catch (const RankDeficient& e) {
    throw MZDeficient(std::string("design matrix is rank deficient: ") + e.what());
  }

  sys.gram_ = Eigen::MatrixXd::Zero(m, m);
  sys.gram_.selfadjointView<Eigen::Lower>().rankUpdate(sys.U_.transpose());
  sys.gram_.triangularView<Eigen::StrictlyUpper>() = sys.gram_.transpose();

  const EigenExtremes ext = sym_eig_extremes(sys.gram_, options.eig_tol);
  sys.A_ = ext.lambda_min;
  sys.B_ = ext.lambda_max;
  if (!(sys.A_ > options.rank_tol * sys.B_)) {
    throw MZDeficient("lower MZ constant A = " + std::to_string(sys.A_) + " is numerically zero");
  }
  return sys;
}

DesignSystem build_design(const Layer& layer, int n, const DesignOptions& options) {
  return build_design(std::make_shared<const Layer>(layer), n, options);
}

MZVerification verify_mz(const DesignSystem& sys, int trials, std::uint64_t seed, double tol) {
  const Eigen::MatrixXd& U = sys.design();
  const Eigen::Index m = U.cols();
  const double slack = tol * std::max(1.0, sys.B());
  MZVerification rep;
  rep.trials = trials;

  auto record = [&](const Eigen::VectorXd& c) {
    const double q = (U * c).squaredNorm() / c.squaredNorm();
    if (rep.min_quotient == 0.0 && rep.max_quotient == 0.0) {
      rep.min_quotient = rep.max_quotient = q;
    } else {
      rep.min_quotient = std::min(rep.min_quotient, q);
      rep.max_quotient = std::max(rep.max_quotient, q);
    }
    if (q < sys.A() - slack || q > sys.B() + slack) rep.contained = false;
  };

  record(Eigen::VectorXd::Unit(m, 0));
  const CounterRng rng(seed);
  Eigen::VectorXd c(m);
  for (int t = 0; t < trials; ++t) {
    for (Eigen::Index i = 0; i < m; ++i) c[i] = rng.normal(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(t));
    c.normalize();
    record(c);
  }
  return rep;
}

WeightSumCheck weight_sum_bounds(const DesignSystem& sys, double tol) {
  WeightSumCheck w;
  for (double tau : sys.layer().weights) w.sum_tau += tau;
  const double slack = tol * std::max(1.0, sys.B());
  w.lower_ok = sys.A() <= w.sum_tau + slack;
  w.upper_ok = w.sum_tau <= sys.B() + slack;
  return w;
}

Layer scale_weights(const Layer& layer, double factor) {
  if (!(factor > 0.0)) throw InvalidArgument("weight scale factor must be positive");
  Layer out = layer;
  for (double& w : out.weights) w *= factor;
  return out;
}

}  // namespace mzls
