#include "mzls/pointsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mzls/random.hpp"

namespace mzls {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void Layer::validate() const {
  if (points.size() != weights.size()) {
    throw DimensionMismatch("layer has " + std::to_string(points.size()) + " points but " +
                            std::to_string(weights.size()) + " weights");
  }
  if (degree < 0) throw InvalidArgument("layer degree must be non-negative");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("layer weights must be positive and finite");
  }
}

GaussLegendre gauss_legendre(int count) {
  if (count < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  GaussLegendre rule;
  rule.nodes.assign(count, 0.0);
  rule.weights.assign(count, 0.0);
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root, then Newton.
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // One more derivative evaluation at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = count * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[count - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[count - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

Layer gauss_product_layer(int n) {
  if (n < 0) throw InvalidArgument("degree must be non-negative");
  const GaussLegendre gl = gauss_legendre(n + 1);
  const int nlon = 2 * n + 2;
  Layer layer;
  layer.degree = n;
  layer.provenance = "gauss(n=" + std::to_string(n) + ")";
  layer.points.reserve(static_cast<std::size_t>(n + 1) * nlon);
  layer.weights.reserve(layer.points.capacity());
  for (int i = 0; i <= n; ++i) {
    const double t = gl.nodes[i];
    const double s = std::sqrt((1.0 - t) * (1.0 + t));
    const double w = 0.5 * gl.weights[i] / nlon;
    for (int j = 0; j < nlon; ++j) {
      const double phi = 2.0 * kPi * j / nlon;
      layer.points.push_back(UnitPoint::normalized(s * std::cos(phi), s * std::sin(phi), t));
      layer.weights.push_back(w);
    }
  }
  return layer;
}

Layer fibonacci_layer(int n, double oversampling) {
  if (n < 0) throw InvalidArgument("degree must be non-negative");
  if (!(oversampling > 0.0) || !std::isfinite(oversampling)) {
    throw InvalidArgument("oversampling factor must be positive");
  }
  const double target = oversampling * (n + 1.0) * (n + 1.0);
  // Guard against 2.0 * 16 evaluating to 32.000000000000004 and rounding up.
  const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(target - 1e-9 * target)));
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  Layer layer;
  layer.degree = n;
  layer.provenance = "fibonacci(n=" + std::to_string(n) + ",c=" + format_param(oversampling) + ")";
  layer.points.reserve(count);
  layer.weights.assign(count, 1.0 / static_cast<double>(count));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(count);
    const double s = std::sqrt((1.0 - z) * (1.0 + z));
    const double phi = golden_angle * static_cast<double>(i);
    layer.points.push_back(UnitPoint::normalized(s * std::cos(phi), s * std::sin(phi), z));
  }
  return layer;
}

Layer perturb_layer(const Layer& layer, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be >= 0");
  Layer out = layer;
  out.provenance = layer.provenance + "+perturb(eps=" + format_param(epsilon) + ",seed=" + std::to_string(seed) + ")";
  if (epsilon == 0.0) return out;

  const CounterRng rng(seed);
  const double max_step = epsilon / (layer.degree + 1.0);
  for (std::size_t k = 0; k < layer.size(); ++k) {
    const UnitPoint& p = layer.points[k];
    // Tangent frame: cross with the coordinate axis least aligned with p.
    const auto& c = p.coords();
    int axis = 0;
    for (int i = 1; i < 3; ++i) {
      if (std::abs(c[i]) < std::abs(c[axis])) axis = i;
    }
    std::array<double, 3> a{0.0, 0.0, 0.0};
    a[axis] = 1.0;
    std::array<double, 3> e1{c[1] * a[2] - c[2] * a[1], c[2] * a[0] - c[0] * a[2], c[0] * a[1] - c[1] * a[0]};
    const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (double& v : e1) v /= n1;
    const std::array<double, 3> e2{c[1] * e1[2] - c[2] * e1[1], c[2] * e1[0] - c[0] * e1[2],
                                   c[0] * e1[1] - c[1] * e1[0]};

    const double psi = 2.0 * kPi * rng.uniform(k, 0);
    const double delta = max_step * rng.uniform(k, 1);
    const double cd = std::cos(delta);
    const double sd = std::sin(delta);
    std::array<double, 3> q{};
    for (int i = 0; i < 3; ++i) {
      q[i] = cd * c[i] + sd * (std::cos(psi) * e1[i] + std::sin(psi) * e2[i]);
    }
    out.points[k] = UnitPoint::normalized(q[0], q[1], q[2]);
  }
  return out;
}

std::vector<UnitPoint> covering_grid(int resolution) {
  if (resolution < 1) throw InvalidArgument("grid resolution must be >= 1");
  std::vector<UnitPoint> grid;
  const int nlon = 2 * resolution;
  grid.reserve(static_cast<std::size_t>(resolution - 1) * nlon + 2);
  grid.push_back(UnitPoint::north_pole());
  for (int i = 1; i < resolution; ++i) {
    const double theta = kPi * i / resolution;
    const double t = std::cos(theta);
    const double s = std::sin(theta);
    for (int j = 0; j < nlon; ++j) {
      const double phi = 2.0 * kPi * j / nlon;
      grid.push_back(UnitPoint::normalized(s * std::cos(phi), s * std::sin(phi), t));
    }
  }
  grid.push_back(UnitPoint::normalized(0.0, 0.0, -1.0));
  return grid;
}

std::size_t covering_grid_size(int resolution) {
  if (resolution < 1) throw InvalidArgument("grid resolution must be >= 1");
  return static_cast<std::size_t>(resolution - 1) * (2 * static_cast<std::size_t>(resolution)) + 2;
}

double mesh_norm(const Layer& layer, int grid_resolution) {
  if (layer.size() == 0) throw InvalidArgument("mesh norm of an empty layer");
  const std::vector<UnitPoint> grid = covering_grid(grid_resolution);
  double worst = 0.0;
  for (const UnitPoint& u : grid) {
    // Nearest point maximizes the dot product; refine with the exact distance.
    std::size_t best = 0;
    double best_dot = -2.0;
    for (std::size_t k = 0; k < layer.size(); ++k) {
      const double d = u.dot(layer.points[k]);
      if (d > best_dot) {
        best_dot = d;
        best = k;
      }
    }
    worst = std::max(worst, geodesic_distance(u, layer.points[best]));
  }
  return worst;
}

double min_separation(const Layer& layer) {
  if (layer.size() < 2) throw InvalidArgument("separation needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < layer.size(); ++i) {
    for (std::size_t j = i + 1; j < layer.size(); ++j) {
      best = std::min(best, geodesic_distance(layer.points[i], layer.points[j]));
    }
  }
  return best;
}

}  // namespace mzls
