#pragma once

// Sampling layers on S^2 and their geometric diagnostics.

#include <cstdint>
#include <string>
#include <vector>

#include "mzls/unit_point.hpp"

namespace mzls {

// One sampling layer: points with positive weights, plus the degree the layer
// was generated for and a free-form provenance tag.
struct Layer {
  int degree = 0;
  std::vector<UnitPoint> points;
  std::vector<double> weights;
  std::string provenance;

  std::size_t size() const noexcept { return points.size(); }

  // Checks matching lengths and strictly positive, finite weights.
  void validate() const;
};

// Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2), ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int count);

// (n+1) Gauss-Legendre nodes in cos(theta) times (2n+2) equispaced longitudes.
// Exact for Pi_{2n+1} under the probability measure.
Layer gauss_product_layer(int n);

// ceil(c (n+1)^2) Fibonacci spiral points with equal weights.
Layer fibonacci_layer(int n, double oversampling);

// Moves every point along a random tangent direction by a geodesic length of
// at most epsilon / (n + 1), n being the layer degree. Deterministic in seed;
// weights are unchanged.
Layer perturb_layer(const Layer& layer, double epsilon, std::uint64_t seed);

// Deterministic latitude-longitude covering grid: both poles plus
// (resolution - 1) rings of 2*resolution points (about 2*resolution^2 nodes).
std::vector<UnitPoint> covering_grid(int resolution);
std::size_t covering_grid_size(int resolution);

// Lower estimate of the mesh norm (covering radius) over covering_grid(resolution).
double mesh_norm(const Layer& layer, int grid_resolution);

// Exact minimum pairwise geodesic distance.
double min_separation(const Layer& layer);

}  // namespace mzls
