#pragma once

// Line-oriented text formats. Floating-point values are written with 17
// significant digits (%.16e), so files re-read losslessly.
//
//   layer:       "d n l_n"                     then l_n lines "x1 x2 x3 tau"
//   approximant: "d n"                         then d_n lines "a_i" in basis order
//   rule:        "d n l_n exactness_degree"    then l_n lines "x1 x2 x3 w"

#include <iosfwd>
#include <string>

#include "mzls/approximation.hpp"
#include "mzls/pointsets.hpp"
#include "mzls/quadrature.hpp"

namespace mzls {

std::string format_double(double v);

std::string layer_to_string(const Layer& layer);
Layer parse_layer(std::istream& in);

std::string approximant_to_string(const Approximant& p);
Approximant parse_approximant(std::istream& in);

std::string rule_to_string(const QuadratureRule& rule);
QuadratureRule parse_rule(std::istream& in);

// One value per line.
Eigen::VectorXd parse_values(std::istream& in);
// One "x1 x2 x3" triple per line.
std::vector<UnitPoint> parse_points(std::istream& in);

std::string read_file(const std::string& path);
// Writes to a temporary sibling and renames it over path.
void write_file_atomic(const std::string& path, const std::string& contents);

Layer read_layer(const std::string& path);
Approximant read_approximant(const std::string& path);
QuadratureRule read_rule(const std::string& path);

}  // namespace mzls
