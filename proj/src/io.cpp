#include "mzls/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace mzls {

namespace {

// Next non-empty line, split into whitespace-separated tokens.
bool next_record(std::istream& in, std::vector<std::string>& tokens) {
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    tokens.clear();
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (!tokens.empty()) return true;
  }
  return false;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("malformed number '" + s + "'");
  }
  if (pos != s.size()) throw InvalidArgument("malformed number '" + s + "'");
  return v;
}

long long to_integer(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("malformed integer '" + s + "'");
  }
  if (pos != s.size()) throw InvalidArgument("malformed integer '" + s + "'");
  return v;
}

void expect_fields(const std::vector<std::string>& tokens, std::size_t count, const char* what) {
  if (tokens.size() != count) {
    throw InvalidArgument(std::string(what) + ": expected " + std::to_string(count) + " fields, got " +
                          std::to_string(tokens.size()));
  }
}

void require_d2(long long d) {
  if (d != 2) throw UnsupportedDimension("file declares d = " + std::to_string(d) + "; only d = 2 is supported");
}

template <class Parse>
auto read_with(const std::string& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse(in);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string layer_to_string(const Layer& layer) {
  std::string out = "2 " + std::to_string(layer.degree) + " " + std::to_string(layer.size()) + "\n";
  for (std::size_t k = 0; k < layer.size(); ++k) {
    const UnitPoint& p = layer.points[k];
    out += format_double(p.x()) + " " + format_double(p.y()) + " " + format_double(p.z()) + " " +
           format_double(layer.weights[k]) + "\n";
  }
  return out;
}

Layer parse_layer(std::istream& in) {
  std::vector<std::string> t;
  if (!next_record(in, t)) throw InvalidArgument("layer file is empty");
  expect_fields(t, 3, "layer header");
  require_d2(to_integer(t[0]));
  Layer layer;
  layer.degree = static_cast<int>(to_integer(t[1]));
  const long long count = to_integer(t[2]);
  if (count < 0) throw InvalidArgument("layer header: negative point count");
  layer.provenance = "file";
  for (long long k = 0; k < count; ++k) {
    if (!next_record(in, t)) throw InvalidArgument("layer file truncated at point " + std::to_string(k));
    expect_fields(t, 4, "layer point");
    layer.points.push_back(UnitPoint::from(to_double(t[0]), to_double(t[1]), to_double(t[2])));
    layer.weights.push_back(to_double(t[3]));
  }
  if (next_record(in, t)) throw InvalidArgument("layer file has trailing records");
  layer.validate();
  return layer;
}

std::string approximant_to_string(const Approximant& p) {
  std::string out = std::to_string(p.basis.dimension) + " " + std::to_string(p.basis.degree) + "\n";
  for (Eigen::Index i = 0; i < p.coeffs.size(); ++i) out += format_double(p.coeffs[i]) + "\n";
  return out;
}

Approximant parse_approximant(std::istream& in) {
  std::vector<std::string> t;
  if (!next_record(in, t)) throw InvalidArgument("approximant file is empty");
  expect_fields(t, 2, "approximant header");
  require_d2(to_integer(t[0]));
  const long long n = to_integer(t[1]);
  if (n < 0) throw InvalidArgument("approximant header: negative degree");
  Approximant p{BasisSpec{2, static_cast<int>(n)}, {}};
  p.coeffs.resize(static_cast<Eigen::Index>(p.basis.size()));
  for (Eigen::Index i = 0; i < p.coeffs.size(); ++i) {
    if (!next_record(in, t)) throw InvalidArgument("approximant file truncated at coefficient " + std::to_string(i));
    expect_fields(t, 1, "approximant coefficient");
    p.coeffs[i] = to_double(t[0]);
  }
  if (next_record(in, t)) throw InvalidArgument("approximant file has trailing records");
  return p;
}

std::string rule_to_string(const QuadratureRule& rule) {
  const Layer& layer = *rule.layer;
  std::string out = "2 " + std::to_string(rule.degree) + " " + std::to_string(layer.size()) + " " +
                    std::to_string(rule.exactness_degree) + "\n";
  for (std::size_t k = 0; k < layer.size(); ++k) {
    const UnitPoint& p = layer.points[k];
    out += format_double(p.x()) + " " + format_double(p.y()) + " " + format_double(p.z()) + " " +
           format_double(rule.weights[static_cast<Eigen::Index>(k)]) + "\n";
  }
  return out;
}

QuadratureRule parse_rule(std::istream& in) {
  std::vector<std::string> t;
  if (!next_record(in, t)) throw InvalidArgument("rule file is empty");
  expect_fields(t, 4, "rule header");
  require_d2(to_integer(t[0]));
  QuadratureRule rule;
  rule.degree = static_cast<int>(to_integer(t[1]));
  const long long count = to_integer(t[2]);
  rule.exactness_degree = static_cast<int>(to_integer(t[3]));
  if (count < 0 || rule.degree < 0) throw InvalidArgument("rule header: negative field");
  Layer layer;
  layer.degree = rule.degree;
  layer.provenance = "rule-file";
  rule.weights.resize(count);
  for (long long k = 0; k < count; ++k) {
    if (!next_record(in, t)) throw InvalidArgument("rule file truncated at node " + std::to_string(k));
    expect_fields(t, 4, "rule node");
    layer.points.push_back(UnitPoint::from(to_double(t[0]), to_double(t[1]), to_double(t[2])));
    layer.weights.push_back(1.0);  // the underlying sampling weights are not stored
    rule.weights[k] = to_double(t[3]);
  }
  if (next_record(in, t)) throw InvalidArgument("rule file has trailing records");
  rule.layer = std::make_shared<const Layer>(std::move(layer));
  return rule;
}

Eigen::VectorXd parse_values(std::istream& in) {
  std::vector<double> v;
  std::vector<std::string> t;
  while (next_record(in, t)) {
    expect_fields(t, 1, "values file");
    v.push_back(to_double(t[0]));
  }
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<UnitPoint> parse_points(std::istream& in) {
  std::vector<UnitPoint> pts;
  std::vector<std::string> t;
  while (next_record(in, t)) {
    expect_fields(t, 3, "points file");
    pts.push_back(UnitPoint::from(to_double(t[0]), to_double(t[1]), to_double(t[2])));
  }
  return pts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

Layer read_layer(const std::string& path) {
  return read_with(path, [](std::istream& in) { return parse_layer(in); });
}

Approximant read_approximant(const std::string& path) {
  return read_with(path, [](std::istream& in) { return parse_approximant(in); });
}

QuadratureRule read_rule(const std::string& path) {
  return read_with(path, [](std::istream& in) { return parse_rule(in); });
}

}  // namespace mzls
