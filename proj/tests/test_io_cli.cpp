#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

#include "mzls/cli.hpp"
#include "mzls/error.hpp"
#include "mzls/io.hpp"
#include "mzls/reports.hpp"
#include "oracles.hpp"

using namespace mzls;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("mzls_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return read_file(p.string()); }

}  // namespace

TEST_SUITE("io") {

TEST_CASE("layer round trip is lossless") {
  const Layer l = perturb_layer(fibonacci_layer(6, 2.0), 0.4, 3);
  std::istringstream in(layer_to_string(l));
  const Layer r = parse_layer(in);
  CHECK(r.degree == l.degree);
  REQUIRE(r.size() == l.size());
  for (std::size_t k = 0; k < l.size(); ++k) {
    CHECK(r.points[k] == l.points[k]);
    CHECK(r.weights[k] == l.weights[k]);
  }
  CHECK(layer_to_string(r) == layer_to_string(l));
}

TEST_CASE("approximant and rule round trips") {
  const Approximant p{BasisSpec{2, 5}, oracle::random_coefficients(36, 4)};
  std::istringstream in(approximant_to_string(p));
  const Approximant q = parse_approximant(in);
  CHECK(q.basis == p.basis);
  CHECK(q.coeffs == p.coeffs);

  const QuadratureRule rule = lsq_weights(build_design(fibonacci_layer(4, 2.0), 4));
  std::istringstream rin(rule_to_string(rule));
  const QuadratureRule back = parse_rule(rin);
  CHECK(back.degree == rule.degree);
  CHECK(back.exactness_degree == rule.exactness_degree);
  CHECK(back.weights == rule.weights);
  for (std::size_t k = 0; k < rule.layer->size(); ++k) CHECK(back.layer->points[k] == rule.layer->points[k]);
}

TEST_CASE("malformed input") {
  std::istringstream bad_header("2 3\n");
  CHECK_THROWS_AS(parse_layer(bad_header), InvalidArgument);
  std::istringstream not_unit("2 0 1\n1 1 0 1\n");
  CHECK_THROWS_AS(parse_layer(not_unit), DomainError);
  std::istringstream short_body("2 0 2\n0 0 1 0.5\n");
  CHECK_THROWS_AS(parse_layer(short_body), InvalidArgument);
  std::istringstream d3("3 0 1\n0 0 1 1\n");
  CHECK_THROWS_AS(parse_layer(d3), UnsupportedDimension);
  std::istringstream neg("2 0 1\n0 0 1 -1\n");
  CHECK_THROWS_AS(parse_layer(neg), InvalidArgument);
  std::istringstream junk("2 1\n0.5\nabc\n0\n0\n");
  CHECK_THROWS_AS(parse_approximant(junk), InvalidArgument);
  CHECK_THROWS_AS(read_layer("/nonexistent/dir/layer.txt"), IoError);
  CHECK_THROWS_AS(write_file_atomic("/nonexistent/dir/out.txt", "x"), IoError);
}

TEST_CASE("atomic writes replace the target") {
  const fs::path p = scratch_dir() / "atomic.txt";
  write_file_atomic(p.string(), "first\n");
  write_file_atomic(p.string(), "second\n");
  CHECK(slurp(p) == "second\n");
  int stray = 0;
  for (const auto& e : fs::directory_iterator(p.parent_path())) stray += e.path().filename().string().find(".tmp") != std::string::npos;
  CHECK(stray == 0);
}

TEST_CASE("report numbers") {
  CHECK(format_double(0.1) == "1.0000000000000001e-01");
  CHECK(round_significant(1.23456789, 6) == doctest::Approx(1.23457).epsilon(1e-15));
  const nlohmann::json j = mz_report(build_design(gauss_product_layer(3), 3));
  CHECK(j["format_version"] == kFormatVersion);
  CHECK(j["kappa"].get<double>() == 1.0);
  for (const char* key : {"d", "n", "l_n", "A", "B", "kappa", "sum_tau", "rank_ok"}) CHECK(j.contains(key));
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("gen writes a gauss layer") {
  const CliRun r = run_cli({"gen", "--family", "gauss", "--n", "8"});
  CHECK(r.code == cli::kOk);
  std::istringstream in(r.out);
  const Layer l = parse_layer(in);
  CHECK(l.size() == 162);
  double s = 0.0;
  for (double w : l.weights) s += w;
  CHECK(std::abs(s - 1.0) <= 1e-14);
}

TEST_CASE("mz on a gauss layer reports kappa 1") {
  const fs::path dir = scratch_dir();
  const std::string layer = (dir / "g8.txt").string();
  REQUIRE(run_cli({"gen", "--family", "gauss", "--n", "8", "--out", layer}).code == 0);
  const CliRun r = run_cli({"mz", "--layer", layer, "--n", "8", "--trials", "10"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kappa"].get<double>() == 1.0);
  CHECK(j["rank_ok"].get<bool>());
  CHECK(j["config"]["n"] == 8);
  CHECK(j["format_version"] == kFormatVersion);
}

TEST_CASE("fit, eval and quad pipeline") {
  const fs::path dir = scratch_dir();
  const std::string layer = (dir / "f6.txt").string(), approx = (dir / "p.txt").string();
  REQUIRE(run_cli({"gen", "--family", "fibonacci", "--n", "6", "--oversampling", "2", "--out", layer}).code == 0);
  REQUIRE(run_cli({"fit", "--layer", layer, "--n", "6", "--function", "x3", "--out", approx}).code == 0);
  const CliRun e = run_cli({"eval", "--approx", approx, "--point", "0.6,0,0.8"});
  REQUIRE(e.code == 0);
  CHECK(std::stod(e.out) == doctest::Approx(0.8).epsilon(1e-10));

  // values file route gives the same approximant
  std::string values;
  std::istringstream lin(slurp(layer));
  for (const UnitPoint& x : parse_layer(lin).points) values += format_double(x.z()) + "\n";
  const std::string vpath = (dir / "v.txt").string();
  write_file_atomic(vpath, values);
  const CliRun fv = run_cli({"fit", "--layer", layer, "--n", "6", "--values", vpath});
  CHECK(fv.out == slurp(approx));

  const CliRun q = run_cli({"quad", "--layer", layer, "--n", "6", "--function", "exp_x3"});
  REQUIRE(q.code == 0);
  const auto j = nlohmann::json::parse(q.out);
  CHECK(std::abs(j["sum_w"].get<double>() - 1.0) <= 1e-10);
  CHECK(j["exactness_degree"].get<int>() >= 6);
  CHECK(j["err_quad"].get<double>() < 1e-6);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"frobnicate"}).code == cli::kValidationError);
  const CliRun unknown = run_cli({"gen", "--n", "3", "--bogus"});
  CHECK(unknown.code == cli::kValidationError);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(run_cli({"gen", "--n", "-2"}).code == cli::kValidationError);
  CHECK(run_cli({"gen", "--family", "hex", "--n", "2"}).code == cli::kValidationError);
  CHECK(run_cli({"mz", "--layer", "/nonexistent/x.txt", "--n", "2"}).code == cli::kIoError);

  const fs::path dir = scratch_dir();
  const std::string sparse = (dir / "sparse.txt").string();
  REQUIRE(run_cli({"gen", "--family", "fibonacci", "--n", "8", "--oversampling", "0.5", "--out", sparse}).code == 0);
  const CliRun mz = run_cli({"mz", "--layer", sparse, "--n", "8"});
  CHECK(mz.code == cli::kNumericalFailure);
  CHECK(nlohmann::json::parse(mz.out)["rank_ok"] == false);
  CHECK(run_cli({"fit", "--layer", sparse, "--n", "8", "--function", "const"}).code == cli::kNumericalFailure);
  CHECK(run_cli({"fit", "--layer", sparse, "--n", "8"}).code == cli::kValidationError);
}

TEST_CASE("reports are deterministic") {
  const fs::path dir = scratch_dir();
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  const std::vector<std::string> base{"sweep", "--family", "fibonacci", "--epsilon", "0.3", "--seed", "9",
                                      "--degrees", "2,4,6", "--t", "3", "--lmax", "16"};
  auto with = [&](const std::string& csv) {
    auto v = base;
    v.insert(v.end(), {"--csv", csv});
    return v;
  };
  const CliRun r1 = run_cli(with(a));
  const CliRun r2 = run_cli(with(b));
  REQUIRE(r1.code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(r1.out.substr(r1.out.find("\"degrees\"")) == r2.out.substr(r2.out.find("\"degrees\"")));
  CHECK(slurp(a).rfind("n,l_n,kappa,err_l2,err_Sn,err_quad,lebesgue\n", 0) == 0);
}

TEST_CASE("lebesgue and selftest commands") {
  const CliRun l = run_cli({"lebesgue", "--family", "gauss", "--degrees", "0,2,4"});
  REQUIRE(l.code == 0);
  const auto j = nlohmann::json::parse(l.out);
  CHECK(j["format_version"] == kFormatVersion);
  const CliRun s = run_cli({"selftest"});
  CHECK(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["passed"] == true);
}

}  // TEST_SUITE
