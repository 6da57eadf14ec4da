#include "mzls/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <Eigen/Core>

#include "CLI11.hpp"

#include "mzls/io.hpp"
#include "mzls/reports.hpp"
#include "mzls/selftest.hpp"
#include "mzls/sobolev_lab.hpp"

namespace mzls::cli {

namespace {

using nlohmann::json;

// Fully resolved command configuration; embedded in every report.
struct RunConfig {
  std::string command;
  int n = -1;
  std::vector<int> degrees;
  std::string family = "gauss";
  double oversampling = 2.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::string function;
  double t = 3.0;
  std::vector<double> pole{0.0, 0.0, 1.0};
  int l_max = 128;
  int grid = 0;
  int levels = 3;
  int lebesgue_grid = -1;
  int trials = 0;
  double rank_tol = kDefaultRankTol;
  double eig_tol = 1e-9;
  std::string layer_path, values_path, approx_path, points_path;
  std::string out_path, report_path, csv_path, json_path;
  std::vector<double> point;

  json to_json() const {
    json j{{"command", command}, {"d", 2}};
    if (n >= 0) j["n"] = n;
    if (!degrees.empty()) j["degrees"] = degrees;
    if (command == "gen" || command == "sweep" || (command == "lebesgue" && layer_path.empty())) {
      j["family"] = family;
      j["oversampling"] = oversampling;
      j["epsilon"] = epsilon;
      j["seed"] = seed;
    }
    if (!function.empty() || command == "sweep") {
      j["function"] = command == "sweep" ? std::string("zonal") : function;
      j["t"] = t;
      j["pole"] = pole;
      j["l_max"] = l_max;
    }
    if (command == "lebesgue") {
      j["grid_resolution"] = grid;
      j["levels"] = levels;
    }
    if (command == "sweep") j["lebesgue_grid"] = lebesgue_grid;
    if (command == "mz") {
      j["trials"] = trials;
      j["seed"] = seed;
    }
    j["rank_tol"] = rank_tol;
    j["eig_tol"] = eig_tol;
    for (const auto& [key, val] : {std::pair{"layer", layer_path}, {"values", values_path}, {"approx", approx_path},
                                   {"points", points_path}}) {
      if (!val.empty()) j[key] = val;
    }
    return j;
  }

  DesignOptions design() const { return {rank_tol, eig_tol}; }
};

void validate(const RunConfig& c) {
  if (c.command == "gen" || c.command == "mz" || c.command == "fit" || c.command == "quad") {
    if (c.n < 0) throw InvalidArgument("--n must be a non-negative degree");
  }
  if (!(c.rank_tol > 0.0 && c.rank_tol < 1.0)) throw InvalidArgument("--rank-tol must lie in (0, 1)");
  if (!(c.eig_tol > 0.0)) throw InvalidArgument("--eig-tol must be positive");
  if (!(c.oversampling > 0.0)) throw InvalidArgument("--oversampling must be positive");
  if (!(c.epsilon >= 0.0)) throw InvalidArgument("--epsilon must be >= 0");
  if (c.pole.size() != 3) throw InvalidArgument("--pole needs three coordinates");
  for (int d : c.degrees) {
    if (d < 0) throw InvalidArgument("--degrees entries must be non-negative");
  }
  if (c.family != "gauss" && c.family != "fibonacci") throw InvalidArgument("--family must be gauss or fibonacci");
}

LayerFamily make_family(const RunConfig& c) {
  LayerFamily f;
  f.kind = c.family == "gauss" ? FamilyKind::Gauss : FamilyKind::Fibonacci;
  f.oversampling = c.oversampling;
  f.epsilon = c.epsilon;
  f.seed = c.seed;
  return f;
}

ZonalTestFunction make_zonal(const RunConfig& c) {
  return ZonalTestFunction::power_law(UnitPoint::normalized(c.pole[0], c.pole[1], c.pole[2]), c.t, c.l_max);
}

// Built-in sample sources. Returns the exact integral when known.
std::pair<SampleSource, std::optional<double>> builtin_function(const RunConfig& c) {
  if (c.function == "zonal") {
    const ZonalTestFunction f = make_zonal(c);
    return {f.source(), f.integral()};
  }
  if (c.function == "const") return {[](const UnitPoint&) { return 1.0; }, 1.0};
  if (c.function == "x3") return {[](const UnitPoint& x) { return x.z(); }, 0.0};
  if (c.function == "exp_x3") {
    return {[](const UnitPoint& x) { return std::exp(x.z()); }, std::sinh(1.0)};
  }
  throw InvalidArgument("unknown function '" + c.function + "' (expected zonal, const, x3, exp_x3)");
}

SampleVector load_samples(const RunConfig& c, const Layer& layer) {
  if (!c.function.empty() && !c.values_path.empty()) throw InvalidArgument("give either --function or --values");
  if (!c.values_path.empty()) {
    std::istringstream in(read_file(c.values_path));
    SampleVector v = parse_values(in);
    if (v.size() != static_cast<Eigen::Index>(layer.size())) {
      throw DimensionMismatch("values file has " + std::to_string(v.size()) + " entries, layer has " +
                              std::to_string(layer.size()));
    }
    return v;
  }
  if (c.function.empty()) throw InvalidArgument("a sample source is required: --function NAME or --values PATH");
  return sample(builtin_function(c).first, layer);
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_file_atomic(path, contents);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json with_config(json report, const RunConfig& c) {
  report["config"] = c.to_json();
  report["format_version"] = kFormatVersion;
  return report;
}

int cmd_gen(const RunConfig& c, std::ostream& out) {
  const Layer layer = make_family(c).make(c.n);
  emit(c.out_path, layer_to_string(layer), out);
  return kOk;
}

int cmd_mz(const RunConfig& c, std::ostream& out) {
  auto layer = std::make_shared<const Layer>(read_layer(c.layer_path));
  try {
    const DesignSystem sys = build_design(layer, c.n, c.design());
    json rep = mz_report(sys);
    if (c.trials > 0) rep["verification"] = to_json(verify_mz(sys, c.trials, c.seed));
    const WeightSumCheck w = weight_sum_bounds(sys);
    rep["sum_tau_within_bounds"] = w.lower_ok && w.upper_ok;
    emit(c.out_path, dump(with_config(rep, c)), out);
    return kOk;
  } catch (const MZDeficient& e) {
    emit(c.out_path, dump(with_config(mz_failure_report(*layer, c.n, e.what()), c)), out);
    throw;
  }
}

int cmd_fit(const RunConfig& c, std::ostream& out) {
  auto layer = std::make_shared<const Layer>(read_layer(c.layer_path));
  const SampleVector y = load_samples(c, *layer);
  const DesignSystem sys = build_design(layer, c.n, c.design());
  const Approximant p = fit(sys, y);
  const SampleVector r = sample(p, *layer) - y;
  double disc = 0.0;
  for (std::size_t k = 0; k < layer->size(); ++k) disc += layer->weights[k] * r[static_cast<Eigen::Index>(k)] * r[static_cast<Eigen::Index>(k)];
  json rep{{"n", c.n}, {"l_n", layer->size()}, {"kappa", round_significant(sys.kappa(), 6)},
           {"discrete_residual", std::sqrt(disc)}, {"coefficient_norm", p.coeffs.norm()}};
  if (c.function == "zonal") {
    const ZonalTestFunction f = make_zonal(c);
    if (c.n < f.l_max()) {
      rep["err_l2"] = lsq_error_exact(f, p, c.n);
      rep["err_Sn"] = projection_error_exact(f, c.n);
    }
  }
  if (!c.report_path.empty()) write_file_atomic(c.report_path, dump(with_config(rep, c)));
  emit(c.out_path, approximant_to_string(p), out);
  return kOk;
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
  const Approximant p = read_approximant(c.approx_path);
  std::vector<UnitPoint> pts;
  if (!c.points_path.empty()) {
    std::istringstream in(read_file(c.points_path));
    pts = parse_points(in);
  }
  if (!c.point.empty()) {
    if (c.point.size() != 3) throw InvalidArgument("--point needs three coordinates");
    pts.push_back(UnitPoint::from(c.point[0], c.point[1], c.point[2]));
  }
  if (pts.empty()) throw InvalidArgument("eval needs --points PATH or --point x,y,z");
  std::string text;
  for (const UnitPoint& x : pts) text += format_double(evaluate(p, x)) + "\n";
  emit(c.out_path, text, out);
  return kOk;
}

int cmd_quad(const RunConfig& c, std::ostream& out) {
  auto layer = std::make_shared<const Layer>(read_layer(c.layer_path));
  const DesignSystem sys = build_design(layer, c.n, c.design());
  const QuadratureRule rule = lsq_weights(sys);
  json rep = to_json(certify_rule(rule, c.n));
  if (!c.function.empty() || !c.values_path.empty()) {
    const SampleVector y = load_samples(c, *layer);
    const double value = integrate(rule, y);
    rep["integral"] = value;
    if (!c.function.empty()) {
      const auto [f, exact] = builtin_function(c);
      if (exact) {
        rep["exact_integral"] = *exact;
        rep["err_quad"] = std::abs(*exact - value);
      }
    }
  }
  if (!c.out_path.empty()) write_file_atomic(c.out_path, rule_to_string(rule));
  emit(c.report_path, dump(with_config(rep, c)), out);
  return kOk;
}

int cmd_lebesgue(const RunConfig& c, std::ostream& out) {
  json rep;
  if (!c.layer_path.empty()) {
    if (c.n < 0) throw InvalidArgument("--n is required with --layer");
    const DesignSystem sys = build_design(read_layer(c.layer_path), c.n, c.design());
    rep = json{{"n", c.n}, {"kappa", sys.kappa()}, {"estimate", to_json(lebesgue_refinement(sys, c.grid, c.levels))}};
  } else {
    if (c.degrees.empty()) throw InvalidArgument("lebesgue needs --layer/--n or --family/--degrees");
    rep = to_json(lebesgue_sweep(make_family(c), c.degrees, c.grid, c.levels));
  }
  emit(c.out_path, dump(with_config(rep, c)), out);
  return kOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  if (c.degrees.empty()) throw InvalidArgument("sweep needs --degrees");
  SweepOptions opts;
  opts.lebesgue_resolution = c.lebesgue_grid;
  opts.design = c.design();
  const ConvergenceReport rep = convergence_sweep(make_family(c), make_zonal(c), c.degrees, opts);
  json j = to_json(rep);
  j["s_eff"] = c.t - 1.0;
  if (!c.csv_path.empty()) write_file_atomic(c.csv_path, to_csv(rep));
  emit(c.json_path, dump(with_config(j, c)), out);
  return kOk;
}

int cmd_selftest(const RunConfig& c, std::ostream& out) {
  const auto results = run_selftest();
  json arr = json::array();
  bool ok = true;
  for (const auto& r : results) {
    arr.push_back(json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    ok = ok && r.passed;
  }
  emit(c.out_path, dump(with_config(json{{"results", arr}, {"passed", ok}}, c)), out);
  return ok ? kOk : kNumericalFailure;
}

void apply_thread_env() {
  if (const char* env = std::getenv("MZLS_NUM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  apply_thread_env();
  RunConfig c;
  CLI::App app{"Weighted least squares approximation and quadrature on the sphere", "mzls"};
  app.require_subcommand(1, 1);

  auto add_system = [&](CLI::App* s, bool need_layer) {
    auto* opt = s->add_option("--layer", c.layer_path, "layer file");
    if (need_layer) opt->required();
    s->add_option("--n", c.n, "fitting degree");
    s->add_option("--rank-tol", c.rank_tol, "relative rank tolerance of the QR factor");
    s->add_option("--eig-tol", c.eig_tol, "relative tolerance for extremal eigenvalues");
  };
  auto add_family = [&](CLI::App* s) {
    s->add_option("--family", c.family, "gauss | fibonacci");
    s->add_option("--oversampling", c.oversampling, "fibonacci point count factor c (c (n+1)^2 points)");
    s->add_option("--epsilon", c.epsilon, "perturbation size (geodesic step <= epsilon/(n+1))");
    s->add_option("--seed", c.seed, "perturbation seed");
  };
  auto add_function = [&](CLI::App* s) {
    s->add_option("--function", c.function, "built-in sample source: zonal | const | x3 | exp_x3");
    s->add_option("--values", c.values_path, "file with one sample value per layer point");
    s->add_option("--t", c.t, "zonal coefficient decay exponent");
    s->add_option("--pole", c.pole, "zonal pole x,y,z")->delimiter(',')->expected(3);
    s->add_option("--lmax", c.l_max, "zonal truncation degree");
  };

  auto* gen = app.add_subcommand("gen", "generate a sampling layer");
  add_family(gen);
  gen->add_option("--n", c.n, "layer degree")->required();
  gen->add_option("--out", c.out_path, "output layer file (default stdout)");

  auto* mz = app.add_subcommand("mz", "certify MZ constants of a layer");
  add_system(mz, true);
  mz->add_option("--trials", c.trials, "random Rayleigh-quotient probes");
  mz->add_option("--seed", c.seed, "probe seed");
  mz->add_option("--out", c.out_path, "JSON report (default stdout)");

  auto* fitc = app.add_subcommand("fit", "weighted least squares fit");
  add_system(fitc, true);
  add_function(fitc);
  fitc->add_option("--out", c.out_path, "approximant file (default stdout)");
  fitc->add_option("--report", c.report_path, "JSON fit report");

  auto* evalc = app.add_subcommand("eval", "evaluate an approximant");
  evalc->add_option("--approx", c.approx_path, "approximant file")->required();
  evalc->add_option("--points", c.points_path, "file of x1 x2 x3 lines");
  evalc->add_option("--point", c.point, "single point x,y,z")->delimiter(',')->expected(3);
  evalc->add_option("--out", c.out_path, "output values (default stdout)");

  auto* quad = app.add_subcommand("quad", "least squares quadrature rule");
  add_system(quad, true);
  add_function(quad);
  quad->add_option("--out", c.out_path, "rule file");
  quad->add_option("--report", c.report_path, "JSON certification report (default stdout)");

  auto* leb = app.add_subcommand("lebesgue", "Lebesgue constant estimate or sweep");
  add_system(leb, false);
  add_family(leb);
  leb->add_option("--degrees", c.degrees, "degree list for a family sweep")->delimiter(',');
  leb->add_option("--grid", c.grid, "base grid resolution (0 = at least 40 d_n nodes)");
  leb->add_option("--levels", c.levels, "number of grid refinements");
  leb->add_option("--out", c.out_path, "JSON report (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "convergence sweep with a zonal test function");
  add_family(sweep);
  add_function(sweep);
  sweep->add_option("--degrees", c.degrees, "comma separated degrees")->delimiter(',')->required();
  sweep->add_option("--lebesgue-grid", c.lebesgue_grid, "grid resolution for the lebesgue column (-1 off, 0 default)");
  sweep->add_option("--csv", c.csv_path, "CSV output");
  sweep->add_option("--json", c.json_path, "JSON summary (default stdout)");
  sweep->add_option("--rank-tol", c.rank_tol, "relative rank tolerance of the QR factor");
  sweep->add_option("--eig-tol", c.eig_tol, "relative tolerance for extremal eigenvalues");

  auto* self = app.add_subcommand("selftest", "run the built-in invariant suite");
  self->add_option("--out", c.out_path, "JSON results (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kValidationError;
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    validate(c);
    if (c.command == "gen") return cmd_gen(c, out);
    if (c.command == "mz") return cmd_mz(c, out);
    if (c.command == "fit") return cmd_fit(c, out);
    if (c.command == "eval") return cmd_eval(c, out);
    if (c.command == "quad") return cmd_quad(c, out);
    if (c.command == "lebesgue") return cmd_lebesgue(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out);
    if (c.command == "selftest") return cmd_selftest(c, out);
  } catch (const IoError& e) {
    err << "mzls: I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const NumericalFailure& e) {
    err << "mzls: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const InvalidArgument& e) {
    err << "mzls: invalid input: " << e.what() << "\n";
    return kValidationError;
  } catch (const Error& e) {
    err << "mzls: " << e.what() << "\n";
    return kNumericalFailure;
  }
  err << "mzls: unknown command\n";
  return kValidationError;
}

}  // namespace mzls::cli
