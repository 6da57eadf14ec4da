#include "mzls/reports.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "mzls/io.hpp"

namespace mzls {

namespace {

using nlohmann::json;

// JSON has no NaN; undefined quantities are null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

double round_significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return std::strtod(buf, nullptr);
}

json mz_report(const DesignSystem& sys) {
  const WeightSumCheck w = weight_sum_bounds(sys);
  return json{{"format_version", kFormatVersion},
              {"d", 2},
              {"n", sys.degree()},
              {"l_n", sys.layer().size()},
              {"A", sys.A()},
              {"B", sys.B()},
              {"kappa", round_significant(sys.kappa(), 6)},
              {"sum_tau", w.sum_tau},
              {"rank_ok", true}};
}

json mz_failure_report(const Layer& layer, int n, const std::string& reason) {
  double sum = 0.0;
  for (double t : layer.weights) sum += t;
  return json{{"format_version", kFormatVersion},
              {"d", 2},
              {"n", n},
              {"l_n", layer.size()},
              {"A", nullptr},
              {"B", nullptr},
              {"kappa", nullptr},
              {"sum_tau", sum},
              {"rank_ok", false},
              {"error", reason}};
}

json to_json(const MZVerification& v) {
  return json{{"trials", v.trials},
              {"min_quotient", v.min_quotient},
              {"max_quotient", v.max_quotient},
              {"contained", v.contained}};
}

json to_json(const RuleCertificate& c) {
  return json{{"format_version", kFormatVersion},
              {"sum_w", c.sum_w},
              {"sum_abs_w", c.sum_abs_w},
              {"exactness_degree", c.exactness_degree},
              {"max_harmonic_residual", c.max_harmonic_residual},
              {"negative_weights", c.negative_weights}};
}

json to_json(const SlopeFit& s) {
  return json{{"defined", s.defined},
              {"slope", number_or_null(s.slope)},
              {"stderr", number_or_null(s.stderr_)},
              {"band", json::array({number_or_null(s.band_lo), number_or_null(s.band_hi)})},
              {"points_used", s.points_used}};
}

json to_json(const LebesgueEstimate& e) {
  return json{{"resolutions", e.resolutions}, {"values", e.values}, {"value", e.value}, {"stable", e.stable}};
}

json to_json(const ConvergenceReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    json j{{"n", p.n}, {"l_n", p.l_n}, {"valid", p.valid}};
    if (!p.valid) {
      j["failure"] = p.failure;
    } else {
      j.update(json{{"A", p.A},
                    {"B", p.B},
                    {"kappa", p.kappa},
                    {"err_l2", p.err_l2},
                    {"err_Sn", p.err_Sn},
                    {"err_quad", p.err_quad},
                    {"lebesgue", number_or_null(p.lebesgue)},
                    {"stability_lhs", p.stability_lhs},
                    {"stability_rhs", p.stability_rhs},
                    {"holder_ok", p.holder_ok},
                    {"stability_ok", p.stability_ok}});
    }
    pts.push_back(j);
  }
  return json{{"format_version", kFormatVersion},
              {"family", r.family},
              {"degrees", r.degrees},
              {"points", pts},
              {"slopes", {{"err_l2", to_json(r.slope_l2)}, {"err_quad", to_json(r.slope_quad)}, {"err_Sn", to_json(r.slope_Sn)}}}};
}

json to_json(const LebesgueReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    pts.push_back(json{{"n", p.n}, {"kappa", p.kappa}, {"estimate", to_json(p.estimate)}, {"bound_ratio", p.bound_ratio}});
  }
  return json{{"format_version", kFormatVersion},
              {"family", r.family},
              {"points", pts},
              {"growth", to_json(r.growth)},
              {"exponent_ok", r.exponent_ok},
              {"max_bound_ratio", r.max_bound_ratio}};
}

std::string to_csv(const ConvergenceReport& r) {
  std::string out = "n,l_n,kappa,err_l2,err_Sn,err_quad,lebesgue\n";
  for (const auto& p : r.points) {
    out += std::to_string(p.n) + "," + std::to_string(p.l_n) + ",";
    if (p.valid) {
      out += format_double(p.kappa) + "," + format_double(p.err_l2) + "," + format_double(p.err_Sn) + "," +
             format_double(p.err_quad) + "," + (std::isfinite(p.lebesgue) ? format_double(p.lebesgue) : "nan") + "\n";
    } else {
      out += "nan,nan,nan,nan,nan\n";
    }
  }
  return out;
}

}  // namespace mzls
