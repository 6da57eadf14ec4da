#pragma once

// JSON and CSV renderings of the analysis results. Every JSON document carries
// "format_version".

#include <string>

#include "json.hpp"

#include "mzls/mz_analysis.hpp"
#include "mzls/quadrature.hpp"
#include "mzls/sobolev_lab.hpp"

namespace mzls {

inline constexpr const char* kFormatVersion = "mzls-report/1";

// Rounds to the given number of significant digits.
double round_significant(double v, int digits);

// {d, n, l_n, A, B, kappa, sum_tau, rank_ok}; kappa is rounded to 6 significant digits.
nlohmann::json mz_report(const DesignSystem& sys);
nlohmann::json mz_failure_report(const Layer& layer, int n, const std::string& reason);
nlohmann::json to_json(const MZVerification& v);
// {sum_w, sum_abs_w, exactness_degree, max_harmonic_residual} plus negative_weights.
nlohmann::json to_json(const RuleCertificate& c);
nlohmann::json to_json(const SlopeFit& s);
nlohmann::json to_json(const LebesgueEstimate& e);
nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const LebesgueReport& r);

// Columns n, l_n, kappa, err_l2, err_Sn, err_quad, lebesgue.
std::string to_csv(const ConvergenceReport& r);

}  // namespace mzls
