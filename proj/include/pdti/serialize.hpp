#pragma once

#include <string>

#include <json.hpp>

#include "pdti/bounds.hpp"
#include "pdti/experiments.hpp"

namespace pdti {

inline constexpr int kReportSchemaVersion = 1;

/// {"modes": [...], "re": [...], "im": [...]} in the frozen linearization.
nlohmann::json tensor_to_json(const DenseTensor& x);
DenseTensor tensor_from_json(const nlohmann::json& j);

DenseTensor load_tensor(const std::string& path);
void save_tensor(const DenseTensor& x, const std::string& path);

nlohmann::json bound_record_json(const GFunction& g, const BoundResult& r);

nlohmann::json theorem_params_json(const TheoremParams& p);
nlohmann::json tail_report_json(const TailBoundReport& rep);
std::string tail_report_csv(const TailBoundReport& rep);

nlohmann::json convergence_report_json(const ConvergenceReport& rep);
std::string convergence_report_csv(const ConvergenceReport& rep);

nlohmann::json derivative_report_json(const DerivativeCheckReport& rep);
std::string derivative_report_csv(const DerivativeCheckReport& rep);

/// Shortest round-trip decimal form of a double (deterministic, locale-free).
std::string format_double(double v);

}  // namespace pdti
