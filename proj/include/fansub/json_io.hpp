#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fansub/onefan_search.hpp"
#include "fansub/twofan_search.hpp"

namespace fansub {

// ------------------------------------------------------------------ parsing
// Parsers throw nlohmann::json::exception on missing keys or wrong types
// (malformed input) and DomainError(BadInput) on values outside the domain.

struct RiemannInput {
  RiemannData data;
  GasModel gas;
};

struct VerifyRequest {
  RiemannData data;
  GasModel gas;
  SubsolutionCandidate candidate;
  double tol = 1e-9;
};

PrimitiveState parse_primitive_state(const nlohmann::json& j);

// {"left": {rho, v1?, v2, p}, "right": {...}, "c_v": ...}
RiemannInput parse_riemann_input(const nlohmann::json& j);

// {"n": 1|2, "mu": [...], "regions": [{rho, alpha, beta, gamma, delta, C, p}, ...]}
SubsolutionCandidate parse_candidate(const nlohmann::json& j);

// {"data": <riemann input>, "candidate": <candidate>, "tol"?: ...}
VerifyRequest parse_verify_request(const nlohmann::json& j);

// -------------------------------------------------------------- serializing
// Output goes through dump_json so that every floating-point number is
// rendered with 17 significant digits (exact round-trip) and key order is
// fixed; byte-identical output for identical inputs.

nlohmann::ordered_json state_to_json(const PrimitiveState& s);
nlohmann::ordered_json data_to_json(const RiemannData& d, const GasModel& gas);
nlohmann::ordered_json fan_to_json(const TwoShockFan& fan);
nlohmann::ordered_json candidate_to_json(const SubsolutionCandidate& cand);
nlohmann::ordered_json report_to_json(const VerificationReport& rep);
nlohmann::ordered_json twofan_result_to_json(const TwoFanResult& res, const GasModel& gas);
nlohmann::ordered_json onefan_state_to_json(const OneFanState& st);
nlohmann::ordered_json onefan_result_to_json(const OneFanResult& res);
nlohmann::ordered_json threshold_result_to_json(const ThresholdResult& res);
nlohmann::ordered_json error_to_json(const DomainError& err);

// Pretty two-space-indent serialization; floats via "%.17g" with negative
// zero normalized and non-finite values rendered as null. No trailing
// newline.
std::string dump_json(const nlohmann::ordered_json& j);

// "%.17g" (for CSV cells and tests); non-finite values print as nan/inf.
std::string format_double(double x);

// CSV tables, one header row each.
std::string twofan_scan_csv(const std::vector<TwoFanScanRow>& rows);
std::string threshold_scan_csv(const std::vector<ThresholdScanRow>& rows);

}  // namespace fansub
