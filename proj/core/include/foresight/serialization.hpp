/**
 * @file serialization.hpp
 * @brief Canonical JSON mapping for every domain type.
 *
 * Field names are snake_case, enums serialize to lowercase snake_case names,
 * optional fields are always present (null when absent) and timestamps are
 * ISO-8601 UTC strings. Decoding failures raise Error(Validation) with a
 * JSON-pointer path to the offending field.
 */
#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foresight/domain.hpp"
#include "foresight/error.hpp"

namespace foresight {

using Json = nlohmann::json;

void to_json(Json& j, InnovationCategory v);
void from_json(const Json& j, InnovationCategory& v);
void to_json(Json& j, StageState v);
void from_json(const Json& j, StageState& v);
void to_json(Json& j, GateDecision v);
void from_json(const Json& j, GateDecision& v);
void to_json(Json& j, Quadrant v);
void from_json(const Json& j, Quadrant& v);
void to_json(Json& j, Proceed v);
void to_json(Json& j, McSemantics v);
void from_json(const Json& j, McSemantics& v);
void to_json(Json& j, FunnelEventKind v);
void from_json(const Json& j, FunnelEventKind& v);

void to_json(Json& j, const Scorecard& v);
void from_json(const Json& j, Scorecard& v);
void to_json(Json& j, const CIVPSResult& v);
void from_json(const Json& j, CIVPSResult& v);
void to_json(Json& j, const GateOutcome& v);
void from_json(const Json& j, GateOutcome& v);
void to_json(Json& j, const EffortImpactEstimate& v);
void from_json(const Json& j, EffortImpactEstimate& v);
void to_json(Json& j, const QuadrantDecision& v);
void from_json(const Json& j, QuadrantDecision& v);
void to_json(Json& j, const Recommendation& v);
void to_json(Json& j, const RiskReductionInput& v);
void from_json(const Json& j, RiskReductionInput& v);
void to_json(Json& j, const EfficiencyInput& v);
void from_json(const Json& j, EfficiencyInput& v);
void to_json(Json& j, const CostBenefitInput& v);
void from_json(const Json& j, CostBenefitInput& v);
void to_json(Json& j, const QuantInputs& v);
void from_json(const Json& j, QuantInputs& v);
void to_json(Json& j, const McConfig& v);
void from_json(const Json& j, McConfig& v);
void to_json(Json& j, const McResult& v);
void from_json(const Json& j, McResult& v);
void to_json(Json& j, const Idea& v);
void from_json(const Json& j, Idea& v);
void to_json(Json& j, const RoadmapEntry& v);
void from_json(const Json& j, RoadmapEntry& v);
void to_json(Json& j, const Note& v);
void from_json(const Json& j, Note& v);
void to_json(Json& j, const FunnelEvent& v);
void from_json(const Json& j, FunnelEvent& v);
void to_json(Json& j, const AllocationTarget& v);
void from_json(const Json& j, AllocationTarget& v);
void to_json(Json& j, const PortfolioReport& v);
void from_json(const Json& j, PortfolioReport& v);
void to_json(Json& j, const Violation& v);

/// Overlays the fields present in `patch` onto `base`. Used for McConfig
/// overrides where callers send only the parameters they want to change.
McConfig merge_mc_config(const McConfig& base, const Json& patch);

namespace jsonio {

void expect_object(const Json& j);
const Json& require(const Json& j, std::string_view key);
bool has(const Json& j, std::string_view key);

/// Runs `fn`, prefixing "/<key>" onto any Error path it raises and turning
/// nlohmann type errors into Error(Validation).
template <class Fn>
auto at_path(std::string_view key, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (Error& e) {
    e.prepend_path("/" + std::string(key));
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Validation, "wrong JSON type", "/" + std::string(key));
  }
}

template <class T>
T get(const Json& j, std::string_view key) {
  const Json& v = require(j, key);
  return at_path(key, [&] { return v.get<T>(); });
}

template <class T>
std::optional<T> get_optional(const Json& j, std::string_view key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return at_path(key, [&] { return std::optional<T>(it->template get<T>()); });
}

template <class T>
std::vector<T> get_array(const Json& j, std::string_view key) {
  const Json& v = require(j, key);
  return at_path(key, [&] {
    if (!v.is_array()) throw Error(ErrorCode::Validation, "expected array");
    std::vector<T> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(at_path(std::to_string(i), [&] { return v[i].template get<T>(); }));
    }
    return out;
  });
}

/// Integers must be JSON integers; 7.5 is rejected rather than truncated.
int get_int(const Json& j, std::string_view key);
std::uint64_t get_u64(const Json& j, std::string_view key);
double get_number(const Json& j, std::string_view key);
std::string get_string(const Json& j, std::string_view key);
Timestamp get_timestamp(const Json& j, std::string_view key);

}  // namespace jsonio

}  // namespace foresight
