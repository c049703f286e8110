#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foresight/civps.hpp"
#include "foresight/domain.hpp"
#include "foresight/serialization.hpp"

namespace foresight {

/// (pl_before - pl_after) * p_reduction. Negative when losses grow.
double risk_reduction_value(const RiskReductionInput& input);

/// (g_operational - c_implementation) / c_implementation. Rejects c_implementation <= 0.
double operational_efficiency_value(const EfficiencyInput& input);

/// (total_savings - total_costs) / total_costs. Rejects total_costs <= 0.
double cost_benefit_value(const CostBenefitInput& input);

/// Side-by-side view of every evaluation available for an idea. Sections with
/// no inputs stay empty and serialize as "not_evaluated"; nothing is defaulted
/// to zero and no fused scalar is produced.
struct CompositeReport {
  std::string idea_id;
  std::string title;
  InnovationCategory category = InnovationCategory::Sustaining;
  StageState stage = StageState::Draft;

  std::optional<CIVPSResult> civps;
  std::optional<GateOutcome> gate;
  std::optional<double> rrv;
  std::optional<double> oev;
  std::optional<double> cbv;
  std::optional<McConfig> mc_config;
  std::optional<McResult> monte_carlo;
  std::optional<double> closed_form_expectation;

  std::vector<std::string> warnings;

  bool operator==(const CompositeReport&) const = default;
};

CompositeReport composite_value_report(const Idea& idea,
                                       double civps_threshold = kDefaultCivpsThreshold);

void to_json(Json& j, const CompositeReport& report);

}  // namespace foresight
