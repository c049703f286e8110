#include "foresight/value_models.hpp"

#include <cmath>

#include "foresight/monte_carlo.hpp"

namespace foresight {

double risk_reduction_value(const RiskReductionInput& input) {
  QuantInputs wrapped;
  wrapped.rrv = input;
  throw_if_invalid(validate_quant_inputs(wrapped));
  return (input.pl_before - input.pl_after) * input.p_reduction;
}

double operational_efficiency_value(const EfficiencyInput& input) {
  QuantInputs wrapped;
  wrapped.oev = input;
  throw_if_invalid(validate_quant_inputs(wrapped));
  return (input.g_operational - input.c_implementation) / input.c_implementation;
}

double cost_benefit_value(const CostBenefitInput& input) {
  QuantInputs wrapped;
  wrapped.cbv = input;
  throw_if_invalid(validate_quant_inputs(wrapped));
  return (input.total_savings - input.total_costs) / input.total_costs;
}

CompositeReport composite_value_report(const Idea& idea, double civps_threshold) {
  CompositeReport report;
  report.idea_id = idea.id;
  report.title = idea.title;
  report.category = idea.category;
  report.stage = idea.stage;

  if (!idea.scorecards.empty()) {
    report.civps = compute_civps(idea.scorecards);
    report.gate = gate_decision(*report.civps, effective_threshold(idea, civps_threshold));
  }

  if (idea.quant_inputs) {
    const auto& q = *idea.quant_inputs;
    if (q.rrv) {
      report.rrv = risk_reduction_value(*q.rrv);
      if (*report.rrv < 0.0) {
        report.warnings.push_back(
            "RRV is negative: pl_after exceeds pl_before, check the loss estimates");
      }
    }
    if (q.oev) report.oev = operational_efficiency_value(*q.oev);
    if (q.cbv) report.cbv = cost_benefit_value(*q.cbv);
  }

  if (idea.mc_config) {
    report.mc_config = idea.mc_config;
    report.closed_form_expectation = closed_form_expectation(*idea.mc_config);
  }
  if (idea.mc_result) {
    report.monte_carlo = idea.mc_result;
    report.warnings.push_back(
        "Monte Carlo savings take two values per iteration; percentiles are exact on that "
        "two-point support");
  }
  return report;
}

namespace {

Json not_evaluated() { return Json{{"status", "not_evaluated"}}; }

Json scalar_section(const std::optional<double>& v) {
  if (!v) return not_evaluated();
  return Json{{"status", "evaluated"}, {"value", *v}};
}

}  // namespace

void to_json(Json& j, const CompositeReport& r) {
  Json civps = not_evaluated();
  if (r.civps) civps = Json{{"status", "evaluated"}, {"result", *r.civps}, {"gate", *r.gate}};

  Json mc = not_evaluated();
  if (r.monte_carlo) {
    mc = Json{{"status", "evaluated"},
              {"config", r.mc_config ? Json(*r.mc_config) : Json(nullptr)},
              {"result", *r.monte_carlo},
              {"closed_form_expectation",
               r.closed_form_expectation ? Json(*r.closed_form_expectation) : Json(nullptr)}};
  }

  j = Json{{"idea_id", r.idea_id},
           {"title", r.title},
           {"category", r.category},
           {"stage", r.stage},
           {"civps", civps},
           {"rrv", scalar_section(r.rrv)},
           {"oev", scalar_section(r.oev)},
           {"cbv", scalar_section(r.cbv)},
           {"monte_carlo", mc},
           {"warnings", r.warnings}};
}

}  // namespace foresight
