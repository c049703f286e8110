#include "foresight/operations.hpp"

#include "foresight/civps.hpp"
#include "foresight/funnel.hpp"
#include "foresight/portfolio.hpp"
#include "foresight/roadmap.hpp"

namespace foresight {

using namespace jsonio;

namespace {

Idea& mutable_idea(PortfolioFile& portfolio, std::string_view id) {
  Idea* idea = portfolio.find(id);
  if (!idea) throw Error(ErrorCode::NotFound, "unknown idea '" + std::string(id) + "'");
  return *idea;
}

}  // namespace

void from_json(const Json& j, NewIdea& v) {
  expect_object(j);
  v.title = get_string(j, "title");
  v.description = has(j, "description") ? get_string(j, "description") : std::string{};
  v.category = get<InnovationCategory>(j, "category");
  v.originator = has(j, "originator") ? get_string(j, "originator") : std::string{};
  v.civps_threshold_override = get_optional<double>(j, "civps_threshold_override");
  v.quant_inputs = get_optional<QuantInputs>(j, "quant_inputs");
  v.mc_config = get_optional<McConfig>(j, "mc_config");
}

const Idea& create_idea(PortfolioFile& portfolio, const NewIdea& request, Timestamp now) {
  Idea idea;
  idea.id = next_idea_id(portfolio);
  idea.title = request.title;
  idea.description = request.description;
  idea.category = request.category;
  idea.originator = request.originator;
  idea.stage = StageState::Draft;
  idea.created_at = now;
  idea.updated_at = now;
  idea.civps_threshold_override = request.civps_threshold_override;
  idea.quant_inputs = request.quant_inputs;
  idea.mc_config = request.mc_config;
  throw_if_invalid(validate_idea(idea));
  portfolio.ideas.push_back(std::move(idea));
  return portfolio.ideas.back();
}

const Idea& apply_event(PortfolioFile& portfolio, std::string_view idea_id, const FunnelEvent& event) {
  Idea& idea = mutable_idea(portfolio, idea_id);
  idea = advance(idea, event, portfolio.config.funnel_policy());
  portfolio.events[idea.id].push_back(event);
  return idea;
}

const Idea& submit_scorecard(PortfolioFile& portfolio, std::string_view idea_id,
                             const Scorecard& card, Timestamp now) {
  FunnelEvent event;
  event.kind = FunnelEventKind::SubmitScores;
  event.actor = card.scorer_id;
  event.at = now;
  event.payload = card;
  return apply_event(portfolio, idea_id, event);
}

FunnelEvent gate_event(const PortfolioFile& portfolio, std::string_view idea_id, std::string actor,
                       Timestamp now) {
  const Idea& idea = portfolio.get(idea_id);
  const auto civps = compute_civps(idea.scorecards);
  const auto outcome =
      gate_decision(civps, effective_threshold(idea, portfolio.config.civps_threshold));
  FunnelEvent event;
  event.kind = outcome.decision == GateDecision::Pass ? FunnelEventKind::GatePass
                                                      : FunnelEventKind::GateReturn;
  event.actor = std::move(actor);
  event.at = now;
  event.payload = outcome;
  return event;
}

// ---------------------------------------------------------------------------

Json civps_payload(const PortfolioFile& portfolio, std::string_view idea_id) {
  const Idea& idea = portfolio.get(idea_id);
  const auto result = compute_civps(idea.scorecards);
  const auto gate = gate_decision(result, effective_threshold(idea, portfolio.config.civps_threshold));
  return Json{{"idea_id", idea.id}, {"civps", result}, {"gate", gate}};
}

Json civps_payload(std::span<const Scorecard> scorecards, double threshold) {
  const auto result = compute_civps(scorecards);
  return Json{{"idea_id", nullptr}, {"civps", result}, {"gate", gate_decision(result, threshold)}};
}

Json simulation_payload(const McConfig& config, const McResult& result) {
  Json bins = Json::array();
  for (const auto& bin : histogram(config, result)) {
    bins.push_back(Json{{"savings", bin.savings}, {"count", bin.count}});
  }
  return Json{{"config", config},
              {"result", result},
              {"closed_form_expectation", closed_form_expectation(config)},
              {"histogram", bins},
              {"distribution", "two_point"}};
}

Json simulate_payload(const McConfig& config, const SimulationOptions& options) {
  return simulation_payload(config, simulate_bv(config, options));
}

Json simulate_idea(PortfolioFile& portfolio, std::string_view idea_id, const Json& override_patch,
                   Timestamp now, const SimulationOptions& options) {
  Idea& idea = mutable_idea(portfolio, idea_id);
  const McConfig base = idea.mc_config.value_or(portfolio.config.mc_defaults);
  const McConfig config = merge_mc_config(base, override_patch);
  const McResult result = simulate_bv(config, options);
  idea.mc_config = config;
  idea.mc_result = result;
  idea.updated_at = std::max(idea.updated_at, now);
  Json payload = simulation_payload(config, result);
  payload["idea_id"] = idea.id;
  return payload;
}

// ---------------------------------------------------------------------------

void from_json(const Json& j, SweepGrid& grid) {
  expect_object(j);
  grid.c_incident = get_array<double>(j, "c_incident");
  grid.p_incident = get_array<double>(j, "p_incident");
  grid.c_investment = get_array<double>(j, "c_investment");
  grid.r_investment = get_array<double>(j, "r_investment");
  grid.semantics = has(j, "semantics") ? get_array<McSemantics>(j, "semantics")
                                       : std::vector<McSemantics>{McSemantics::PaperVerbatim};
  grid.n = get_u64(j, "n");
  grid.master_seed = get_u64(j, "master_seed");
}

void to_json(Json& j, const SweepGrid& grid) {
  j = Json{{"c_incident", grid.c_incident},     {"p_incident", grid.p_incident},
           {"c_investment", grid.c_investment}, {"r_investment", grid.r_investment},
           {"semantics", grid.semantics},       {"n", grid.n},
           {"master_seed", grid.master_seed}};
}

Json sweep_payload(const SweepGrid& grid, std::span<const SweepRow> rows) {
  Json cells = Json::array();
  for (const auto& row : rows) {
    cells.push_back(Json{{"index", row.index},
                         {"config", row.config},
                         {"result", row.result},
                         {"closed_form_expectation", row.closed_form_expectation}});
  }
  return Json{{"grid", grid}, {"cells", cells}};
}

void to_json(Json& j, const QuadrantPoint& point) {
  j = Json{{"idea_id", point.idea_id},
           {"effort", point.effort},
           {"impact", point.impact},
           {"decision", point.decision}};
}

Json quadrant_payload(const PortfolioFile& portfolio) {
  const auto& c = portfolio.config;
  return Json(quadrant_points(portfolio.ideas, {c.effort_threshold, c.impact_threshold}));
}

Json classify_payload(const EffortImpactEstimate& estimate, const QuadrantThresholds& thresholds,
                      const std::optional<CIVPSResult>& civps, InnovationCategory category,
                      double top_tier_threshold) {
  const auto decision = classify_quadrant(estimate, thresholds.effort, thresholds.impact);
  return Json{{"effort", estimate.effort},
              {"impact", estimate.impact},
              {"decision", decision},
              {"recommendation", recommend(decision, civps, category, top_tier_threshold)}};
}

Json allocation_payload(const PortfolioFile& portfolio) {
  const auto summary =
      allocation_summary(portfolio.ideas, portfolio.config.allocation_target,
                         {portfolio.config.include_returned_in_allocation});
  return Json{{"live", summary.live}, {"executed", summary.executed}};
}

CompositeReport idea_report(const PortfolioFile& portfolio, std::string_view idea_id) {
  return composite_value_report(portfolio.get(idea_id), portfolio.config.civps_threshold);
}

Json history_payload(const PortfolioFile& portfolio, std::string_view idea_id) {
  return Json(history(portfolio, idea_id));
}

}  // namespace foresight
