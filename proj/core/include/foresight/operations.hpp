/**
 * @file operations.hpp
 * @brief Portfolio-level operations shared by the HTTP service and the CLI.
 *
 * Both front ends build their JSON through these functions, so a given input
 * produces the same payload on either surface. Mutating operations change the
 * in-memory PortfolioFile only; persisting it is the caller's job.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "foresight/domain.hpp"
#include "foresight/monte_carlo.hpp"
#include "foresight/serialization.hpp"
#include "foresight/store.hpp"
#include "foresight/value_models.hpp"

namespace foresight {

struct NewIdea {
  std::string title;
  std::string description;
  InnovationCategory category = InnovationCategory::Sustaining;
  std::string originator;
  std::optional<double> civps_threshold_override;
  std::optional<QuantInputs> quant_inputs;
  std::optional<McConfig> mc_config;
};

void from_json(const Json& j, NewIdea& v);

/// Appends a Draft idea with a fresh id. Throws Error(Validation) if invalid.
const Idea& create_idea(PortfolioFile& portfolio, const NewIdea& request, Timestamp now);

/// Applies `event` through the funnel and appends it to the idea's history.
const Idea& apply_event(PortfolioFile& portfolio, std::string_view idea_id, const FunnelEvent& event);

/// SubmitScores event on behalf of card.scorer_id.
const Idea& submit_scorecard(PortfolioFile& portfolio, std::string_view idea_id,
                             const Scorecard& card, Timestamp now);

/// GatePass or GateReturn for the idea's current scorecards and threshold.
FunnelEvent gate_event(const PortfolioFile& portfolio, std::string_view idea_id,
                       std::string actor, Timestamp now);

// ---------------------------------------------------------------------------
// Read-side payloads

/// {"idea_id", "civps", "gate"} for a stored idea.
Json civps_payload(const PortfolioFile& portfolio, std::string_view idea_id);

/// Same shape for ad-hoc scorecards; idea_id is null.
Json civps_payload(std::span<const Scorecard> scorecards, double threshold);

/// {"config", "result", "closed_form_expectation", "histogram", "distribution"}.
Json simulation_payload(const McConfig& config, const McResult& result);

/// Ad-hoc what-if run; nothing is persisted.
Json simulate_payload(const McConfig& config, const SimulationOptions& options = {});

/// Runs the idea's simulation with `override_patch` merged over its stored
/// config (or the portfolio defaults) and records config and result on the idea.
Json simulate_idea(PortfolioFile& portfolio, std::string_view idea_id, const Json& override_patch,
                   Timestamp now, const SimulationOptions& options = {});

void from_json(const Json& j, SweepGrid& grid);
void to_json(Json& j, const SweepGrid& grid);
Json sweep_payload(const SweepGrid& grid, std::span<const SweepRow> rows);

void to_json(Json& j, const QuadrantPoint& point);
Json quadrant_payload(const PortfolioFile& portfolio);

/// Classification and recommendation for a single estimate.
Json classify_payload(const EffortImpactEstimate& estimate, const QuadrantThresholds& thresholds,
                      const std::optional<CIVPSResult>& civps, InnovationCategory category,
                      double top_tier_threshold);

/// {"live": PortfolioReport, "executed": PortfolioReport}.
Json allocation_payload(const PortfolioFile& portfolio);

CompositeReport idea_report(const PortfolioFile& portfolio, std::string_view idea_id);

Json history_payload(const PortfolioFile& portfolio, std::string_view idea_id);

}  // namespace foresight
