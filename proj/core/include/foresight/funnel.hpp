/**
 * @file funnel.hpp
 * @brief Four-stage lifecycle with the refinement loop.
 *
 * Transition table (anything else is illegal):
 *
 *   Draft                 --Categorize-->           Categorized
 *   Categorized           --SubmitScores-->         Categorized   (adds/replaces a scorecard)
 *   Categorized           --GatePass-->             Scored
 *   Categorized           --GateReturn-->           ReturnedForRefinement
 *   Scored                --Roadmap-->              Roadmapped
 *   Roadmapped            --ApproveExecution-->     InExecution
 *   InExecution           --DeclareValueRealized--> ValueRealized
 *   ReturnedForRefinement --Resubmit-->             Categorized   (opens a fresh scoring round)
 *   any non-terminal      --Reject-->               Rejected
 *
 * ValueRealized and Rejected are terminal.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "foresight/domain.hpp"
#include "foresight/roadmap.hpp"

namespace foresight {

struct FunnelPolicy {
  /// Minimum scorecards before a gate event is accepted.
  std::size_t scorer_quorum = 1;
  QuadrantThresholds quadrant{};
};

bool is_terminal(StageState state);

/// Pure table lookup; nullopt when the pair is illegal.
std::optional<StageState> transition_target(StageState state, FunnelEventKind kind);

/// Event kinds accepted from `state`, in declaration order.
std::vector<FunnelEventKind> legal_events(StageState state);

/// Applies one event and returns the new idea.
///
/// Errors:
///  - Error(IllegalTransition) when (stage, kind) is not in the table; the
///    message names both.
///  - Error(Consistency) when the payload type does not match the kind, a gate
///    event's outcome disagrees with the kind or with the recomputed CIVPS, a
///    gate event arrives below quorum, or a Roadmap decision disagrees with
///    the classification of its estimate.
///  - Error(Validation) for an invalid scorecard or estimate payload.
Idea advance(const Idea& idea, const FunnelEvent& event, const FunnelPolicy& policy = {});

/// Folds the transition table over `events` starting from Draft.
/// Throws Error(IllegalTransition) if the sequence is not legal.
StageState replay_stage(std::span<const FunnelEvent> events);

/// Folds advance() over `events` starting from `genesis`.
Idea replay(const Idea& genesis, std::span<const FunnelEvent> events,
            const FunnelPolicy& policy = {});

}  // namespace foresight
