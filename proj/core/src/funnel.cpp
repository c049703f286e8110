#include "foresight/funnel.hpp"

#include <algorithm>

#include "foresight/civps.hpp"

namespace foresight {

namespace {

using K = FunnelEventKind;
using S = StageState;

[[noreturn]] void inconsistent(const std::string& message) {
  throw Error(ErrorCode::Consistency, message, "/payload");
}

template <class T>
const T& expect_payload(const FunnelEvent& event, const char* what) {
  const T* p = std::get_if<T>(&event.payload);
  if (!p) {
    inconsistent(std::string(to_string(event.kind)) + " requires a " + what + " payload");
  }
  return *p;
}

void expect_note_or_empty(const FunnelEvent& event) {
  if (!std::holds_alternative<std::monostate>(event.payload) &&
      !std::holds_alternative<Note>(event.payload)) {
    inconsistent(std::string(to_string(event.kind)) + " carries only an optional note");
  }
}

void check_gate(const Idea& idea, const FunnelEvent& event, const FunnelPolicy& policy) {
  const auto& outcome = expect_payload<GateOutcome>(event, "gate outcome");
  const GateDecision expected =
      event.kind == K::GatePass ? GateDecision::Pass : GateDecision::ReturnForRefinement;
  if (outcome.decision != expected) {
    inconsistent(std::string(to_string(event.kind)) + " carries a '" +
                 std::string(to_string(outcome.decision)) + "' outcome");
  }
  if (idea.scorecards.size() < policy.scorer_quorum) {
    inconsistent("gate requires at least " + std::to_string(policy.scorer_quorum) +
                 " scorecard(s), idea has " + std::to_string(idea.scorecards.size()));
  }
  const auto recomputed = gate_decision(compute_civps(idea.scorecards), outcome.threshold_used);
  if (recomputed.decision != outcome.decision) {
    inconsistent("gate outcome does not match the idea's CIVPS at threshold " +
                 std::to_string(outcome.threshold_used));
  }
}

}  // namespace

bool is_terminal(StageState state) {
  return state == S::ValueRealized || state == S::Rejected;
}

std::optional<StageState> transition_target(StageState state, FunnelEventKind kind) {
  if (kind == K::Reject) {
    if (is_terminal(state)) return std::nullopt;
    return S::Rejected;
  }
  switch (state) {
    case S::Draft:
      if (kind == K::Categorize) return S::Categorized;
      break;
    case S::Categorized:
      if (kind == K::SubmitScores) return S::Categorized;
      if (kind == K::GatePass) return S::Scored;
      if (kind == K::GateReturn) return S::ReturnedForRefinement;
      break;
    case S::Scored:
      if (kind == K::Roadmap) return S::Roadmapped;
      break;
    case S::Roadmapped:
      if (kind == K::ApproveExecution) return S::InExecution;
      break;
    case S::InExecution:
      if (kind == K::DeclareValueRealized) return S::ValueRealized;
      break;
    case S::ReturnedForRefinement:
      if (kind == K::Resubmit) return S::Categorized;
      break;
    case S::ValueRealized:
    case S::Rejected:
      break;
  }
  return std::nullopt;
}

std::vector<FunnelEventKind> legal_events(StageState state) {
  std::vector<FunnelEventKind> out;
  for (auto kind : kAllEventKinds) {
    if (transition_target(state, kind)) out.push_back(kind);
  }
  return out;
}

Idea advance(const Idea& idea, const FunnelEvent& event, const FunnelPolicy& policy) {
  const auto target = transition_target(idea.stage, event.kind);
  if (!target) {
    throw Error(ErrorCode::IllegalTransition,
                "illegal transition: event '" + std::string(to_string(event.kind)) +
                    "' from state '" + std::string(to_string(idea.stage)) + "'");
  }

  Idea next = idea;
  switch (event.kind) {
    case K::Categorize:
      next.category = expect_payload<InnovationCategory>(event, "category");
      break;

    case K::SubmitScores: {
      const auto& card = expect_payload<Scorecard>(event, "scorecard");
      throw_if_invalid(validate_scorecard(card, "/payload"));
      // A forum member may revise their card; the later submission replaces it.
      auto it = std::find_if(next.scorecards.begin(), next.scorecards.end(),
                             [&](const Scorecard& s) { return s.scorer_id == card.scorer_id; });
      if (it != next.scorecards.end()) {
        *it = card;
      } else {
        next.scorecards.push_back(card);
      }
      break;
    }

    case K::GatePass:
    case K::GateReturn:
      check_gate(idea, event, policy);
      break;

    case K::Roadmap: {
      const auto& entry = expect_payload<RoadmapEntry>(event, "roadmap");
      throw_if_invalid(validate_estimate(entry.estimate, "/payload/estimate"));
      const auto expected =
          classify_quadrant(entry.estimate, policy.quadrant.effort, policy.quadrant.impact);
      if (expected.quadrant != entry.decision.quadrant) {
        inconsistent("roadmap decision '" + std::string(to_string(entry.decision.quadrant)) +
                     "' does not match estimate classification '" +
                     std::string(to_string(expected.quadrant)) + "'");
      }
      next.estimate = entry.estimate;
      break;
    }

    case K::ApproveExecution:
    case K::DeclareValueRealized:
      expect_note_or_empty(event);
      if (const Note* note = std::get_if<Note>(&event.payload); note && !note->text.empty()) {
        next.milestones.push_back(note->text);
      }
      break;

    case K::Resubmit:
      expect_note_or_empty(event);
      // A resubmitted idea goes through a new evaluation round.
      next.scorecards.clear();
      break;

    case K::Reject:
      expect_note_or_empty(event);
      break;
  }

  next.stage = *target;
  next.updated_at = std::max(next.updated_at, event.at);
  return next;
}

StageState replay_stage(std::span<const FunnelEvent> events) {
  StageState state = S::Draft;
  for (const auto& event : events) {
    const auto target = transition_target(state, event.kind);
    if (!target) {
      throw Error(ErrorCode::IllegalTransition,
                  "illegal transition in history: event '" + std::string(to_string(event.kind)) +
                      "' from state '" + std::string(to_string(state)) + "'");
    }
    state = *target;
  }
  return state;
}

Idea replay(const Idea& genesis, std::span<const FunnelEvent> events, const FunnelPolicy& policy) {
  Idea idea = genesis;
  for (const auto& event : events) idea = advance(idea, event, policy);
  return idea;
}

}  // namespace foresight
