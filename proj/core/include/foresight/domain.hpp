/**
 * @file domain.hpp
 * @brief Shared value types for the innovation funnel.
 *
 * Everything here is a plain immutable-by-convention value: operations take
 * these by const reference and return new values. Serialization lives in
 * serialization.hpp; the funnel, scoring and simulation modules only include
 * this header.
 */
#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "foresight/error.hpp"

namespace foresight {

using Timestamp = std::chrono::sys_seconds;

/// ISO-8601 UTC, second precision: "2024-03-01T09:30:00Z".
std::string format_timestamp(Timestamp t);
std::optional<Timestamp> parse_timestamp(std::string_view text);

// ---------------------------------------------------------------------------
// Categories and lifecycle

enum class InnovationCategory { Sustaining, Incremental, Disruptive, Transformative };

inline constexpr std::array<InnovationCategory, 4> kAllCategories{
    InnovationCategory::Sustaining, InnovationCategory::Incremental,
    InnovationCategory::Disruptive, InnovationCategory::Transformative};

std::string_view to_string(InnovationCategory category);
std::optional<InnovationCategory> parse_category(std::string_view text);

enum class StageState {
  Draft,
  Categorized,
  Scored,
  Roadmapped,
  InExecution,
  ValueRealized,
  ReturnedForRefinement,
  Rejected,
};

inline constexpr std::array<StageState, 8> kAllStages{
    StageState::Draft,       StageState::Categorized,   StageState::Scored,
    StageState::Roadmapped,  StageState::InExecution,   StageState::ValueRealized,
    StageState::ReturnedForRefinement, StageState::Rejected};

std::string_view to_string(StageState stage);
std::optional<StageState> parse_stage(std::string_view text);

// ---------------------------------------------------------------------------
// Scoring

/// The six value-proposition dimensions, in reporting order.
enum class Dimension {
  Revenue,
  CostEfficiency,
  OperationalEfficiency,
  RiskMitigation,
  TrustBuilding,
  StrategicAlignment,
};

inline constexpr std::size_t kDimensionCount = 6;
inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 10;

std::string_view to_string(Dimension dimension);

struct Scorecard {
  std::string scorer_id;
  int revenue = kMinScore;
  int cost_efficiency = kMinScore;
  int operational_efficiency = kMinScore;
  int risk_mitigation = kMinScore;
  int trust_building = kMinScore;
  int strategic_alignment = kMinScore;
  Timestamp submitted_at{};

  std::array<int, kDimensionCount> scores() const {
    return {revenue, cost_efficiency, operational_efficiency,
            risk_mitigation, trust_building, strategic_alignment};
  }
  int& score(Dimension d);
  int score(Dimension d) const { return scores()[static_cast<std::size_t>(d)]; }

  bool operator==(const Scorecard&) const = default;
};

struct CIVPSResult {
  std::array<double, kDimensionCount> per_dimension_mean{};
  double overall = 0.0;
  std::size_t scorer_count = 0;

  bool operator==(const CIVPSResult&) const = default;
};

enum class GateDecision { Pass, ReturnForRefinement };
std::string_view to_string(GateDecision decision);
std::optional<GateDecision> parse_gate_decision(std::string_view text);

struct GateOutcome {
  GateDecision decision = GateDecision::ReturnForRefinement;
  double threshold_used = 6.0;

  bool operator==(const GateOutcome&) const = default;
};

// ---------------------------------------------------------------------------
// Road-mapping

struct EffortImpactEstimate {
  int effort = kMinScore;
  int impact = kMinScore;
  std::string effort_notes;
  std::string impact_notes;

  bool operator==(const EffortImpactEstimate&) const = default;
};

enum class Quadrant { QuickWin, RiskyVenture, ReassessScope, ConditionalGo };
std::string_view to_string(Quadrant quadrant);
std::optional<Quadrant> parse_quadrant(std::string_view text);

struct QuadrantDecision {
  Quadrant quadrant = Quadrant::QuickWin;
  std::string rationale;

  bool operator==(const QuadrantDecision&) const = default;
};

enum class Proceed { Yes, No, Conditional };
std::string_view to_string(Proceed proceed);

struct Recommendation {
  Proceed proceed = Proceed::No;
  std::vector<std::string> conditions;

  bool operator==(const Recommendation&) const = default;
};

// ---------------------------------------------------------------------------
// Quantitative inputs. Monetary amounts are plain doubles in the portfolio's
// currency; tests compare them with an absolute tolerance of 1e-9 scaled by
// magnitude.

using MonetaryAmount = double;

struct RiskReductionInput {
  MonetaryAmount pl_before = 0.0;
  MonetaryAmount pl_after = 0.0;
  double p_reduction = 0.0;

  bool operator==(const RiskReductionInput&) const = default;
};

struct EfficiencyInput {
  MonetaryAmount g_operational = 0.0;
  MonetaryAmount c_implementation = 0.0;

  bool operator==(const EfficiencyInput&) const = default;
};

struct CostBenefitInput {
  MonetaryAmount total_savings = 0.0;
  MonetaryAmount total_costs = 0.0;

  bool operator==(const CostBenefitInput&) const = default;
};

struct QuantInputs {
  std::optional<RiskReductionInput> rrv;
  std::optional<EfficiencyInput> oev;
  std::optional<CostBenefitInput> cbv;

  bool operator==(const QuantInputs&) const = default;
};

// ---------------------------------------------------------------------------
// Monte Carlo

/// How a uniform draw maps to the "prevented" indicator.
/// PaperVerbatim: prevented iff u < p_incident * (1 - r_investment).
/// PreventedEvent: prevented iff u < p_incident * r_investment.
enum class McSemantics { PaperVerbatim, PreventedEvent };
std::string_view to_string(McSemantics semantics);
std::optional<McSemantics> parse_semantics(std::string_view text);

struct McConfig {
  MonetaryAmount c_incident = 0.0;
  double p_incident = 0.0;
  MonetaryAmount c_investment = 0.0;
  double r_investment = 0.0;
  std::uint64_t n = 10000;
  std::uint64_t seed = 0;
  McSemantics semantics = McSemantics::PaperVerbatim;

  bool operator==(const McConfig&) const = default;
};

inline constexpr std::array<int, 5> kReportedPercentiles{5, 25, 50, 75, 95};

struct McResult {
  double mean_bv = 0.0;
  double std_dev = 0.0;
  std::map<int, double> percentiles;
  std::uint64_t prevented_count = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  McSemantics semantics = McSemantics::PaperVerbatim;
  std::string generator_id;

  bool operator==(const McResult&) const = default;
};

// ---------------------------------------------------------------------------
// Idea

struct Idea {
  std::string id;
  std::string title;
  std::string description;
  InnovationCategory category = InnovationCategory::Sustaining;
  std::string originator;
  StageState stage = StageState::Draft;
  Timestamp created_at{};
  Timestamp updated_at{};
  std::vector<Scorecard> scorecards;
  std::optional<double> civps_threshold_override;
  std::optional<EffortImpactEstimate> estimate;
  std::optional<QuantInputs> quant_inputs;
  std::optional<McConfig> mc_config;
  std::optional<McResult> mc_result;
  /// Free-text execution checkpoints (PoC, PoV, MVP, ...).
  std::vector<std::string> milestones;

  const Scorecard* find_scorecard(std::string_view scorer_id) const;

  bool operator==(const Idea&) const = default;
};

// ---------------------------------------------------------------------------
// Funnel events

enum class FunnelEventKind {
  Categorize,
  SubmitScores,
  GatePass,
  GateReturn,
  Roadmap,
  ApproveExecution,
  DeclareValueRealized,
  Resubmit,
  Reject,
};

inline constexpr std::array<FunnelEventKind, 9> kAllEventKinds{
    FunnelEventKind::Categorize,       FunnelEventKind::SubmitScores,
    FunnelEventKind::GatePass,         FunnelEventKind::GateReturn,
    FunnelEventKind::Roadmap,          FunnelEventKind::ApproveExecution,
    FunnelEventKind::DeclareValueRealized, FunnelEventKind::Resubmit,
    FunnelEventKind::Reject};

std::string_view to_string(FunnelEventKind kind);
std::optional<FunnelEventKind> parse_event_kind(std::string_view text);

struct RoadmapEntry {
  EffortImpactEstimate estimate;
  QuadrantDecision decision;

  bool operator==(const RoadmapEntry&) const = default;
};

struct Note {
  std::string text;

  bool operator==(const Note&) const = default;
};

/// Categorize carries a category, SubmitScores a scorecard, the gate events a
/// GateOutcome, Roadmap an estimate with its decision. The remaining kinds
/// carry nothing or a Note.
using EventPayload =
    std::variant<std::monostate, InnovationCategory, Scorecard, GateOutcome, RoadmapEntry, Note>;

struct FunnelEvent {
  FunnelEventKind kind = FunnelEventKind::Categorize;
  std::string actor;
  Timestamp at{};
  EventPayload payload;

  bool operator==(const FunnelEvent&) const = default;
};

// ---------------------------------------------------------------------------
// Portfolio analytics

struct AllocationTarget {
  /// Indexed by InnovationCategory.
  std::array<double, 4> fractions{0.45, 0.40, 0.10, 0.05};

  double operator[](InnovationCategory c) const { return fractions[static_cast<std::size_t>(c)]; }
  bool operator==(const AllocationTarget&) const = default;
};

struct PortfolioReport {
  std::array<std::size_t, 4> counts{};
  std::array<double, 4> fractions{};
  AllocationTarget target;
  std::array<double, 4> deviations{};
  std::size_t total_ideas = 0;
  bool empty = true;

  bool operator==(const PortfolioReport&) const = default;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string path;
  std::string message;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_scorecard(const Scorecard& card, const std::string& path = {});
std::vector<Violation> validate_estimate(const EffortImpactEstimate& estimate,
                                         const std::string& path = {});
std::vector<Violation> validate_quant_inputs(const QuantInputs& inputs,
                                             const std::string& path = {});
std::vector<Violation> validate_mc_config(const McConfig& config, const std::string& path = {});
std::vector<Violation> validate_target(const AllocationTarget& target, const std::string& path = {});

/// Every invariant violation of the idea, not only the first.
std::vector<Violation> validate_idea(const Idea& idea);

/// Throws Error(Validation) carrying the first violation if any.
void throw_if_invalid(const std::vector<Violation>& violations,
                      ErrorCode code = ErrorCode::Validation);

}  // namespace foresight
