#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "foresight/domain.hpp"

namespace foresight {

inline constexpr int kDefaultEffortThreshold = 5;
inline constexpr int kDefaultImpactThreshold = 5;
inline constexpr double kDefaultTopTierThreshold = 8.0;

struct QuadrantThresholds {
  int effort = kDefaultEffortThreshold;
  int impact = kDefaultImpactThreshold;
};

/// A score at or below its threshold counts as "low".
///   low effort,  low impact  -> QuickWin
///   high effort, high impact -> RiskyVenture
///   high effort, low impact  -> ReassessScope
///   low effort,  high impact -> ConditionalGo
/// Thresholds must be in [1,9] (Error(Config)); scores in [1,10] (Error(Validation)).
QuadrantDecision classify_quadrant(const EffortImpactEstimate& estimate,
                                   int effort_threshold = kDefaultEffortThreshold,
                                   int impact_threshold = kDefaultImpactThreshold);

Recommendation recommend(const QuadrantDecision& decision, const std::optional<CIVPSResult>& civps,
                         InnovationCategory category,
                         double top_tier_threshold = kDefaultTopTierThreshold);

struct QuadrantPoint {
  std::string idea_id;
  int effort = 0;
  int impact = 0;
  QuadrantDecision decision;

  bool operator==(const QuadrantPoint&) const = default;
};

/// Plot data for every idea that carries an estimate, in input order.
std::vector<QuadrantPoint> quadrant_points(std::span<const Idea> ideas,
                                           const QuadrantThresholds& thresholds = {});

}  // namespace foresight
