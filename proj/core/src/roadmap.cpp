#include "foresight/roadmap.hpp"

#include <cmath>
#include <cstdio>

namespace foresight {

namespace {

void check_threshold(int t, const char* name) {
  if (t < 1 || t > 9) throw Error(ErrorCode::Config, std::string(name) + " must be in [1,9]");
}

std::string rationale(Quadrant q, const EffortImpactEstimate& e, int et, int it) {
  const std::string axes = "effort " + std::to_string(e.effort) +
                           (e.effort <= et ? " <= " : " > ") + std::to_string(et) + ", impact " +
                           std::to_string(e.impact) + (e.impact <= it ? " <= " : " > ") +
                           std::to_string(it) + " (scores at the threshold count as low)";
  switch (q) {
    case Quadrant::QuickWin:
      return axes + "; low effort and low impact: a quick win that can progress with even a "
                    "moderate initial CIVPS";
    case Quadrant::RiskyVenture:
      return axes + "; high effort and high impact: a venture with substantial risk, advisable "
                    "only for top-tier disruptive or transformative ideas";
    case Quadrant::ReassessScope:
      return axes + "; high effort for low impact: reassess and contain the scope before "
                    "execution";
    case Quadrant::ConditionalGo:
      return axes + "; low effort with high impact: go, conditional on extraordinary potential";
  }
  return axes;
}

}  // namespace

QuadrantDecision classify_quadrant(const EffortImpactEstimate& estimate, int effort_threshold,
                                   int impact_threshold) {
  check_threshold(effort_threshold, "effort_threshold");
  check_threshold(impact_threshold, "impact_threshold");
  throw_if_invalid(validate_estimate(estimate));

  const bool low_effort = estimate.effort <= effort_threshold;
  const bool low_impact = estimate.impact <= impact_threshold;
  Quadrant q;
  if (low_effort && low_impact) {
    q = Quadrant::QuickWin;
  } else if (!low_effort && !low_impact) {
    q = Quadrant::RiskyVenture;
  } else if (!low_effort) {
    q = Quadrant::ReassessScope;
  } else {
    q = Quadrant::ConditionalGo;
  }
  return {q, rationale(q, estimate, effort_threshold, impact_threshold)};
}

Recommendation recommend(const QuadrantDecision& decision, const std::optional<CIVPSResult>& civps,
                         InnovationCategory category, double top_tier_threshold) {
  if (!std::isfinite(top_tier_threshold) || top_tier_threshold < kMinScore ||
      top_tier_threshold > kMaxScore) {
    throw Error(ErrorCode::Config, "top_tier_threshold must be in [1,10]");
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", top_tier_threshold);
  const std::string top_tier = std::string("CIVPS >= top-tier threshold ") + buf;

  Recommendation rec;
  switch (decision.quadrant) {
    case Quadrant::QuickWin:
      rec.proceed = Proceed::Yes;
      rec.conditions.push_back("moderate CIVPS suffices");
      break;

    case Quadrant::ReassessScope:
      rec.proceed = Proceed::No;
      rec.conditions.push_back("scope reassessment prior execution");
      break;

    case Quadrant::RiskyVenture: {
      if (!civps) {
        rec.proceed = Proceed::No;
        rec.conditions.push_back("CIVPS required");
        break;
      }
      const bool category_ok =
          category == InnovationCategory::Disruptive || category == InnovationCategory::Transformative;
      const bool score_ok = civps->overall >= top_tier_threshold;
      if (category_ok && score_ok) {
        rec.proceed = Proceed::Conditional;
        rec.conditions.push_back("exceptional potential confirmed: " + top_tier);
        rec.conditions.push_back("category is disruptive or transformative");
      } else {
        rec.proceed = Proceed::No;
        if (!category_ok) {
          rec.conditions.push_back("category must be disruptive or transformative (is " +
                                   std::string(to_string(category)) + ")");
        }
        if (!score_ok) rec.conditions.push_back("requires " + top_tier);
      }
      break;
    }

    case Quadrant::ConditionalGo:
      if (!civps) {
        rec.proceed = Proceed::No;
        rec.conditions.push_back("CIVPS required");
      } else if (civps->overall >= top_tier_threshold) {
        rec.proceed = Proceed::Conditional;
        rec.conditions.push_back("extraordinary potential confirmed: " + top_tier);
      } else {
        rec.proceed = Proceed::No;
        rec.conditions.push_back("requires " + top_tier);
      }
      break;
  }
  return rec;
}

std::vector<QuadrantPoint> quadrant_points(std::span<const Idea> ideas,
                                           const QuadrantThresholds& thresholds) {
  std::vector<QuadrantPoint> out;
  for (const auto& idea : ideas) {
    if (!idea.estimate) continue;
    out.push_back({idea.id, idea.estimate->effort, idea.estimate->impact,
                   classify_quadrant(*idea.estimate, thresholds.effort, thresholds.impact)});
  }
  return out;
}

}  // namespace foresight
