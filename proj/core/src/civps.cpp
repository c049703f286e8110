#include "foresight/civps.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <string>

namespace foresight {

DimensionWeights DimensionWeights::uniform() {
  DimensionWeights w;
  w.values.fill(1.0 / static_cast<double>(kDimensionCount));
  return w;
}

namespace {

void check_weights(const DimensionWeights& w) {
  double sum = 0.0;
  for (double v : w.values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::Config, "dimension weights must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorCode::Config, "dimension weights must sum to 1");
}

}  // namespace

CIVPSResult compute_civps(std::span<const Scorecard> scorecards,
                          const std::optional<DimensionWeights>& weights) {
  if (scorecards.empty()) throw Error(ErrorCode::Validation, "no scorecards");

  std::set<std::string_view> seen;
  std::array<std::int64_t, kDimensionCount> totals{};
  for (std::size_t i = 0; i < scorecards.size(); ++i) {
    const auto& card = scorecards[i];
    throw_if_invalid(validate_scorecard(card, "/scorecards/" + std::to_string(i)));
    if (!seen.insert(card.scorer_id).second) {
      throw Error(ErrorCode::Validation, "duplicate scorer '" + card.scorer_id + "'",
                  "/scorecards/" + std::to_string(i) + "/scorer_id");
    }
    const auto scores = card.scores();
    for (std::size_t d = 0; d < kDimensionCount; ++d) totals[d] += scores[d];
  }

  const auto m = static_cast<double>(scorecards.size());
  CIVPSResult result;
  result.scorer_count = scorecards.size();
  std::int64_t grand_total = 0;
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    result.per_dimension_mean[d] = static_cast<double>(totals[d]) / m;
    grand_total += totals[d];
  }

  if (!weights || *weights == DimensionWeights::uniform()) {
    result.overall = static_cast<double>(grand_total) / (m * static_cast<double>(kDimensionCount));
  } else {
    check_weights(*weights);
    double overall = 0.0;
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      overall += weights->values[d] * result.per_dimension_mean[d];
    }
    result.overall = overall;
  }
  return result;
}

GateOutcome gate_decision(const CIVPSResult& result, double threshold) {
  if (!std::isfinite(threshold) || threshold < kMinScore || threshold > kMaxScore) {
    throw Error(ErrorCode::Config, "CIVPS threshold must be in [1,10]");
  }
  GateOutcome out;
  out.threshold_used = threshold;
  out.decision = result.overall >= threshold ? GateDecision::Pass : GateDecision::ReturnForRefinement;
  return out;
}

double effective_threshold(const Idea& idea, double portfolio_threshold) {
  return idea.civps_threshold_override.value_or(portfolio_threshold);
}

}  // namespace foresight
