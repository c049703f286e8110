#pragma once

#include <array>
#include <optional>
#include <span>

#include "foresight/domain.hpp"

namespace foresight {

inline constexpr double kDefaultCivpsThreshold = 6.0;

/// Optional per-dimension weights (non-negative, summing to 1). Uniform when
/// not supplied.
struct DimensionWeights {
  std::array<double, kDimensionCount> values{};

  static DimensionWeights uniform();
  bool operator==(const DimensionWeights&) const = default;
};

/// Averages each dimension across scorers, then combines the six dimension
/// means into the overall score.
///
/// With uniform weights the overall is computed as grand_total / (6 * m) from
/// integer totals, which equals the mean of the per-dimension means and is
/// correctly rounded, so permutation invariance and the equal-value identity
/// hold bit-for-bit.
///
/// Throws Error(Validation) on an empty list ("no scorecards"), a duplicate
/// scorer_id, or an out-of-range score. Throws Error(Config) on invalid weights.
CIVPSResult compute_civps(std::span<const Scorecard> scorecards,
                          const std::optional<DimensionWeights>& weights = std::nullopt);

/// Pass iff overall >= threshold. Threshold must lie in [1,10] (Error(Config)).
GateOutcome gate_decision(const CIVPSResult& result, double threshold);

/// Threshold that applies to an idea: its override, else the portfolio default.
double effective_threshold(const Idea& idea, double portfolio_threshold);

}  // namespace foresight
