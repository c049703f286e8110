#include "foresight/portfolio.hpp"

namespace foresight {

namespace {

template <class Pred>
PortfolioReport tally(std::span<const Idea> ideas, const AllocationTarget& target, Pred include) {
  throw_if_invalid(validate_target(target, "/target"), ErrorCode::Config);

  PortfolioReport report;
  report.target = target;
  for (const auto& idea : ideas) {
    if (!include(idea)) continue;
    ++report.counts[static_cast<std::size_t>(idea.category)];
    ++report.total_ideas;
  }
  report.empty = report.total_ideas == 0;
  for (std::size_t c = 0; c < report.counts.size(); ++c) {
    report.fractions[c] = report.empty ? 0.0
                                       : static_cast<double>(report.counts[c]) /
                                             static_cast<double>(report.total_ideas);
    report.deviations[c] = report.fractions[c] - target.fractions[c];
  }
  return report;
}

}  // namespace

PortfolioReport allocation_report(std::span<const Idea> ideas, const AllocationTarget& target,
                                  const AllocationOptions& options) {
  return tally(ideas, target, [&](const Idea& idea) {
    if (idea.stage == StageState::Rejected) return false;
    if (idea.stage == StageState::ReturnedForRefinement) return options.include_returned;
    return true;
  });
}

PortfolioReport executed_allocation_report(std::span<const Idea> ideas,
                                           const AllocationTarget& target) {
  return tally(ideas, target, [](const Idea& idea) {
    return idea.stage == StageState::InExecution || idea.stage == StageState::ValueRealized;
  });
}

AllocationSummary allocation_summary(std::span<const Idea> ideas, const AllocationTarget& target,
                                     const AllocationOptions& options) {
  return {allocation_report(ideas, target, options), executed_allocation_report(ideas, target)};
}

}  // namespace foresight
