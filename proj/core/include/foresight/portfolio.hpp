#pragma once

#include <span>

#include "foresight/domain.hpp"

namespace foresight {

struct AllocationOptions {
  /// Ideas sent back for refinement are still live pipeline and count by default.
  bool include_returned = true;
};

/// Category counts and fractions over non-rejected ideas, with deviation
/// (actual - target) per category. An empty selection reports zero counts and
/// fractions with `empty` set. Throws Error(Config) for an invalid target.
PortfolioReport allocation_report(std::span<const Idea> ideas,
                                  const AllocationTarget& target = AllocationTarget{},
                                  const AllocationOptions& options = {});

/// Same report restricted to ideas in InExecution or ValueRealized.
PortfolioReport executed_allocation_report(std::span<const Idea> ideas,
                                           const AllocationTarget& target = AllocationTarget{});

struct AllocationSummary {
  PortfolioReport live;
  PortfolioReport executed;

  bool operator==(const AllocationSummary&) const = default;
};

AllocationSummary allocation_summary(std::span<const Idea> ideas,
                                     const AllocationTarget& target = AllocationTarget{},
                                     const AllocationOptions& options = {});

}  // namespace foresight
