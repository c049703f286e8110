#pragma once

#include <span>
#include <string>

#include "foresight/domain.hpp"
#include "foresight/monte_carlo.hpp"
#include "foresight/portfolio.hpp"
#include "foresight/roadmap.hpp"
#include "foresight/value_models.hpp"

namespace foresight::render {

/// printf("%.*f") with -0 normalised to 0.
std::string fixed(double value, int decimals = 4);

std::string civps_text(const CIVPSResult& civps, const GateOutcome& gate);

std::string simulation_text(const McConfig& config, const McResult& result);
std::string sweep_csv(std::span<const SweepRow> rows);

std::string quadrant_text(std::span<const QuadrantPoint> points);
std::string quadrant_csv(std::span<const QuadrantPoint> points);
std::string classification_text(const QuadrantDecision& decision, const Recommendation& rec);

std::string allocation_text(const AllocationSummary& summary);
std::string allocation_csv(const AllocationSummary& summary);

std::string report_markdown(const CompositeReport& report, const std::string& currency);
std::string report_csv(const CompositeReport& report);

std::string idea_line(const Idea& idea);

}  // namespace foresight::render
