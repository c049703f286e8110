#include "foresight/domain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

namespace foresight {

namespace {

template <class Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view text, const std::array<Enum, N>& values) {
  for (Enum v : values) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

bool parse_fixed_int(std::string_view text, int& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::string join(const std::string& base, std::string_view leaf) {
  std::string out = base;
  out += '/';
  out += leaf;
  return out;
}

bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }
bool unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

// ---------------------------------------------------------------------------

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  // YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!parse_fixed_int(text.substr(0, 4), y) || !parse_fixed_int(text.substr(5, 2), mo) ||
      !parse_fixed_int(text.substr(8, 2), d) || !parse_fixed_int(text.substr(11, 2), h) ||
      !parse_fixed_int(text.substr(14, 2), mi) || !parse_fixed_int(text.substr(17, 2), s)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59 || h < 0 || mi < 0 || s < 0) return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

// ---------------------------------------------------------------------------

std::string_view to_string(InnovationCategory category) {
  switch (category) {
    case InnovationCategory::Sustaining: return "sustaining";
    case InnovationCategory::Incremental: return "incremental";
    case InnovationCategory::Disruptive: return "disruptive";
    case InnovationCategory::Transformative: return "transformative";
  }
  return "unknown";
}

std::optional<InnovationCategory> parse_category(std::string_view text) {
  return lookup(text, kAllCategories);
}

std::string_view to_string(StageState stage) {
  switch (stage) {
    case StageState::Draft: return "draft";
    case StageState::Categorized: return "categorized";
    case StageState::Scored: return "scored";
    case StageState::Roadmapped: return "roadmapped";
    case StageState::InExecution: return "in_execution";
    case StageState::ValueRealized: return "value_realized";
    case StageState::ReturnedForRefinement: return "returned_for_refinement";
    case StageState::Rejected: return "rejected";
  }
  return "unknown";
}

std::optional<StageState> parse_stage(std::string_view text) { return lookup(text, kAllStages); }

std::string_view to_string(Dimension dimension) {
  switch (dimension) {
    case Dimension::Revenue: return "revenue";
    case Dimension::CostEfficiency: return "cost_efficiency";
    case Dimension::OperationalEfficiency: return "operational_efficiency";
    case Dimension::RiskMitigation: return "risk_mitigation";
    case Dimension::TrustBuilding: return "trust_building";
    case Dimension::StrategicAlignment: return "strategic_alignment";
  }
  return "unknown";
}

std::string_view to_string(GateDecision decision) {
  switch (decision) {
    case GateDecision::Pass: return "pass";
    case GateDecision::ReturnForRefinement: return "return_for_refinement";
  }
  return "unknown";
}

std::optional<GateDecision> parse_gate_decision(std::string_view text) {
  return lookup(text, std::array{GateDecision::Pass, GateDecision::ReturnForRefinement});
}

std::string_view to_string(Quadrant quadrant) {
  switch (quadrant) {
    case Quadrant::QuickWin: return "quick_win";
    case Quadrant::RiskyVenture: return "risky_venture";
    case Quadrant::ReassessScope: return "reassess_scope";
    case Quadrant::ConditionalGo: return "conditional_go";
  }
  return "unknown";
}

std::optional<Quadrant> parse_quadrant(std::string_view text) {
  return lookup(text, std::array{Quadrant::QuickWin, Quadrant::RiskyVenture,
                                 Quadrant::ReassessScope, Quadrant::ConditionalGo});
}

std::string_view to_string(Proceed proceed) {
  switch (proceed) {
    case Proceed::Yes: return "yes";
    case Proceed::No: return "no";
    case Proceed::Conditional: return "conditional";
  }
  return "unknown";
}

std::string_view to_string(McSemantics semantics) {
  switch (semantics) {
    case McSemantics::PaperVerbatim: return "paper_verbatim";
    case McSemantics::PreventedEvent: return "prevented_event";
  }
  return "unknown";
}

std::optional<McSemantics> parse_semantics(std::string_view text) {
  return lookup(text, std::array{McSemantics::PaperVerbatim, McSemantics::PreventedEvent});
}

std::string_view to_string(FunnelEventKind kind) {
  switch (kind) {
    case FunnelEventKind::Categorize: return "categorize";
    case FunnelEventKind::SubmitScores: return "submit_scores";
    case FunnelEventKind::GatePass: return "gate_pass";
    case FunnelEventKind::GateReturn: return "gate_return";
    case FunnelEventKind::Roadmap: return "roadmap";
    case FunnelEventKind::ApproveExecution: return "approve_execution";
    case FunnelEventKind::DeclareValueRealized: return "declare_value_realized";
    case FunnelEventKind::Resubmit: return "resubmit";
    case FunnelEventKind::Reject: return "reject";
  }
  return "unknown";
}

std::optional<FunnelEventKind> parse_event_kind(std::string_view text) {
  return lookup(text, kAllEventKinds);
}

// ---------------------------------------------------------------------------

int& Scorecard::score(Dimension d) {
  switch (d) {
    case Dimension::Revenue: return revenue;
    case Dimension::CostEfficiency: return cost_efficiency;
    case Dimension::OperationalEfficiency: return operational_efficiency;
    case Dimension::RiskMitigation: return risk_mitigation;
    case Dimension::TrustBuilding: return trust_building;
    case Dimension::StrategicAlignment: return strategic_alignment;
  }
  return revenue;
}

const Scorecard* Idea::find_scorecard(std::string_view scorer_id) const {
  auto it = std::find_if(scorecards.begin(), scorecards.end(),
                         [&](const Scorecard& s) { return s.scorer_id == scorer_id; });
  return it == scorecards.end() ? nullptr : &*it;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate_scorecard(const Scorecard& card, const std::string& path) {
  std::vector<Violation> out;
  if (card.scorer_id.empty()) out.push_back({join(path, "scorer_id"), "scorer_id must be non-empty"});
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    const auto dim = static_cast<Dimension>(i);
    const int v = card.score(dim);
    if (v < kMinScore || v > kMaxScore) {
      out.push_back({join(path, to_string(dim)), "score must be an integer in [1,10]"});
    }
  }
  return out;
}

std::vector<Violation> validate_estimate(const EffortImpactEstimate& estimate,
                                         const std::string& path) {
  std::vector<Violation> out;
  if (estimate.effort < kMinScore || estimate.effort > kMaxScore) {
    out.push_back({join(path, "effort"), "effort must be an integer in [1,10]"});
  }
  if (estimate.impact < kMinScore || estimate.impact > kMaxScore) {
    out.push_back({join(path, "impact"), "impact must be an integer in [1,10]"});
  }
  return out;
}

std::vector<Violation> validate_quant_inputs(const QuantInputs& inputs, const std::string& path) {
  std::vector<Violation> out;
  if (inputs.rrv) {
    const auto base = join(path, "rrv");
    if (!finite_non_negative(inputs.rrv->pl_before))
      out.push_back({join(base, "pl_before"), "pl_before must be finite and >= 0"});
    if (!finite_non_negative(inputs.rrv->pl_after))
      out.push_back({join(base, "pl_after"), "pl_after must be finite and >= 0"});
    if (!unit_interval(inputs.rrv->p_reduction))
      out.push_back({join(base, "p_reduction"), "p_reduction must be in [0,1]"});
  }
  if (inputs.oev) {
    const auto base = join(path, "oev");
    if (!finite_non_negative(inputs.oev->g_operational))
      out.push_back({join(base, "g_operational"), "g_operational must be finite and >= 0"});
    if (!std::isfinite(inputs.oev->c_implementation) || inputs.oev->c_implementation <= 0.0)
      out.push_back({join(base, "c_implementation"), "c_implementation must be finite and > 0"});
  }
  if (inputs.cbv) {
    const auto base = join(path, "cbv");
    if (!finite_non_negative(inputs.cbv->total_savings))
      out.push_back({join(base, "total_savings"), "total_savings must be finite and >= 0"});
    if (!std::isfinite(inputs.cbv->total_costs) || inputs.cbv->total_costs <= 0.0)
      out.push_back({join(base, "total_costs"), "total_costs must be finite and > 0"});
  }
  return out;
}

std::vector<Violation> validate_mc_config(const McConfig& config, const std::string& path) {
  std::vector<Violation> out;
  if (!finite_non_negative(config.c_incident))
    out.push_back({join(path, "c_incident"), "c_incident must be finite and >= 0"});
  if (!unit_interval(config.p_incident))
    out.push_back({join(path, "p_incident"), "p_incident must be in [0,1]"});
  if (!finite_non_negative(config.c_investment))
    out.push_back({join(path, "c_investment"), "c_investment must be finite and >= 0"});
  if (!unit_interval(config.r_investment))
    out.push_back({join(path, "r_investment"), "r_investment must be in [0,1]"});
  if (config.n < 1) out.push_back({join(path, "n"), "n must be >= 1"});
  return out;
}

std::vector<Violation> validate_target(const AllocationTarget& target, const std::string& path) {
  std::vector<Violation> out;
  double sum = 0.0;
  for (auto c : kAllCategories) {
    const double f = target[c];
    if (!unit_interval(f)) out.push_back({join(path, to_string(c)), "fraction must be in [0,1]"});
    sum += f;
  }
  if (!(std::abs(sum - 1.0) <= 1e-9)) out.push_back({path, "fractions must sum to 1"});
  return out;
}

std::vector<Violation> validate_idea(const Idea& idea) {
  std::vector<Violation> out;
  auto append = [&out](std::vector<Violation> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };

  if (idea.id.empty()) out.push_back({"/id", "id must be non-empty"});
  if (idea.title.empty()) out.push_back({"/title", "title must be non-empty"});
  if (idea.updated_at < idea.created_at) {
    out.push_back({"/updated_at", "updated_at must not precede created_at"});
  }

  std::set<std::string> seen;
  for (std::size_t i = 0; i < idea.scorecards.size(); ++i) {
    const auto& card = idea.scorecards[i];
    const auto path = "/scorecards/" + std::to_string(i);
    append(validate_scorecard(card, path));
    if (!seen.insert(card.scorer_id).second) {
      out.push_back({path + "/scorer_id", "duplicate scorer"});
    }
  }

  if (idea.civps_threshold_override) {
    const double t = *idea.civps_threshold_override;
    if (!std::isfinite(t) || t < kMinScore || t > kMaxScore) {
      out.push_back({"/civps_threshold_override", "threshold must be in [1,10]"});
    }
  }
  if (idea.estimate) append(validate_estimate(*idea.estimate, "/estimate"));
  if (idea.quant_inputs) append(validate_quant_inputs(*idea.quant_inputs, "/quant_inputs"));
  if (idea.mc_config) append(validate_mc_config(*idea.mc_config, "/mc_config"));
  return out;
}

void throw_if_invalid(const std::vector<Violation>& violations, ErrorCode code) {
  if (violations.empty()) return;
  const auto& first = violations.front();
  std::string message = first.message;
  if (violations.size() > 1) {
    message += " (and " + std::to_string(violations.size() - 1) + " more)";
  }
  throw Error(code, std::move(message), first.path);
}

}  // namespace foresight
