#include "foresight/serialization.hpp"

#include <cmath>
#include <limits>

namespace foresight {

namespace jsonio {

void expect_object(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Validation, "expected object");
}

const Json& require(const Json& j, std::string_view key) {
  expect_object(j);
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::Validation, "missing required field", "/" + std::string(key));
  }
  return *it;
}

bool has(const Json& j, std::string_view key) {
  return j.is_object() && j.find(key) != j.end();
}

int get_int(const Json& j, std::string_view key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::Validation, "expected integer", "/" + std::string(key));
  }
  const auto raw = v.get<std::int64_t>();
  if (raw < std::numeric_limits<int>::min() || raw > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::Validation, "integer out of range", "/" + std::string(key));
  }
  return static_cast<int>(raw);
}

std::uint64_t get_u64(const Json& j, std::string_view key) {
  const Json& v = require(j, key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw Error(ErrorCode::Validation, "expected non-negative integer", "/" + std::string(key));
}

double get_number(const Json& j, std::string_view key) {
  const Json& v = require(j, key);
  if (!v.is_number()) throw Error(ErrorCode::Validation, "expected number", "/" + std::string(key));
  return v.get<double>();
}

std::string get_string(const Json& j, std::string_view key) {
  const Json& v = require(j, key);
  if (!v.is_string()) throw Error(ErrorCode::Validation, "expected string", "/" + std::string(key));
  return v.get<std::string>();
}

Timestamp get_timestamp(const Json& j, std::string_view key) {
  const auto text = get_string(j, key);
  auto t = parse_timestamp(text);
  if (!t) {
    throw Error(ErrorCode::Validation, "expected UTC timestamp YYYY-MM-DDTHH:MM:SSZ",
                "/" + std::string(key));
  }
  return *t;
}

}  // namespace jsonio

using namespace jsonio;

namespace {

template <class Enum, class Parser>
void enum_from_json(const Json& j, Enum& v, Parser parse, const char* what) {
  if (!j.is_string()) throw Error(ErrorCode::Validation, std::string("expected ") + what + " name");
  auto parsed = parse(j.template get<std::string>());
  if (!parsed) {
    throw Error(ErrorCode::Validation,
                std::string("unknown ") + what + " '" + j.template get<std::string>() + "'");
  }
  v = *parsed;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json by_category(const std::array<double, 4>& values) {
  Json j = Json::object();
  for (auto c : kAllCategories) j[std::string(to_string(c))] = values[static_cast<std::size_t>(c)];
  return j;
}

std::array<double, 4> category_numbers(const Json& j) {
  expect_object(j);
  std::array<double, 4> out{};
  for (auto c : kAllCategories) out[static_cast<std::size_t>(c)] = get_number(j, to_string(c));
  return out;
}

std::string percentile_key(int p) { return "p" + std::to_string(p); }

}  // namespace

// ---------------------------------------------------------------------------
// Enums

void to_json(Json& j, InnovationCategory v) { j = std::string(to_string(v)); }
void from_json(const Json& j, InnovationCategory& v) {
  enum_from_json(j, v, parse_category, "category");
}
void to_json(Json& j, StageState v) { j = std::string(to_string(v)); }
void from_json(const Json& j, StageState& v) { enum_from_json(j, v, parse_stage, "stage"); }
void to_json(Json& j, GateDecision v) { j = std::string(to_string(v)); }
void from_json(const Json& j, GateDecision& v) {
  enum_from_json(j, v, parse_gate_decision, "gate decision");
}
void to_json(Json& j, Quadrant v) { j = std::string(to_string(v)); }
void from_json(const Json& j, Quadrant& v) { enum_from_json(j, v, parse_quadrant, "quadrant"); }
void to_json(Json& j, Proceed v) { j = std::string(to_string(v)); }
void to_json(Json& j, McSemantics v) { j = std::string(to_string(v)); }
void from_json(const Json& j, McSemantics& v) {
  enum_from_json(j, v, parse_semantics, "semantics");
}
void to_json(Json& j, FunnelEventKind v) { j = std::string(to_string(v)); }
void from_json(const Json& j, FunnelEventKind& v) {
  enum_from_json(j, v, parse_event_kind, "event kind");
}

// ---------------------------------------------------------------------------
// Scoring

void to_json(Json& j, const Scorecard& v) {
  j = Json{{"scorer_id", v.scorer_id},
           {"revenue", v.revenue},
           {"cost_efficiency", v.cost_efficiency},
           {"operational_efficiency", v.operational_efficiency},
           {"risk_mitigation", v.risk_mitigation},
           {"trust_building", v.trust_building},
           {"strategic_alignment", v.strategic_alignment},
           {"submitted_at", format_timestamp(v.submitted_at)}};
}

void from_json(const Json& j, Scorecard& v) {
  expect_object(j);
  v.scorer_id = get_string(j, "scorer_id");
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    const auto d = static_cast<Dimension>(i);
    v.score(d) = get_int(j, to_string(d));
  }
  v.submitted_at = get_timestamp(j, "submitted_at");
}

void to_json(Json& j, const CIVPSResult& v) {
  Json means = Json::object();
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    means[std::string(to_string(static_cast<Dimension>(i)))] = v.per_dimension_mean[i];
  }
  j = Json{{"per_dimension_mean", means}, {"overall", v.overall}, {"scorer_count", v.scorer_count}};
}

void from_json(const Json& j, CIVPSResult& v) {
  expect_object(j);
  const Json& means = require(j, "per_dimension_mean");
  at_path("per_dimension_mean", [&] {
    for (std::size_t i = 0; i < kDimensionCount; ++i) {
      v.per_dimension_mean[i] = get_number(means, to_string(static_cast<Dimension>(i)));
    }
    return 0;
  });
  v.overall = get_number(j, "overall");
  v.scorer_count = static_cast<std::size_t>(get_u64(j, "scorer_count"));
}

void to_json(Json& j, const GateOutcome& v) {
  j = Json{{"decision", v.decision}, {"threshold_used", v.threshold_used}};
}

void from_json(const Json& j, GateOutcome& v) {
  expect_object(j);
  v.decision = get<GateDecision>(j, "decision");
  v.threshold_used = get_number(j, "threshold_used");
}

// ---------------------------------------------------------------------------
// Road-mapping

void to_json(Json& j, const EffortImpactEstimate& v) {
  j = Json{{"effort", v.effort},
           {"impact", v.impact},
           {"effort_notes", v.effort_notes},
           {"impact_notes", v.impact_notes}};
}

void from_json(const Json& j, EffortImpactEstimate& v) {
  expect_object(j);
  v.effort = get_int(j, "effort");
  v.impact = get_int(j, "impact");
  v.effort_notes = has(j, "effort_notes") ? get_string(j, "effort_notes") : std::string{};
  v.impact_notes = has(j, "impact_notes") ? get_string(j, "impact_notes") : std::string{};
}

void to_json(Json& j, const QuadrantDecision& v) {
  j = Json{{"quadrant", v.quadrant}, {"rationale", v.rationale}};
}

void from_json(const Json& j, QuadrantDecision& v) {
  expect_object(j);
  v.quadrant = get<Quadrant>(j, "quadrant");
  v.rationale = has(j, "rationale") ? get_string(j, "rationale") : std::string{};
}

void to_json(Json& j, const Recommendation& v) {
  j = Json{{"proceed", v.proceed}, {"conditions", v.conditions}};
}

// ---------------------------------------------------------------------------
// Quantitative inputs

void to_json(Json& j, const RiskReductionInput& v) {
  j = Json{{"pl_before", v.pl_before}, {"pl_after", v.pl_after}, {"p_reduction", v.p_reduction}};
}

void from_json(const Json& j, RiskReductionInput& v) {
  expect_object(j);
  v.pl_before = get_number(j, "pl_before");
  v.pl_after = get_number(j, "pl_after");
  v.p_reduction = get_number(j, "p_reduction");
}

void to_json(Json& j, const EfficiencyInput& v) {
  j = Json{{"g_operational", v.g_operational}, {"c_implementation", v.c_implementation}};
}

void from_json(const Json& j, EfficiencyInput& v) {
  expect_object(j);
  v.g_operational = get_number(j, "g_operational");
  v.c_implementation = get_number(j, "c_implementation");
}

void to_json(Json& j, const CostBenefitInput& v) {
  j = Json{{"total_savings", v.total_savings}, {"total_costs", v.total_costs}};
}

void from_json(const Json& j, CostBenefitInput& v) {
  expect_object(j);
  v.total_savings = get_number(j, "total_savings");
  v.total_costs = get_number(j, "total_costs");
}

void to_json(Json& j, const QuantInputs& v) {
  j = Json{{"rrv", optional_json(v.rrv)}, {"oev", optional_json(v.oev)}, {"cbv", optional_json(v.cbv)}};
}

void from_json(const Json& j, QuantInputs& v) {
  expect_object(j);
  v.rrv = get_optional<RiskReductionInput>(j, "rrv");
  v.oev = get_optional<EfficiencyInput>(j, "oev");
  v.cbv = get_optional<CostBenefitInput>(j, "cbv");
}

// ---------------------------------------------------------------------------
// Monte Carlo

void to_json(Json& j, const McConfig& v) {
  j = Json{{"c_incident", v.c_incident},     {"p_incident", v.p_incident},
           {"c_investment", v.c_investment}, {"r_investment", v.r_investment},
           {"n", v.n},                       {"seed", v.seed},
           {"semantics", v.semantics}};
}

void from_json(const Json& j, McConfig& v) {
  expect_object(j);
  v.c_incident = get_number(j, "c_incident");
  v.p_incident = get_number(j, "p_incident");
  v.c_investment = get_number(j, "c_investment");
  v.r_investment = get_number(j, "r_investment");
  v.n = get_u64(j, "n");
  v.seed = get_u64(j, "seed");
  v.semantics = has(j, "semantics") ? get<McSemantics>(j, "semantics") : McSemantics::PaperVerbatim;
}

McConfig merge_mc_config(const McConfig& base, const Json& patch) {
  McConfig out = base;
  if (patch.is_null()) return out;
  expect_object(patch);
  if (has(patch, "c_incident")) out.c_incident = get_number(patch, "c_incident");
  if (has(patch, "p_incident")) out.p_incident = get_number(patch, "p_incident");
  if (has(patch, "c_investment")) out.c_investment = get_number(patch, "c_investment");
  if (has(patch, "r_investment")) out.r_investment = get_number(patch, "r_investment");
  if (has(patch, "n")) out.n = get_u64(patch, "n");
  if (has(patch, "seed")) out.seed = get_u64(patch, "seed");
  if (has(patch, "semantics")) out.semantics = get<McSemantics>(patch, "semantics");
  return out;
}

void to_json(Json& j, const McResult& v) {
  Json pct = Json::object();
  for (const auto& [p, value] : v.percentiles) pct[percentile_key(p)] = value;
  j = Json{{"mean_bv", v.mean_bv},
           {"std_dev", v.std_dev},
           {"percentiles", pct},
           {"prevented_count", v.prevented_count},
           {"n", v.n},
           {"seed", v.seed},
           {"semantics", v.semantics},
           {"generator_id", v.generator_id}};
}

void from_json(const Json& j, McResult& v) {
  expect_object(j);
  v.mean_bv = get_number(j, "mean_bv");
  v.std_dev = get_number(j, "std_dev");
  const Json& pct = require(j, "percentiles");
  v.percentiles.clear();
  at_path("percentiles", [&] {
    expect_object(pct);
    for (int p : kReportedPercentiles) v.percentiles[p] = get_number(pct, percentile_key(p));
    return 0;
  });
  v.prevented_count = get_u64(j, "prevented_count");
  v.n = get_u64(j, "n");
  v.seed = get_u64(j, "seed");
  v.semantics = get<McSemantics>(j, "semantics");
  v.generator_id = get_string(j, "generator_id");
}

// ---------------------------------------------------------------------------
// Idea

void to_json(Json& j, const Idea& v) {
  j = Json{{"id", v.id},
           {"title", v.title},
           {"description", v.description},
           {"category", v.category},
           {"originator", v.originator},
           {"stage", v.stage},
           {"created_at", format_timestamp(v.created_at)},
           {"updated_at", format_timestamp(v.updated_at)},
           {"scorecards", v.scorecards},
           {"civps_threshold_override", optional_json(v.civps_threshold_override)},
           {"estimate", optional_json(v.estimate)},
           {"quant_inputs", optional_json(v.quant_inputs)},
           {"mc_config", optional_json(v.mc_config)},
           {"mc_result", optional_json(v.mc_result)},
           {"milestones", v.milestones}};
}

void from_json(const Json& j, Idea& v) {
  expect_object(j);
  v.id = get_string(j, "id");
  v.title = get_string(j, "title");
  v.description = has(j, "description") ? get_string(j, "description") : std::string{};
  v.category = get<InnovationCategory>(j, "category");
  v.originator = has(j, "originator") ? get_string(j, "originator") : std::string{};
  v.stage = get<StageState>(j, "stage");
  v.created_at = get_timestamp(j, "created_at");
  v.updated_at = get_timestamp(j, "updated_at");
  v.scorecards = has(j, "scorecards") ? get_array<Scorecard>(j, "scorecards") : std::vector<Scorecard>{};
  v.civps_threshold_override = get_optional<double>(j, "civps_threshold_override");
  v.estimate = get_optional<EffortImpactEstimate>(j, "estimate");
  v.quant_inputs = get_optional<QuantInputs>(j, "quant_inputs");
  v.mc_config = get_optional<McConfig>(j, "mc_config");
  v.mc_result = get_optional<McResult>(j, "mc_result");
  v.milestones = has(j, "milestones") ? get_array<std::string>(j, "milestones")
                                      : std::vector<std::string>{};
}

// ---------------------------------------------------------------------------
// Funnel events

void to_json(Json& j, const RoadmapEntry& v) {
  j = Json{{"estimate", v.estimate}, {"decision", v.decision}};
}

void from_json(const Json& j, RoadmapEntry& v) {
  expect_object(j);
  v.estimate = get<EffortImpactEstimate>(j, "estimate");
  v.decision = get<QuadrantDecision>(j, "decision");
}

void to_json(Json& j, const Note& v) { j = Json{{"note", v.text}}; }

void from_json(const Json& j, Note& v) {
  expect_object(j);
  v.text = get_string(j, "note");
}

namespace {

Json payload_json(const EventPayload& payload) {
  return std::visit(
      [](const auto& p) -> Json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, std::monostate>) {
          return nullptr;
        } else {
          return Json(p);
        }
      },
      payload);
}

// The payload is untagged on the wire; its type follows from the event kind.
EventPayload payload_from_json(FunnelEventKind kind, const Json& j) {
  if (j.is_null()) return std::monostate{};
  switch (kind) {
    case FunnelEventKind::Categorize: return j.get<InnovationCategory>();
    case FunnelEventKind::SubmitScores: return j.get<Scorecard>();
    case FunnelEventKind::GatePass:
    case FunnelEventKind::GateReturn: return j.get<GateOutcome>();
    case FunnelEventKind::Roadmap: return j.get<RoadmapEntry>();
    case FunnelEventKind::ApproveExecution:
    case FunnelEventKind::DeclareValueRealized:
    case FunnelEventKind::Resubmit:
    case FunnelEventKind::Reject: return j.get<Note>();
  }
  return std::monostate{};
}

}  // namespace

void to_json(Json& j, const FunnelEvent& v) {
  j = Json{{"kind", v.kind},
           {"actor", v.actor},
           {"at", format_timestamp(v.at)},
           {"payload", payload_json(v.payload)}};
}

void from_json(const Json& j, FunnelEvent& v) {
  expect_object(j);
  v.kind = get<FunnelEventKind>(j, "kind");
  v.actor = has(j, "actor") ? get_string(j, "actor") : std::string{};
  v.at = get_timestamp(j, "at");
  const Json null_payload = nullptr;
  const Json& payload = has(j, "payload") ? j.at("payload") : null_payload;
  v.payload = at_path("payload", [&] { return payload_from_json(v.kind, payload); });
}

// ---------------------------------------------------------------------------
// Portfolio analytics

void to_json(Json& j, const AllocationTarget& v) { j = by_category(v.fractions); }

void from_json(const Json& j, AllocationTarget& v) { v.fractions = category_numbers(j); }

void to_json(Json& j, const PortfolioReport& v) {
  Json counts = Json::object();
  for (auto c : kAllCategories) {
    counts[std::string(to_string(c))] = v.counts[static_cast<std::size_t>(c)];
  }
  j = Json{{"counts", counts},
           {"fractions", by_category(v.fractions)},
           {"target", v.target},
           {"deviations", by_category(v.deviations)},
           {"total_ideas", v.total_ideas},
           {"empty", v.empty}};
}

void from_json(const Json& j, PortfolioReport& v) {
  expect_object(j);
  const Json& counts = require(j, "counts");
  at_path("counts", [&] {
    expect_object(counts);
    for (auto c : kAllCategories) {
      v.counts[static_cast<std::size_t>(c)] = static_cast<std::size_t>(get_u64(counts, to_string(c)));
    }
    return 0;
  });
  v.fractions = at_path("fractions", [&] { return category_numbers(require(j, "fractions")); });
  v.target = get<AllocationTarget>(j, "target");
  v.deviations = at_path("deviations", [&] { return category_numbers(require(j, "deviations")); });
  v.total_ideas = static_cast<std::size_t>(get_u64(j, "total_ideas"));
  v.empty = get<bool>(j, "empty");
}

void to_json(Json& j, const Violation& v) { j = Json{{"path", v.path}, {"message", v.message}}; }

}  // namespace foresight
