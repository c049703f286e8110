#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "foresight/civps.hpp"
#include "foresight/monte_carlo.hpp"
#include "foresight/roadmap.hpp"

namespace foresight::testing {

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

InnovationCategory random_category(Rng& rng) {
  return kAllCategories[static_cast<std::size_t>(uniform_int(rng, 0, 3))];
}

const std::vector<std::string> kTitleParts{"Zero-trust", "gateway", "SOC", "copilot",
                                           "\"quoted\"", "Ünïcode", "tab\there", "phishing",
                                           "deception", "grid", "line\nbreak", "back\\slash"};

std::string random_text(Rng& rng, int words) {
  std::string out;
  for (int i = 0; i < words; ++i) {
    if (i) out += ' ';
    out += kTitleParts[static_cast<std::size_t>(uniform_int(rng, 0, int(kTitleParts.size()) - 1))];
  }
  return out;
}

}  // namespace

Timestamp at(int seconds) {
  using namespace std::chrono;
  return sys_days{year{2024} / January / 1} + std::chrono::seconds{seconds};
}

Scorecard random_scorecard(Rng& rng, const std::string& scorer_id) {
  Scorecard card;
  card.scorer_id = scorer_id;
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    card.score(static_cast<Dimension>(d)) = uniform_int(rng, kMinScore, kMaxScore);
  }
  card.submitted_at = at(uniform_int(rng, 0, 1'000'000));
  return card;
}

std::vector<Scorecard> random_scorecards(Rng& rng, std::size_t count) {
  std::vector<Scorecard> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_scorecard(rng, "member-" + std::to_string(i)));
  }
  return out;
}

McConfig random_mc_config(Rng& rng, std::uint64_t max_n) {
  McConfig c;
  c.c_incident = std::round(uniform_real(rng, 0.0, 5e6));
  c.p_incident = uniform_real(rng, 0.0, 1.0);
  c.c_investment = std::round(uniform_real(rng, 0.0, 1e6));
  c.r_investment = uniform_real(rng, 0.0, 1.0);
  c.n = std::uniform_int_distribution<std::uint64_t>(1, max_n)(rng);
  c.seed = rng();
  c.semantics = coin(rng, 0.5) ? McSemantics::PaperVerbatim : McSemantics::PreventedEvent;
  return c;
}

QuantInputs random_quant_inputs(Rng& rng) {
  QuantInputs q;
  if (coin(rng, 0.7)) {
    q.rrv = RiskReductionInput{uniform_real(rng, 0, 1e7), uniform_real(rng, 0, 1e7),
                                          uniform_real(rng, 0, 1)};
  }
  if (coin(rng, 0.7)) {
    q.oev = EfficiencyInput{uniform_real(rng, 0, 1e6), uniform_real(rng, 1, 1e6)};
  }
  if (coin(rng, 0.7)) {
    q.cbv = CostBenefitInput{uniform_real(rng, 0, 1e6), uniform_real(rng, 1, 1e6)};
  }
  return q;
}

Idea genesis_of(const Idea& idea) {
  Idea g = idea;
  g.stage = StageState::Draft;
  g.updated_at = g.created_at;
  g.scorecards.clear();
  g.estimate.reset();
  g.milestones.clear();
  return g;
}

GeneratedHistory random_history(Rng& rng, const std::string& id, const FunnelPolicy& policy,
                                double civps_threshold, std::size_t max_events) {
  GeneratedHistory out;
  Idea& g = out.genesis;
  g.id = id;
  g.title = random_text(rng, uniform_int(rng, 1, 4));
  g.description = coin(rng, 0.5) ? random_text(rng, 6) : "";
  g.originator = coin(rng, 0.5) ? "originator-" + std::to_string(uniform_int(rng, 1, 9)) : "";
  g.category = random_category(rng);
  g.created_at = at(uniform_int(rng, 0, 100'000));
  g.updated_at = g.created_at;
  if (coin(rng, 0.3)) g.civps_threshold_override = uniform_int(rng, 2, 18) / 2.0;

  Idea idea = g;
  int clock = 0;
  const std::size_t length = static_cast<std::size_t>(uniform_int(rng, 0, int(max_events)));
  for (std::size_t step = 0; step < length && !is_terminal(idea.stage); ++step) {
    FunnelEvent e;
    e.actor = "actor-" + std::to_string(uniform_int(rng, 1, 5));
    clock += uniform_int(rng, 0, 3600);
    e.at = idea.created_at + std::chrono::seconds{clock};

    if (coin(rng, 0.04)) {
      e.kind = FunnelEventKind::Reject;
      if (coin(rng, 0.5)) e.payload = Note{"stopped by forum"};
    } else {
      switch (idea.stage) {
        case StageState::Draft:
          e.kind = FunnelEventKind::Categorize;
          e.payload = random_category(rng);
          break;
        case StageState::Categorized: {
          const bool gate = idea.scorecards.size() >= policy.scorer_quorum && coin(rng, 0.4);
          if (gate) {
            const double threshold = idea.civps_threshold_override.value_or(civps_threshold);
            const auto outcome = gate_decision(compute_civps(idea.scorecards), threshold);
            e.kind = outcome.decision == GateDecision::Pass ? FunnelEventKind::GatePass
                                                            : FunnelEventKind::GateReturn;
            e.payload = outcome;
          } else {
            e.kind = FunnelEventKind::SubmitScores;
            e.payload = random_scorecard(rng, "member-" + std::to_string(uniform_int(rng, 1, 4)));
          }
          break;
        }
        case StageState::Scored: {
          e.kind = FunnelEventKind::Roadmap;
          EffortImpactEstimate est{uniform_int(rng, 1, 10), uniform_int(rng, 1, 10),
                                   coin(rng, 0.5) ? "team of two" : "", ""};
          e.payload = RoadmapEntry{est, classify_quadrant(est, policy.quadrant.effort,
                                                          policy.quadrant.impact)};
          break;
        }
        case StageState::Roadmapped:
          e.kind = FunnelEventKind::ApproveExecution;
          if (coin(rng, 0.5)) e.payload = Note{"PoC scheduled"};
          break;
        case StageState::InExecution:
          e.kind = FunnelEventKind::DeclareValueRealized;
          if (coin(rng, 0.5)) e.payload = Note{"MVP live"};
          break;
        case StageState::ReturnedForRefinement:
          e.kind = FunnelEventKind::Resubmit;
          break;
        case StageState::ValueRealized:
        case StageState::Rejected:
          break;
      }
    }
    idea = advance(idea, e, policy);
    out.events.push_back(e);
  }
  out.final_state = idea;
  return out;
}

PortfolioFile random_portfolio(Rng& rng, std::size_t max_ideas) {
  PortfolioFile p;
  p.currency_label = coin(rng, 0.5) ? "USD" : "EUR";
  auto& c = p.config;
  c.civps_threshold = uniform_int(rng, 2, 20) / 2.0;
  c.effort_threshold = uniform_int(rng, 1, 9);
  c.impact_threshold = uniform_int(rng, 1, 9);
  c.top_tier_threshold = uniform_int(rng, 2, 20) / 2.0;
  c.include_returned_in_allocation = coin(rng, 0.5);
  c.scorer_quorum = static_cast<std::size_t>(uniform_int(rng, 1, 3));
  c.sweep_max_cells = static_cast<std::size_t>(uniform_int(rng, 1, 20000));
  c.mc_defaults = random_mc_config(rng, 100000);
  if (coin(rng, 0.3)) c.allocation_target.fractions = {0.25, 0.25, 0.25, 0.25};

  const std::size_t count = static_cast<std::size_t>(uniform_int(rng, 0, int(max_ideas)));
  for (std::size_t i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "idea-%04zu", i + 1);
    auto h = random_history(rng, id, c.funnel_policy(), c.civps_threshold, 14);
    Idea idea = h.final_state;
    if (coin(rng, 0.4)) idea.quant_inputs = random_quant_inputs(rng);
    if (coin(rng, 0.3)) {
      idea.mc_config = random_mc_config(rng, 2000);
      if (coin(rng, 0.7)) {
        SimulationOptions single;
        single.threads = 1;
        idea.mc_result = simulate_bv(*idea.mc_config, single);
      }
    }
    if (!h.events.empty()) p.events[idea.id] = h.events;
    p.ideas.push_back(std::move(idea));
  }
  std::shuffle(p.ideas.begin(), p.ideas.end(), rng);
  return p;
}

}  // namespace foresight::testing
