#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "foresight/civps.hpp"
#include "foresight/error.hpp"
#include "generators.hpp"

using namespace foresight;
using foresight::testing::Rng;

namespace {

Scorecard uniform_card(const std::string& id, int v) { return {id, v, v, v, v, v, v, {}}; }

// Independent oracle: the grand mean of every score, summed in long double.
long double grand_mean(const std::vector<Scorecard>& cards) {
  long double total = 0;
  for (const auto& c : cards) {
    for (int s : c.scores()) total += s;
  }
  return total / (6.0L * static_cast<long double>(cards.size()));
}

}  // namespace

TEST_CASE("exact fixtures", "[civps]") {
  std::vector<Scorecard> one{uniform_card("a", 10)};
  CHECK(compute_civps(one).overall == 10.0);

  std::vector<Scorecard> two{uniform_card("a", 4), uniform_card("b", 8)};
  CHECK(compute_civps(two).overall == 6.0);

  std::vector<Scorecard> mixed{{"a", 8, 6, 7, 9, 5, 7, {}}};
  const auto r = compute_civps(mixed);
  CHECK(r.overall == 7.0);
  CHECK(r.per_dimension_mean == std::array<double, 6>{8, 6, 7, 9, 5, 7});
  CHECK(r.scorer_count == 1);
}

TEST_CASE("per-dimension means average across scorers", "[civps]") {
  std::vector<Scorecard> cards{{"a", 1, 2, 3, 4, 5, 6, {}}, {"b", 2, 2, 4, 4, 6, 10, {}}};
  const auto r = compute_civps(cards);
  CHECK(r.per_dimension_mean == std::array<double, 6>{1.5, 2, 3.5, 4, 5.5, 8});
  CHECK(r.overall == Catch::Approx(24.5 / 6).epsilon(0));
}

TEST_CASE("errors", "[civps]") {
  std::vector<Scorecard> none;
  try {
    compute_civps(none);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
    CHECK(std::string(e.what()) == "no scorecards");
  }
  std::vector<Scorecard> dup{uniform_card("a", 4), uniform_card("a", 5)};
  CHECK_THROWS_AS(compute_civps(dup), Error);
  std::vector<Scorecard> bad{uniform_card("a", 11)};
  CHECK_THROWS_AS(compute_civps(bad), Error);
}

TEST_CASE("gate boundary counts as pass", "[civps]") {
  CIVPSResult r;
  r.overall = 7.0;
  CHECK(gate_decision(r, 6.0).decision == GateDecision::Pass);
  r.overall = 6.0;
  CHECK(gate_decision(r, 6.0).decision == GateDecision::Pass);
  r.overall = 5.9;
  const auto out = gate_decision(r, 6.0);
  CHECK(out.decision == GateDecision::ReturnForRefinement);
  CHECK(out.threshold_used == 6.0);

  for (double bad : {0.99, 10.01, std::numeric_limits<double>::quiet_NaN()}) {
    try {
      gate_decision(r, bad);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Config);
    }
  }
}

TEST_CASE("weights", "[civps]") {
  std::vector<Scorecard> cards{{"a", 10, 1, 1, 1, 1, 1, {}}};
  DimensionWeights w;
  w.values = {1, 0, 0, 0, 0, 0};
  CHECK(compute_civps(cards, w).overall == 10.0);
  CHECK(compute_civps(cards, DimensionWeights::uniform()).overall == Catch::Approx(15.0 / 6));
  w.values = {0.5, 0.5, 0.5, 0, 0, 0};
  CHECK_THROWS_AS(compute_civps(cards, w), Error);
}

TEST_CASE("effective threshold prefers the idea override", "[civps]") {
  Idea idea;
  CHECK(effective_threshold(idea, 6.0) == 6.0);
  idea.civps_threshold_override = 7.5;
  CHECK(effective_threshold(idea, 6.0) == 7.5);
}

TEST_CASE("property: aggregation invariants over random scorecard sets", "[civps][property]") {
  Rng rng(20240101);
  std::uniform_int_distribution<std::size_t> count(1, 12);
  std::uniform_int_distribution<int> dim(0, 5);
  std::uniform_int_distribution<int> value(kMinScore, kMaxScore);

  for (int trial = 0; trial < 2000; ++trial) {
    auto cards = foresight::testing::random_scorecards(rng, count(rng));
    const auto base = compute_civps(cards);

    // Two-step mean equals the grand mean, and the overall equals the mean of the dimension means.
    CHECK(std::abs(static_cast<long double>(base.overall) - grand_mean(cards)) <= 1e-12L);
    const double mean_of_means =
        std::accumulate(base.per_dimension_mean.begin(), base.per_dimension_mean.end(), 0.0) / 6.0;
    CHECK(std::abs(base.overall - mean_of_means) <= 1e-12);

    // Permutation invariance, bitwise.
    auto shuffled = cards;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(compute_civps(shuffled) == base);

    // Bounds.
    int lo = kMaxScore, hi = kMinScore;
    for (const auto& c : cards) {
      const auto s = c.scores();
      lo = std::min(lo, *std::min_element(s.begin(), s.end()));
      hi = std::max(hi, *std::max_element(s.begin(), s.end()));
    }
    CHECK(base.overall >= lo);
    CHECK(base.overall <= hi);
    for (double m : base.per_dimension_mean) {
      CHECK(m >= 1.0);
      CHECK(m <= 10.0);
    }

    // Monotonicity in a single score.
    auto bumped = cards;
    auto& target = bumped[std::uniform_int_distribution<std::size_t>(0, cards.size() - 1)(rng)];
    int& s = target.score(static_cast<Dimension>(dim(rng)));
    if (s < kMaxScore) {
      s = std::uniform_int_distribution<int>(s + 1, kMaxScore)(rng);
      CHECK(compute_civps(bumped).overall >= base.overall);
    }

    // Equal-value identity: every scorer gives all dimensions one value.
    std::vector<Scorecard> flat;
    int sum = 0;
    for (std::size_t i = 0; i < cards.size(); ++i) {
      const int v = value(rng);
      flat.push_back(uniform_card("m" + std::to_string(i), v));
      sum += v;
    }
    CHECK(compute_civps(flat).overall == static_cast<double>(sum) / static_cast<double>(flat.size()));
  }
}
