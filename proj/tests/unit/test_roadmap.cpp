#include <catch_amalgamated.hpp>

#include <map>

#include "foresight/error.hpp"
#include "foresight/roadmap.hpp"

using namespace foresight;

namespace {

QuadrantDecision at(int effort, int impact, int et = 5, int it = 5) {
  return classify_quadrant(EffortImpactEstimate{effort, impact, {}, {}}, et, it);
}

CIVPSResult civps(double overall) {
  CIVPSResult r;
  r.overall = overall;
  r.per_dimension_mean.fill(overall);
  r.scorer_count = 1;
  return r;
}

bool contains(const std::vector<std::string>& v, std::string_view needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("corner fixtures", "[roadmap]") {
  CHECK(at(2, 2).quadrant == Quadrant::QuickWin);
  CHECK(at(8, 8).quadrant == Quadrant::RiskyVenture);
  CHECK(at(8, 2).quadrant == Quadrant::ReassessScope);
  CHECK(at(2, 8).quadrant == Quadrant::ConditionalGo);
}

TEST_CASE("threshold counts as low and the rationale says so", "[roadmap]") {
  const auto d = at(5, 6);
  CHECK(d.quadrant == Quadrant::ConditionalGo);
  CHECK(d.rationale.find("effort 5 <= 5") != std::string::npos);
  CHECK(d.rationale.find("impact 6 > 5") != std::string::npos);
  CHECK(d.rationale.find("at the threshold count as low") != std::string::npos);
}

TEST_CASE("invalid thresholds and scores", "[roadmap]") {
  for (int t : {0, 10}) {
    try {
      at(3, 3, t, 5);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Config);
    }
  }
  CHECK_THROWS_AS(at(0, 3), Error);
  CHECK_THROWS_AS(at(3, 11), Error);
}

TEST_CASE("property: the grid is partitioned", "[roadmap][property]") {
  for (int et = 1; et <= 9; ++et) {
    for (int it = 1; it <= 9; ++it) {
      std::map<Quadrant, int> sizes;
      for (int e = 1; e <= 10; ++e) {
        for (int i = 1; i <= 10; ++i) {
          const auto q = at(e, i, et, it).quadrant;
          ++sizes[q];
          const bool low_e = e <= et, low_i = i <= it;
          const Quadrant expected = low_e && low_i     ? Quadrant::QuickWin
                                    : !low_e && !low_i ? Quadrant::RiskyVenture
                                    : !low_e           ? Quadrant::ReassessScope
                                                       : Quadrant::ConditionalGo;
          CHECK(q == expected);
        }
      }
      CHECK(sizes[Quadrant::QuickWin] == et * it);
      CHECK(sizes[Quadrant::RiskyVenture] == (10 - et) * (10 - it));
      CHECK(sizes[Quadrant::ReassessScope] + sizes[Quadrant::ConditionalGo] ==
            100 - et * it - (10 - et) * (10 - it));
    }
  }
}

TEST_CASE("property: raising the effort threshold never raises effort class", "[roadmap][property]") {
  auto low_effort = [](Quadrant q) { return q == Quadrant::QuickWin || q == Quadrant::ConditionalGo; };
  for (int et = 1; et < 9; ++et) {
    for (int e = 1; e <= 10; ++e) {
      for (int i = 1; i <= 10; ++i) {
        if (low_effort(at(e, i, et).quadrant)) CHECK(low_effort(at(e, i, et + 1).quadrant));
      }
    }
  }
}

TEST_CASE("recommendation rules", "[roadmap]") {
  const auto quick = at(2, 2), risky = at(8, 8), reassess = at(8, 2), go = at(2, 8);

  auto r = recommend(risky, civps(9.0), InnovationCategory::Disruptive);
  CHECK(r.proceed == Proceed::Conditional);

  r = recommend(risky, civps(9.0), InnovationCategory::Sustaining);
  CHECK(r.proceed == Proceed::No);
  CHECK(contains(r.conditions, "disruptive or transformative"));

  r = recommend(risky, civps(7.0), InnovationCategory::Transformative);
  CHECK(r.proceed == Proceed::No);
  CHECK(contains(r.conditions, "top-tier threshold 8.00"));

  r = recommend(quick, civps(5.0), InnovationCategory::Incremental);
  CHECK(r.proceed == Proceed::Yes);
  CHECK(r.conditions == std::vector<std::string>{"moderate CIVPS suffices"});
  CHECK(recommend(quick, std::nullopt, InnovationCategory::Incremental).proceed == Proceed::Yes);

  r = recommend(reassess, civps(10.0), InnovationCategory::Transformative);
  CHECK(r.proceed == Proceed::No);
  CHECK(r.conditions == std::vector<std::string>{"scope reassessment prior execution"});

  CHECK(recommend(go, civps(8.0), InnovationCategory::Sustaining).proceed == Proceed::Conditional);
  CHECK(recommend(go, civps(7.99), InnovationCategory::Sustaining).proceed == Proceed::No);

  for (const auto& d : {risky, go}) {
    r = recommend(d, std::nullopt, InnovationCategory::Disruptive);
    CHECK(r.proceed == Proceed::No);
    CHECK(contains(r.conditions, "CIVPS required"));
  }
  CHECK(recommend(go, civps(6.5), InnovationCategory::Sustaining, 6.0).proceed == Proceed::Conditional);
}

TEST_CASE("property: RiskyVenture never proceeds unconditionally", "[roadmap][property]") {
  const auto risky = at(9, 9);
  for (auto category : kAllCategories) {
    for (int tenths = 10; tenths <= 100; ++tenths) {
      const double overall = tenths / 10.0;
      const auto r = recommend(risky, civps(overall), category);
      CHECK(r.proceed != Proceed::Yes);
      const bool allowed = (category == InnovationCategory::Disruptive ||
                            category == InnovationCategory::Transformative) &&
                           overall >= kDefaultTopTierThreshold;
      CHECK((r.proceed == Proceed::Conditional) == allowed);
    }
  }
}

TEST_CASE("quadrant points keep input order and skip unestimated ideas", "[roadmap]") {
  std::vector<Idea> ideas(3);
  ideas[0].id = "a";
  ideas[0].estimate = EffortImpactEstimate{2, 2, {}, {}};
  ideas[1].id = "b";
  ideas[2].id = "c";
  ideas[2].estimate = EffortImpactEstimate{9, 3, {}, {}};
  const auto points = quadrant_points(ideas);
  REQUIRE(points.size() == 2);
  CHECK(points[0].idea_id == "a");
  CHECK(points[0].decision.quadrant == Quadrant::QuickWin);
  CHECK(points[1].idea_id == "c");
  CHECK(points[1].effort == 9);
  CHECK(points[1].decision.quadrant == Quadrant::ReassessScope);
}
