#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "foresight/error.hpp"
#include "foresight/monte_carlo.hpp"
#include "generators.hpp"

using namespace foresight;

namespace {

McConfig make(double c_inc, double p, double c_inv, double r, std::uint64_t n, std::uint64_t seed,
              McSemantics s = McSemantics::PaperVerbatim) {
  McConfig c;
  c.c_incident = c_inc;
  c.p_incident = p;
  c.c_investment = c_inv;
  c.r_investment = r;
  c.n = n;
  c.seed = seed;
  c.semantics = s;
  return c;
}

SimulationOptions threads(unsigned t) {
  SimulationOptions o;
  o.threads = t;
  return o;
}

// Reference generator written from the published generator_id, independent of the engine.
std::uint64_t ref_mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t reference_count(const McConfig& c) {
  const double p = c.semantics == McSemantics::PaperVerbatim ? c.p_incident * (1 - c.r_investment)
                                                             : c.p_incident * c.r_investment;
  std::uint64_t k = 0;
  for (std::uint64_t chunk = 0; chunk * 65536 < c.n; ++chunk) {
    std::mt19937_64 g(ref_mix(c.seed ^ ref_mix(chunk + 0x632be59bd9b4e019ULL)));
    const std::uint64_t len = std::min<std::uint64_t>(65536, c.n - chunk * 65536);
    for (std::uint64_t i = 0; i < len; ++i) {
      if (std::ldexp(static_cast<double>(g() >> 11), -53) < p) ++k;
    }
  }
  return k;
}

}  // namespace

TEST_CASE("closed form oracle", "[mc]") {
  CHECK(closed_form_expectation(make(1e6, 0.3, 1e5, 0.5, 1, 0)) == Catch::Approx(50'000).margin(1e-6));
  CHECK(closed_form_expectation(make(1e6, 0.3, 1e5, 0.5, 1, 0, McSemantics::PreventedEvent)) ==
        Catch::Approx(50'000).margin(1e-6));
  CHECK(closed_form_expectation(make(1e6, 0.3, 1e5, 1.0, 1, 0)) == -1e5);
  CHECK(closed_form_expectation(make(5e5, 0.1, 5e4, 0.8, 1, 0)) == Catch::Approx(-40'000).margin(1e-6));
  CHECK(closed_form_expectation(make(5e5, 0.1, 5e4, 0.8, 1, 0, McSemantics::PreventedEvent)) ==
        Catch::Approx(-10'000).margin(1e-6));
}

TEST_CASE("engine matches the reference generator", "[mc]") {
  foresight::testing::Rng rng(3);
  for (int i = 0; i < 12; ++i) {
    auto c = foresight::testing::random_mc_config(rng, 200'000);
    const auto r = simulate_bv(c, threads(3));
    CHECK(r.prevented_count == reference_count(c));
  }
}

TEST_CASE("degenerate probabilities are exact", "[mc]") {
  for (std::uint64_t n : {1ULL, 7ULL, 65536ULL, 65537ULL, 300'001ULL}) {
    for (std::uint64_t seed : {0ULL, 1ULL, 0xffffffffffffffffULL}) {
      const auto r = simulate_bv(make(1e6, 0.7, 123'456.78, 1.0, n, seed), threads(4));
      CHECK(r.mean_bv == -123'456.78);
      CHECK(r.prevented_count == 0);
      CHECK(r.std_dev == 0.0);
      for (auto s : {McSemantics::PaperVerbatim, McSemantics::PreventedEvent}) {
        const auto z = simulate_bv(make(1e6, 0.0, 5'000, 0.4, n, seed, s), threads(2));
        CHECK(z.mean_bv == -5'000.0);
        CHECK(z.prevented_count == 0);
      }
    }
  }
}

TEST_CASE("result fields and percentiles", "[mc]") {
  const auto c = make(1e6, 0.3, 1e5, 0.5, 100'000, 42);
  const auto r = simulate_bv(c);
  CHECK(r.n == c.n);
  CHECK(r.seed == 42);
  CHECK(r.generator_id == generator_id());
  CHECK(r.percentiles.size() == 5);
  const double p_hat = double(r.prevented_count) / double(c.n);
  CHECK_THAT(r.std_dev, Catch::Matchers::WithinRel(1e6 * std::sqrt(p_hat * (1 - p_hat)), 1e-12));
  // 15% prevented: p5..p75 sit on the loss, p95 on the gain.
  CHECK(r.percentiles.at(5) == -1e5);
  CHECK(r.percentiles.at(75) == -1e5);
  CHECK(r.percentiles.at(95) == 9e5);

  const auto bins = histogram(c, r);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].count + bins[1].count == c.n);
  CHECK(bins[1].count == r.prevented_count);
}

TEST_CASE("nearest-rank percentiles on tiny samples", "[mc]") {
  // n = 1: every percentile equals the single outcome.
  const auto all = simulate_bv(make(10, 1.0, 1, 0.0, 1, 0));
  for (auto [q, v] : all.percentiles) CHECK(v == 9.0);
  const auto none = simulate_bv(make(10, 1.0, 1, 1.0, 1, 0));
  for (auto [q, v] : none.percentiles) CHECK(v == -1.0);
}

TEST_CASE("trace agrees with the aggregate", "[mc]") {
  foresight::testing::Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto c = foresight::testing::random_mc_config(rng, 150'000);
    const auto trace = simulate_trace(c);
    const auto r = simulate_bv(c);
    REQUIRE(trace.size() == c.n);
    long double sum = 0;
    std::uint64_t gains = 0;
    for (double s : trace) {
      const bool gain = s == c.c_incident - c.c_investment;
      CHECK((gain || s == -c.c_investment));
      gains += gain ? 1 : 0;
      sum += s;
    }
    if (c.c_incident != 0) CHECK(gains == r.prevented_count);
    const double mean = static_cast<double>(sum / c.n);
    CHECK_THAT(r.mean_bv, Catch::Matchers::WithinAbs(mean, 1e-9 * (c.c_incident + c.c_investment)));
  }
}

TEST_CASE("trace over budget is a config error", "[mc]") {
  SimulationOptions small;
  small.trace_budget_bytes = 8 * 1000;
  CHECK_NOTHROW(simulate_trace(make(1, 0.5, 0, 0.5, 1000, 1), small));
  try {
    simulate_trace(make(1, 0.5, 0, 0.5, 1001, 1), small);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
  }
  // Aggregation streams and is not bounded by the trace budget.
  CHECK_NOTHROW(simulate_bv(make(1, 0.5, 0, 0.5, 100'000, 1), small));
}

TEST_CASE("invalid configs are rejected", "[mc]") {
  CHECK_THROWS_AS(simulate_bv(make(1, 0.5, 0, 0.5, 0, 1)), Error);
  CHECK_THROWS_AS(simulate_bv(make(1, 1.5, 0, 0.5, 10, 1)), Error);
  CHECK_THROWS_AS(closed_form_expectation(make(1, 0.5, 0, -0.5, 10, 1)), Error);
}

TEST_CASE("property: thread-count determinism", "[mc][property]") {
  foresight::testing::Rng rng(1234);
  for (int i = 0; i < 50; ++i) {
    const auto c = foresight::testing::random_mc_config(rng, 400'000);
    const auto one = simulate_bv(c, threads(1));
    CHECK(simulate_bv(c, threads(4)) == one);
    CHECK(simulate_bv(c, threads(8)) == one);
    CHECK(simulate_bv(c, threads(0)) == one);
  }
}

TEST_CASE("property: PreventedEvent expectation is monotone in r", "[mc][property]") {
  foresight::testing::Rng rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    auto c = foresight::testing::random_mc_config(rng, 10);
    c.semantics = McSemantics::PreventedEvent;
    const double r1 = u(rng), r2 = u(rng);
    auto lo = c, hi = c;
    lo.r_investment = std::min(r1, r2);
    hi.r_investment = std::max(r1, r2);
    CHECK(closed_form_expectation(hi) >= closed_form_expectation(lo));
  }
}

TEST_CASE("prevented fraction converges to p_eff", "[mc]") {
  for (auto s : {McSemantics::PaperVerbatim, McSemantics::PreventedEvent}) {
    const auto c = make(2e6, 0.05, 2.5e5, 0.2, 1'000'000, 99, s);
    const auto r = simulate_bv(c);
    const double p = effective_probability(c);
    const double bound = 4 * std::sqrt(p * (1 - p) / double(c.n));
    CHECK(std::abs(double(r.prevented_count) / double(c.n) - p) <= bound);
  }
}

TEST_CASE("derive_seed separates streams", "[mc]") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 5) == derive_seed(5, 5));
}

TEST_CASE("sweep", "[mc][sweep]") {
  SweepGrid single;
  single.c_incident = {1e6};
  single.p_incident = {0.3};
  single.c_investment = {1e5};
  single.r_investment = {0.5};
  single.n = 10'000;
  single.master_seed = 77;
  const auto one = sweep(single);
  REQUIRE(one.size() == 1);
  auto expected = one[0].config;
  CHECK(expected.seed == derive_seed(77, 0));
  CHECK(one[0].result == simulate_bv(expected));
  CHECK(one[0].closed_form_expectation == closed_form_expectation(expected));

  SweepGrid grid = single;
  grid.p_incident = {0.1, 0.2};
  grid.r_investment = {0.0, 1.0};
  const auto rows = sweep(grid);
  REQUIRE(rows.size() == 4);
  CHECK(sweep(grid) == rows);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].index == i);
    CHECK(rows[i].config.seed == derive_seed(77, i));
  }
  // Row-major: p_incident outer, r_investment inner.
  CHECK(rows[0].config.p_incident == 0.1);
  CHECK(rows[1].config.r_investment == 1.0);
  CHECK(rows[2].config.p_incident == 0.2);
  CHECK(rows[1].result.mean_bv == -1e5);
  CHECK(rows[3].result.mean_bv == -1e5);

  grid.semantics = {McSemantics::PaperVerbatim, McSemantics::PreventedEvent};
  CHECK(sweep_cardinality(grid) == 8);
  try {
    sweep(grid, 7);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    CHECK(std::string(e.what()).find("cap of 7") != std::string::npos);
  }
  grid.c_incident.clear();
  CHECK_THROWS_AS(sweep(grid), Error);
}
