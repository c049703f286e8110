#include "foresight/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace foresight {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Top 53 bits of a 64-bit draw, scaled into [0,1).
double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::uint64_t chunk_count(std::uint64_t n) { return (n + kChunkSize - 1) / kChunkSize; }

std::uint64_t chunk_length(std::uint64_t n, std::uint64_t chunk) {
  const std::uint64_t begin = chunk * kChunkSize;
  return std::min(kChunkSize, n - begin);
}

std::mt19937_64 chunk_stream(std::uint64_t seed, std::uint64_t chunk) {
  return std::mt19937_64(derive_seed(seed, chunk));
}

std::uint64_t count_chunk(std::uint64_t seed, std::uint64_t chunk, std::uint64_t length,
                          double p_eff) {
  auto rng = chunk_stream(seed, chunk);
  std::uint64_t prevented = 0;
  for (std::uint64_t i = 0; i < length; ++i) {
    prevented += to_unit(rng()) < p_eff ? 1 : 0;
  }
  return prevented;
}

unsigned resolve_threads(unsigned requested, std::uint64_t chunks) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(t, chunks));
}

// Nearest-rank percentile over the sorted two-point sample: the first n - k
// values are the loss, the remaining k the gain.
double two_point_percentile(int q, std::uint64_t n, std::uint64_t k, double low, double high) {
  // ceil(q * n / 100) without overflow: n = 100a + b.
  const auto uq = static_cast<std::uint64_t>(q);
  std::uint64_t rank = (n / 100) * uq + ((n % 100) * uq + 99) / 100;
  rank = std::max<std::uint64_t>(rank, 1);
  return rank <= n - k ? low : high;
}

void check_config(const McConfig& config) {
  throw_if_invalid(validate_mc_config(config));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

const std::string& generator_id() {
  static const std::string id =
      "mt19937_64;stream=splitmix64(seed^splitmix64(chunk+0x632be59bd9b4e019));"
      "chunk=65536;u=top53/2^53";
  return id;
}

double effective_probability(const McConfig& config) {
  switch (config.semantics) {
    case McSemantics::PaperVerbatim: return config.p_incident * (1.0 - config.r_investment);
    case McSemantics::PreventedEvent: return config.p_incident * config.r_investment;
  }
  return 0.0;
}

double closed_form_expectation(const McConfig& config) {
  check_config(config);
  return config.c_incident * effective_probability(config) - config.c_investment;
}

McResult simulate_bv(const McConfig& config, const SimulationOptions& options) {
  check_config(config);
  const double p_eff = effective_probability(config);
  const std::uint64_t chunks = chunk_count(config.n);

  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> prevented{0};
  auto worker = [&] {
    for (std::uint64_t c = next_chunk.fetch_add(1); c < chunks; c = next_chunk.fetch_add(1)) {
      prevented.fetch_add(count_chunk(config.seed, c, chunk_length(config.n, c), p_eff),
                          std::memory_order_relaxed);
    }
  };

  const unsigned threads = resolve_threads(options.threads, chunks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  const std::uint64_t k = prevented.load();
  const double n = static_cast<double>(config.n);
  const double frac = static_cast<double>(k) / n;

  McResult result;
  result.n = config.n;
  result.seed = config.seed;
  result.semantics = config.semantics;
  result.generator_id = generator_id();
  result.prevented_count = k;
  result.mean_bv = config.c_incident * frac - config.c_investment;
  result.std_dev = config.c_incident * std::sqrt(frac * (1.0 - frac));

  const double low = -config.c_investment;
  const double high = config.c_incident - config.c_investment;
  for (int q : kReportedPercentiles) {
    result.percentiles[q] = two_point_percentile(q, config.n, k, low, high);
  }
  return result;
}

std::vector<double> simulate_trace(const McConfig& config, const SimulationOptions& options) {
  check_config(config);
  const std::uint64_t budget_iterations = options.trace_budget_bytes / sizeof(double);
  if (config.n > budget_iterations) {
    throw Error(ErrorCode::Config, "per-iteration trace of " + std::to_string(config.n) +
                                       " iterations exceeds the memory budget of " +
                                       std::to_string(options.trace_budget_bytes) + " bytes");
  }
  const double p_eff = effective_probability(config);
  const double low = -config.c_investment;
  const double high = config.c_incident - config.c_investment;
  std::vector<double> trace;
  trace.reserve(config.n);
  for (std::uint64_t c = 0; c < chunk_count(config.n); ++c) {
    auto rng = chunk_stream(config.seed, c);
    const std::uint64_t length = chunk_length(config.n, c);
    for (std::uint64_t i = 0; i < length; ++i) {
      trace.push_back(to_unit(rng()) < p_eff ? high : low);
    }
  }
  return trace;
}

std::vector<HistogramBin> histogram(const McConfig& config, const McResult& result) {
  return {{-config.c_investment, result.n - result.prevented_count},
          {config.c_incident - config.c_investment, result.prevented_count}};
}

// ---------------------------------------------------------------------------

std::size_t sweep_cardinality(const SweepGrid& grid) {
  std::size_t total = 1;
  for (std::size_t len : {grid.c_incident.size(), grid.p_incident.size(), grid.c_investment.size(),
                          grid.r_investment.size(), grid.semantics.size()}) {
    if (len == 0) return 0;
    if (total > std::numeric_limits<std::size_t>::max() / len) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= len;
  }
  return total;
}

std::vector<SweepRow> sweep(const SweepGrid& grid, std::size_t max_cells,
                            const SimulationOptions& options) {
  const std::size_t cells = sweep_cardinality(grid);
  if (cells == 0) throw Error(ErrorCode::Config, "sweep grid is empty");
  if (cells > max_cells) {
    throw Error(ErrorCode::Config, "sweep grid has " + std::to_string(cells) +
                                       " cells, above the cap of " + std::to_string(max_cells));
  }

  std::vector<McConfig> configs;
  configs.reserve(cells);
  for (double ci : grid.c_incident)
    for (double pi : grid.p_incident)
      for (double cv : grid.c_investment)
        for (double rv : grid.r_investment)
          for (McSemantics s : grid.semantics) {
            McConfig c;
            c.c_incident = ci;
            c.p_incident = pi;
            c.c_investment = cv;
            c.r_investment = rv;
            c.n = grid.n;
            c.semantics = s;
            c.seed = derive_seed(grid.master_seed, configs.size());
            configs.push_back(c);
          }

  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto violations = validate_mc_config(configs[i], "/cells/" + std::to_string(i));
    throw_if_invalid(violations);
  }

  std::vector<SweepRow> rows;
  rows.reserve(cells);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    SweepRow row;
    row.index = i;
    row.config = configs[i];
    row.result = simulate_bv(configs[i], options);
    row.closed_form_expectation = closed_form_expectation(configs[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace foresight
