/**
 * @file monte_carlo.hpp
 * @brief Business-value simulation under incident uncertainty.
 *
 * Each iteration draws u ~ U[0,1) and sets the prevented indicator when u is
 * below the effective probability (see McSemantics). Savings per iteration are
 * c_incident * prevented - c_investment, and BV is their mean.
 *
 * Iterations are grouped into fixed-size chunks. Chunk k draws from its own
 * mt19937_64 stream seeded from (seed, k) through SplitMix64, and chunks only
 * contribute integer prevented counts, so the result is bitwise identical for
 * any thread count.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "foresight/domain.hpp"

namespace foresight {

inline constexpr std::uint64_t kChunkSize = 65536;
inline constexpr std::size_t kDefaultTraceBudgetBytes = std::size_t{256} << 20;

struct SimulationOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// A per-iteration trace costs 8 bytes per iteration and must fit here.
  std::size_t trace_budget_bytes = kDefaultTraceBudgetBytes;
};

/// Names the PRNG and stream-derivation scheme used by simulate_bv.
const std::string& generator_id();

/// Effective per-iteration prevention probability for the configured semantics.
double effective_probability(const McConfig& config);

/// c_incident * p_eff - c_investment. Ignores n and seed.
double closed_form_expectation(const McConfig& config);

McResult simulate_bv(const McConfig& config, const SimulationOptions& options = {});

/// Per-iteration savings in iteration order. Same draws as simulate_bv.
/// Throws Error(Config) when n * 8 bytes exceeds options.trace_budget_bytes.
std::vector<double> simulate_trace(const McConfig& config, const SimulationOptions& options = {});

struct HistogramBin {
  double savings = 0.0;
  std::uint64_t count = 0;
};

/// The savings distribution is two-point: {-c_investment, c_incident - c_investment}.
std::vector<HistogramBin> histogram(const McConfig& config, const McResult& result);

/// Deterministic 64-bit mix of (seed, index); used for chunk streams and sweep cells.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// ---------------------------------------------------------------------------
// Parameter sweeps

inline constexpr std::size_t kDefaultSweepCap = 10000;

struct SweepGrid {
  std::vector<double> c_incident;
  std::vector<double> p_incident;
  std::vector<double> c_investment;
  std::vector<double> r_investment;
  std::vector<McSemantics> semantics{McSemantics::PaperVerbatim};
  std::uint64_t n = 10000;
  std::uint64_t master_seed = 0;

  bool operator==(const SweepGrid&) const = default;
};

struct SweepRow {
  std::size_t index = 0;
  McConfig config;
  McResult result;
  double closed_form_expectation = 0.0;

  bool operator==(const SweepRow&) const = default;
};

std::size_t sweep_cardinality(const SweepGrid& grid);

/// One row per parameter tuple, in row-major order (c_incident outermost,
/// semantics innermost). Cell i is simulated with seed derive_seed(master_seed, i).
/// Throws Error(Config) when the grid is empty or exceeds `max_cells`.
std::vector<SweepRow> sweep(const SweepGrid& grid, std::size_t max_cells = kDefaultSweepCap,
                            const SimulationOptions& options = {});

}  // namespace foresight
