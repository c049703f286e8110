/**
 * @file store.hpp
 * @brief Single-file JSON portfolio store with atomic writes.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "foresight/civps.hpp"
#include "foresight/domain.hpp"
#include "foresight/funnel.hpp"
#include "foresight/monte_carlo.hpp"
#include "foresight/portfolio.hpp"
#include "foresight/roadmap.hpp"
#include "foresight/serialization.hpp"

namespace foresight {

inline constexpr int kSchemaVersion = 1;

struct PortfolioConfig {
  double civps_threshold = kDefaultCivpsThreshold;
  int effort_threshold = kDefaultEffortThreshold;
  int impact_threshold = kDefaultImpactThreshold;
  double top_tier_threshold = kDefaultTopTierThreshold;
  AllocationTarget allocation_target{};
  bool include_returned_in_allocation = true;
  std::size_t scorer_quorum = 1;
  std::size_t sweep_max_cells = kDefaultSweepCap;
  McConfig mc_defaults{};

  FunnelPolicy funnel_policy() const {
    return {scorer_quorum, QuadrantThresholds{effort_threshold, impact_threshold}};
  }
  bool operator==(const PortfolioConfig&) const = default;
};

struct PortfolioFile {
  int schema_version = kSchemaVersion;
  std::string currency_label = "USD";
  PortfolioConfig config;
  std::vector<Idea> ideas;
  std::map<std::string, std::vector<FunnelEvent>> events;

  const Idea* find(std::string_view id) const;
  Idea* find(std::string_view id);
  /// Throws Error(NotFound).
  const Idea& get(std::string_view id) const;

  bool operator==(const PortfolioFile&) const = default;
};

void to_json(Json& j, const PortfolioConfig& v);
void from_json(const Json& j, PortfolioConfig& v);
void to_json(Json& j, const PortfolioFile& v);
void from_json(const Json& j, PortfolioFile& v);

/// Config checks (thresholds, target, quorum) plus every idea, unique ids,
/// events referencing known ideas, and stage == replay of its history.
std::vector<Violation> validate_portfolio(const PortfolioFile& portfolio);

/// Ordered events for one idea. Throws Error(NotFound) for an unknown idea.
const std::vector<FunnelEvent>& history(const PortfolioFile& portfolio, std::string_view idea_id);

/// Smallest "idea-NNNN" id not yet used.
std::string next_idea_id(const PortfolioFile& portfolio);

/// Canonical bytes: keys sorted, two-space indent, trailing newline.
std::string serialize_portfolio(const PortfolioFile& portfolio);

/// Parses and validates. Distinct errors: Parse, UnknownVersion, Validation
/// (schema/type problems), Invariant (file-level invariant violations).
PortfolioFile parse_portfolio(std::string_view text);

/// Upgrades an older document in place to kSchemaVersion. Version 1 is the
/// first schema; other versions are rejected.
void migrate_document(Json& document);

/// Called while writing the temporary file with the number of bytes written
/// so far. Throwing from it aborts the save; the target file is untouched.
using WriteFaultHook = std::function<void(std::size_t bytes_written)>;

/// Writes `bytes` to `<path>.tmp`, fsyncs, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes,
                       const WriteFaultHook& hook = {});

/// Throws Error(MissingFile) when absent, Error(Io) when unreadable.
PortfolioFile load_portfolio(const std::filesystem::path& path);

/// Validates, serializes, and writes atomically. Error(Invariant) if invalid.
void save_portfolio(const PortfolioFile& portfolio, const std::filesystem::path& path,
                    const WriteFaultHook& hook = {});

/// Storage seam; the service and CLI only talk to this interface.
class PortfolioStore {
 public:
  virtual ~PortfolioStore() = default;
  virtual PortfolioFile load() const = 0;
  virtual void save(const PortfolioFile& portfolio) = 0;
};

class JsonFileStore final : public PortfolioStore {
 public:
  explicit JsonFileStore(std::filesystem::path path, WriteFaultHook hook = {});

  PortfolioFile load() const override;
  void save(const PortfolioFile& portfolio) override;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  WriteFaultHook hook_;
};

}  // namespace foresight
