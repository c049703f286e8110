#include "foresight/store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace foresight {

using namespace jsonio;

namespace {

std::string pointer_escape(std::string_view token) {
  std::string out;
  for (char ch : token) {
    if (ch == '~') {
      out += "~0";
    } else if (ch == '/') {
      out += "~1";
    } else {
      out += ch;
    }
  }
  return out;
}

bool in_range(double v, double lo, double hi) { return std::isfinite(v) && v >= lo && v <= hi; }

std::vector<Violation> validate_config(const PortfolioConfig& c) {
  std::vector<Violation> out;
  if (!in_range(c.civps_threshold, kMinScore, kMaxScore))
    out.push_back({"/config/civps_threshold", "threshold must be in [1,10]"});
  if (c.effort_threshold < 1 || c.effort_threshold > 9)
    out.push_back({"/config/effort_threshold", "threshold must be in [1,9]"});
  if (c.impact_threshold < 1 || c.impact_threshold > 9)
    out.push_back({"/config/impact_threshold", "threshold must be in [1,9]"});
  if (!in_range(c.top_tier_threshold, kMinScore, kMaxScore))
    out.push_back({"/config/top_tier_threshold", "threshold must be in [1,10]"});
  if (c.scorer_quorum < 1) out.push_back({"/config/scorer_quorum", "quorum must be >= 1"});
  if (c.sweep_max_cells < 1) out.push_back({"/config/sweep_max_cells", "cap must be >= 1"});
  auto target = validate_target(c.allocation_target, "/config/allocation_target");
  out.insert(out.end(), target.begin(), target.end());
  auto mc = validate_mc_config(c.mc_defaults, "/config/mc_defaults");
  out.insert(out.end(), mc.begin(), mc.end());
  return out;
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

// ---------------------------------------------------------------------------

const Idea* PortfolioFile::find(std::string_view id) const {
  auto it = std::find_if(ideas.begin(), ideas.end(), [&](const Idea& i) { return i.id == id; });
  return it == ideas.end() ? nullptr : &*it;
}

Idea* PortfolioFile::find(std::string_view id) {
  auto it = std::find_if(ideas.begin(), ideas.end(), [&](const Idea& i) { return i.id == id; });
  return it == ideas.end() ? nullptr : &*it;
}

const Idea& PortfolioFile::get(std::string_view id) const {
  const Idea* idea = find(id);
  if (!idea) throw Error(ErrorCode::NotFound, "unknown idea '" + std::string(id) + "'");
  return *idea;
}

void to_json(Json& j, const PortfolioConfig& v) {
  j = Json{{"civps_threshold", v.civps_threshold},
           {"effort_threshold", v.effort_threshold},
           {"impact_threshold", v.impact_threshold},
           {"top_tier_threshold", v.top_tier_threshold},
           {"allocation_target", v.allocation_target},
           {"include_returned_in_allocation", v.include_returned_in_allocation},
           {"scorer_quorum", v.scorer_quorum},
           {"sweep_max_cells", v.sweep_max_cells},
           {"mc_defaults", v.mc_defaults}};
}

void from_json(const Json& j, PortfolioConfig& v) {
  expect_object(j);
  const PortfolioConfig defaults;
  v.civps_threshold = has(j, "civps_threshold") ? get_number(j, "civps_threshold") : defaults.civps_threshold;
  v.effort_threshold = has(j, "effort_threshold") ? get_int(j, "effort_threshold") : defaults.effort_threshold;
  v.impact_threshold = has(j, "impact_threshold") ? get_int(j, "impact_threshold") : defaults.impact_threshold;
  v.top_tier_threshold =
      has(j, "top_tier_threshold") ? get_number(j, "top_tier_threshold") : defaults.top_tier_threshold;
  v.allocation_target = has(j, "allocation_target") ? get<AllocationTarget>(j, "allocation_target")
                                                    : defaults.allocation_target;
  v.include_returned_in_allocation = has(j, "include_returned_in_allocation")
                                         ? get<bool>(j, "include_returned_in_allocation")
                                         : defaults.include_returned_in_allocation;
  v.scorer_quorum = has(j, "scorer_quorum") ? static_cast<std::size_t>(get_u64(j, "scorer_quorum"))
                                            : defaults.scorer_quorum;
  v.sweep_max_cells = has(j, "sweep_max_cells")
                          ? static_cast<std::size_t>(get_u64(j, "sweep_max_cells"))
                          : defaults.sweep_max_cells;
  v.mc_defaults = has(j, "mc_defaults") ? get<McConfig>(j, "mc_defaults") : defaults.mc_defaults;
}

void to_json(Json& j, const PortfolioFile& v) {
  Json events = Json::object();
  for (const auto& [id, list] : v.events) events[id] = list;
  j = Json{{"schema_version", v.schema_version},
           {"currency_label", v.currency_label},
           {"config", v.config},
           {"ideas", v.ideas},
           {"events", events}};
}

void from_json(const Json& j, PortfolioFile& v) {
  expect_object(j);
  v.schema_version = get_int(j, "schema_version");
  v.currency_label = has(j, "currency_label") ? get_string(j, "currency_label") : std::string("USD");
  v.config = has(j, "config") ? get<PortfolioConfig>(j, "config") : PortfolioConfig{};
  v.ideas = get_array<Idea>(j, "ideas");
  v.events.clear();
  if (has(j, "events")) {
    const Json& events = j.at("events");
    at_path("events", [&] {
      expect_object(events);
      for (const auto& [id, list] : events.items()) {
        v.events[id] = at_path(pointer_escape(id), [&] {
          if (!list.is_array()) throw Error(ErrorCode::Validation, "expected array");
          std::vector<FunnelEvent> out;
          for (std::size_t i = 0; i < list.size(); ++i) {
            out.push_back(at_path(std::to_string(i), [&] { return list[i].get<FunnelEvent>(); }));
          }
          return out;
        });
      }
      return 0;
    });
  }
}

// ---------------------------------------------------------------------------

std::vector<Violation> validate_portfolio(const PortfolioFile& portfolio) {
  std::vector<Violation> out;
  if (portfolio.schema_version != kSchemaVersion) {
    out.push_back({"/schema_version", "unsupported schema_version"});
  }
  auto config = validate_config(portfolio.config);
  out.insert(out.end(), config.begin(), config.end());

  std::set<std::string> ids;
  for (std::size_t i = 0; i < portfolio.ideas.size(); ++i) {
    const auto& idea = portfolio.ideas[i];
    const std::string base = "/ideas/" + std::to_string(i);
    for (auto v : validate_idea(idea)) out.push_back({base + v.path, v.message});
    if (!ids.insert(idea.id).second) out.push_back({base + "/id", "duplicate idea id '" + idea.id + "'"});
  }

  for (const auto& [id, events] : portfolio.events) {
    if (!ids.count(id)) {
      out.push_back({"/events/" + pointer_escape(id), "event references unknown idea '" + id + "'"});
    }
  }

  static const std::vector<FunnelEvent> no_events;
  for (std::size_t i = 0; i < portfolio.ideas.size(); ++i) {
    const auto& idea = portfolio.ideas[i];
    auto it = portfolio.events.find(idea.id);
    const auto& events = it == portfolio.events.end() ? no_events : it->second;
    try {
      const StageState replayed = replay_stage(events);
      if (replayed != idea.stage) {
        out.push_back({"/ideas/" + std::to_string(i) + "/stage",
                       "stage '" + std::string(to_string(idea.stage)) +
                           "' does not match replayed history '" +
                           std::string(to_string(replayed)) + "' for idea '" + idea.id + "'"});
      }
    } catch (const Error& e) {
      out.push_back({"/events/" + pointer_escape(idea.id), e.message()});
    }
  }
  return out;
}

const std::vector<FunnelEvent>& history(const PortfolioFile& portfolio, std::string_view idea_id) {
  portfolio.get(idea_id);
  static const std::vector<FunnelEvent> no_events;
  auto it = portfolio.events.find(std::string(idea_id));
  return it == portfolio.events.end() ? no_events : it->second;
}

std::string next_idea_id(const PortfolioFile& portfolio) {
  for (std::size_t n = portfolio.ideas.size() + 1;; ++n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "idea-%04zu", n);
    if (!portfolio.find(buf)) return buf;
  }
}

// ---------------------------------------------------------------------------

std::string serialize_portfolio(const PortfolioFile& portfolio) {
  return Json(portfolio).dump(2) + "\n";
}

void migrate_document(Json& document) {
  const int version = get_int(document, "schema_version");
  // Register upgrade steps here as version -> version + 1 when the schema changes.
  if (version != kSchemaVersion) {
    throw Error(ErrorCode::UnknownVersion,
                "unknown schema_version " + std::to_string(version) + " (supported: " +
                    std::to_string(kSchemaVersion) + ")",
                "/schema_version");
  }
}

PortfolioFile parse_portfolio(std::string_view text) {
  Json document;
  try {
    document = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("portfolio is not valid JSON: ") + e.what());
  }
  expect_object(document);
  migrate_document(document);

  PortfolioFile portfolio = document.get<PortfolioFile>();
  const auto violations = validate_portfolio(portfolio);
  if (!violations.empty()) {
    std::ostringstream message;
    message << "portfolio invariant violated: ";
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) message << "; ";
      message << violations[i].path << ": " << violations[i].message;
    }
    throw Error(ErrorCode::Invariant, message.str(), violations.front().path);
  }
  return portfolio;
}

// ---------------------------------------------------------------------------

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes,
                       const WriteFaultHook& hook) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw Error(ErrorCode::Io, "cannot open " + tmp.string() + ": " + errno_text());

  auto abort_write = [&] {
    ::close(fd);
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
  };

  constexpr std::size_t kBlock = 4096;
  std::size_t written = 0;
  try {
    while (written < bytes.size()) {
      const std::size_t len = std::min(kBlock, bytes.size() - written);
      const ssize_t rc = ::write(fd, bytes.data() + written, len);
      if (rc < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorCode::Io, "write failed for " + tmp.string() + ": " + errno_text());
      }
      written += static_cast<std::size_t>(rc);
      if (hook) hook(written);
    }
    if (::fsync(fd) != 0) throw Error(ErrorCode::Io, "fsync failed for " + tmp.string());
  } catch (...) {
    abort_write();
    throw;
  }
  ::close(fd);

  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string reason = errno_text();
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::Io, "rename onto " + path.string() + " failed: " + reason);
  }
}

PortfolioFile load_portfolio(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    throw Error(ErrorCode::MissingFile, "portfolio file not found: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_portfolio(buffer.str());
}

void save_portfolio(const PortfolioFile& portfolio, const std::filesystem::path& path,
                    const WriteFaultHook& hook) {
  throw_if_invalid(validate_portfolio(portfolio), ErrorCode::Invariant);
  write_file_atomic(path, serialize_portfolio(portfolio), hook);
}

JsonFileStore::JsonFileStore(std::filesystem::path path, WriteFaultHook hook)
    : path_(std::move(path)), hook_(std::move(hook)) {}

PortfolioFile JsonFileStore::load() const { return load_portfolio(path_); }

void JsonFileStore::save(const PortfolioFile& portfolio) { save_portfolio(portfolio, path_, hook_); }

}  // namespace foresight
