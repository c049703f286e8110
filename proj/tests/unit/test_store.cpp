#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "foresight/error.hpp"
#include "foresight/funnel.hpp"
#include "foresight/store.hpp"
#include "generators.hpp"

using namespace foresight;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("foresight-store-" + std::to_string(std::random_device{}()) + "-" +
            std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

ErrorCode load_error(const fs::path& p) {
  try {
    load_portfolio(p);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected load to fail");
  return ErrorCode::Io;
}

PortfolioFile small_portfolio() {
  PortfolioFile p;
  Idea idea;
  idea.id = "idea-0001";
  idea.title = "Honeytoken mesh";
  idea.created_at = foresight::testing::at(0);
  FunnelEvent e;
  e.kind = FunnelEventKind::Categorize;
  e.actor = "forum";
  e.at = foresight::testing::at(60);
  e.payload = InnovationCategory::Disruptive;
  p.ideas.push_back(advance(idea, e));
  p.events[idea.id] = {e};
  return p;
}

}  // namespace

TEST_CASE("property: round-trip and byte stability", "[store][property]") {
  TempDir dir;
  foresight::testing::Rng rng(31337);
  for (int i = 0; i < 100; ++i) {
    const auto p = foresight::testing::random_portfolio(rng, 12);
    REQUIRE(validate_portfolio(p).empty());
    const auto path = dir.path / ("p" + std::to_string(i) + ".json");
    save_portfolio(p, path);
    const auto bytes = read(path);
    const auto loaded = load_portfolio(path);
    CHECK(loaded == p);
    CHECK(serialize_portfolio(loaded) == bytes);
    save_portfolio(loaded, path);
    CHECK(read(path) == bytes);
    CHECK(bytes.back() == '\n');
  }
}

TEST_CASE("canonical key order", "[store]") {
  const auto text = serialize_portfolio(PortfolioFile{});
  CHECK(text.find("\"config\"") < text.find("\"currency_label\""));
  CHECK(text.find("\"currency_label\"") < text.find("\"events\""));
  CHECK(text.find("\"ideas\"") < text.find("\"schema_version\""));
}

TEST_CASE("distinct load errors", "[store]") {
  TempDir dir;
  CHECK(load_error(dir.path / "absent.json") == ErrorCode::MissingFile);

  write(dir.path / "garbage.json", "{ not json");
  CHECK(load_error(dir.path / "garbage.json") == ErrorCode::Parse);

  Json doc = Json::parse(serialize_portfolio(PortfolioFile{}));
  doc["schema_version"] = 999;
  write(dir.path / "future.json", doc.dump());
  CHECK(load_error(dir.path / "future.json") == ErrorCode::UnknownVersion);

  doc["schema_version"] = 1;
  doc["ideas"] = "nope";
  write(dir.path / "shape.json", doc.dump());
  CHECK(load_error(dir.path / "shape.json") == ErrorCode::Validation);
}

TEST_CASE("event referencing an unknown idea is an invariant violation", "[store]") {
  auto p = small_portfolio();
  p.events["idea-0404"] = {};
  Json doc = p;
  try {
    parse_portfolio(doc.dump());
    FAIL("expected invariant error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Invariant);
    CHECK(std::string(e.what()).find("idea-0404") != std::string::npos);
    CHECK(e.path() == "/events/idea-0404");
  }
}

TEST_CASE("stage must equal the replayed history", "[store]") {
  auto p = small_portfolio();
  p.ideas[0].stage = StageState::ValueRealized;
  const auto v = validate_portfolio(p);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].path == "/ideas/0/stage");

  TempDir dir;
  try {
    save_portfolio(p, dir.path / "bad.json");
    FAIL("expected invariant error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Invariant);
  }
  CHECK_FALSE(fs::exists(dir.path / "bad.json"));
}

TEST_CASE("duplicate ids and invalid ideas are reported with paths", "[store]") {
  auto p = small_portfolio();
  p.ideas.push_back(p.ideas[0]);
  p.ideas[1].title = "";
  const auto v = validate_portfolio(p);
  bool dup = false, title = false;
  for (const auto& x : v) {
    dup |= x.path == "/ideas/1/id";
    title |= x.path == "/ideas/1/title";
  }
  CHECK(dup);
  CHECK(title);
}

TEST_CASE("atomicity under injected write failure", "[store]") {
  TempDir dir;
  const auto path = dir.path / "portfolio.json";
  foresight::testing::Rng rng(4);
  auto original = foresight::testing::random_portfolio(rng, 4);
  save_portfolio(original, path);
  const auto before = read(path);

  auto bigger = foresight::testing::random_portfolio(rng, 40);
  while (serialize_portfolio(bigger).size() < 3 * 4096) bigger = foresight::testing::random_portfolio(rng, 40);

  for (std::size_t fail_after : {std::size_t{0}, std::size_t{4096}, std::size_t{8192}}) {
    auto hook = [fail_after](std::size_t written) {
      if (written >= fail_after) throw Error(ErrorCode::Io, "injected failure");
    };
    CHECK_THROWS_AS(save_portfolio(bigger, path, hook), Error);
    CHECK(read(path) == before);
    CHECK_FALSE(fs::exists(path.string() + ".tmp"));
    CHECK(load_portfolio(path) == original);
  }

  JsonFileStore store(path, [](std::size_t) { throw Error(ErrorCode::Io, "disk full"); });
  CHECK_THROWS_AS(store.save(bigger), Error);
  CHECK(store.load() == original);

  JsonFileStore healthy(path);
  healthy.save(bigger);
  CHECK(healthy.load() == bigger);
}

TEST_CASE("history and ids", "[store]") {
  auto p = small_portfolio();
  CHECK(history(p, "idea-0001") == p.events["idea-0001"]);
  CHECK_THROWS_AS(history(p, "idea-0002"), Error);
  CHECK(next_idea_id(p) == "idea-0002");
  CHECK(next_idea_id(PortfolioFile{}) == "idea-0001");
  CHECK(p.get("idea-0001").id == "idea-0001");
  try {
    p.get("missing");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFound);
  }
}
