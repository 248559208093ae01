#include <doctest.h>

#include <filesystem>
#include <string>

#include <json.hpp>

#include "oertopics/errors.hpp"
#include "oertopics/storage.hpp"
#include "oertopics/workspace.hpp"
#include "support/testutil.hpp"

using namespace oertopics;
using nlohmann::json;
namespace fs = std::filesystem;

TEST_CASE("read_text_file reports the missing path") {
  testutil::TempDir dir;
  try {
    read_text_file(dir / "absent.txt");
    FAIL("expected MissingFile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingFile);
    CHECK(std::string(e.what()).find("absent.txt") != std::string::npos);
  }
}

TEST_CASE("atomic_write_file round trips bytes and creates parents") {
  testutil::TempDir dir;
  const auto path = dir / "deep" / "nested" / "file.txt";
  atomic_write_file(path, "line one\nline two\n");
  CHECK(read_text_file(path) == "line one\nline two\n");

  atomic_write_file(path, "replaced");
  CHECK(read_text_file(path) == "replaced");

  // the temporary never survives a successful write
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
  size_t entries = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(path.parent_path())) {
    ++entries;
  }
  CHECK(entries == 1);

  // empty content is a valid artifact
  atomic_write_file(dir / "empty.bin", "");
  CHECK(read_text_file(dir / "empty.bin") == "");
}

TEST_CASE("artifacts carry their type and version tags") {
  testutil::TempDir dir;
  const auto path = dir / "thing.json";
  json body;
  body["payload"] = {1, 2, 3};
  body["name"] = "x";
  save_artifact(path, "demo-thing", body);

  const json raw = json::parse(read_text_file(path));
  CHECK(raw.at("format_version").get<int>() == kFormatVersion);
  CHECK(raw.at("type").get<std::string>() == "demo-thing");

  const json loaded = load_artifact(path, "demo-thing");
  CHECK(loaded.at("payload") == json({1, 2, 3}));
  CHECK(loaded.at("name") == "x");
}

TEST_CASE("load_artifact rejects type mismatches, future versions, and junk") {
  testutil::TempDir dir;
  const auto path = dir / "a.json";
  save_artifact(path, "alpha", json::object());
  try {
    load_artifact(path, "beta");
    FAIL("expected MalformedRecord");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedRecord);
    CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    CHECK(std::string(e.what()).find("beta") != std::string::npos);
  }

  json future;
  future["format_version"] = kFormatVersion + 1;
  future["type"] = "alpha";
  atomic_write_file(path, future.dump());
  try {
    load_artifact(path, "alpha");
    FAIL("expected FormatVersionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FormatVersionMismatch);
  }

  atomic_write_file(path, "{not json");
  CHECK_THROWS_AS(load_artifact(path, "alpha"), Error);

  atomic_write_file(path, "{\"type\": \"alpha\"}");  // missing format_version
  try {
    load_artifact(path, "alpha");
    FAIL("expected MalformedRecord");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedRecord);
  }

  atomic_write_file(path, "[1, 2]");  // not an object
  CHECK_THROWS_AS(load_artifact(path, "alpha"), Error);

  CHECK_THROWS_AS(load_artifact(dir / "missing.json", "alpha"), Error);
}

TEST_CASE("workspace open creates the documented layout") {
  testutil::TempDir dir;
  const auto root = dir / "ws";
  const Workspace ws = Workspace::open(root);

  CHECK(ws.root() == root);
  CHECK(fs::is_directory(root / "corpora"));
  CHECK(fs::is_directory(root / "models"));
  CHECK(fs::is_directory(root / "reports"));
  CHECK(fs::is_regular_file(root / "config.json"));

  // defaults land in the persisted config
  const WorkspaceConfig& config = ws.config();
  CHECK(config.seed == 42);
  CHECK_FALSE(config.alpha.has_value());
  CHECK(config.beta == 0.01);
  CHECK(config.iterations == 1000);
  CHECK(config.burn_in == 200);
  CHECK(config.min_df == 2);
  CHECK(config.max_df_ratio == 0.95);
  CHECK(config.window_size == 110);
  CHECK(config.top_n == 10);
  CHECK(config.threshold == 0.15);
  CHECK(config.infer_iterations == 100);
}

TEST_CASE("workspace reopen reads the persisted config back") {
  testutil::TempDir dir;
  const auto root = dir / "ws";
  Workspace::open(root);

  // edit the stored config the way a user would
  json body = load_artifact(root / "config.json", "workspace-config");
  body["seed"] = 7;
  body["threshold"] = 0.3;
  body["alpha"] = 12.5;
  save_artifact(root / "config.json", "workspace-config", body);

  const Workspace ws = Workspace::open(root);
  CHECK(ws.config().seed == 7);
  CHECK(ws.config().threshold == 0.3);
  REQUIRE(ws.config().alpha.has_value());
  CHECK(*ws.config().alpha == 12.5);

  // a null alpha selects the 50/k rule again
  body["alpha"] = nullptr;
  save_artifact(root / "config.json", "workspace-config", body);
  CHECK_FALSE(Workspace::open(root).config().alpha.has_value());

  // a broken stored config fails loudly rather than silently resetting
  body.erase("seed");
  save_artifact(root / "config.json", "workspace-config", body);
  CHECK_THROWS_AS(Workspace::open(root), Error);
}

TEST_CASE("workspace paths follow the per-skill naming scheme") {
  testutil::TempDir dir;
  const Workspace ws = Workspace::open(dir / "ws");
  const std::string skill = "text-mining";

  CHECK(ws.matrix_path(skill) == ws.root() / "corpora" / "text-mining.matrix.jsonl");
  CHECK(ws.tokens_path(skill) == ws.root() / "corpora" / "text-mining.tokens.jsonl");
  CHECK(ws.gold_path(skill) == ws.root() / "corpora" / "text-mining.gold.jsonl");
  CHECK(ws.model_path(skill) == ws.root() / "models" / "text-mining.model.json");
  CHECK(ws.sweep_report_path(skill) == ws.root() / "reports" / "text-mining.sweep.json");
  CHECK(ws.sweep_csv_path(skill) == ws.root() / "reports" / "text-mining.sweep.csv");
  CHECK(ws.predictions_path(skill) == ws.root() / "reports" / "text-mining.predictions.jsonl");
  CHECK(ws.eval_report_path(skill) == ws.root() / "reports" / "text-mining.eval.json");
}
