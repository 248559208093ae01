#include "oertopics/workspace.hpp"

#include <json.hpp>

#include "oertopics/errors.hpp"
#include "oertopics/storage.hpp"

namespace oertopics {

using nlohmann::json;

namespace {

json config_to_json(const WorkspaceConfig& config) {
  json body;
  body["seed"] = config.seed;
  if (config.alpha) {
    body["alpha"] = *config.alpha;
  } else {
    body["alpha"] = nullptr;  // null selects the 50/k rule
  }
  body["beta"] = config.beta;
  body["iterations"] = config.iterations;
  body["burn_in"] = config.burn_in;
  body["min_df"] = config.min_df;
  body["max_df_ratio"] = config.max_df_ratio;
  body["window_size"] = config.window_size;
  body["gamma"] = config.gamma;
  body["epsilon"] = config.epsilon;
  body["top_n"] = config.top_n;
  body["threshold"] = config.threshold;
  body["infer_iterations"] = config.infer_iterations;
  return body;
}

WorkspaceConfig config_from_json(const json& body) {
  WorkspaceConfig config;
  config.seed = body.at("seed").get<uint64_t>();
  if (!body.at("alpha").is_null()) config.alpha = body.at("alpha").get<double>();
  config.beta = body.at("beta").get<double>();
  config.iterations = body.at("iterations").get<uint32_t>();
  config.burn_in = body.at("burn_in").get<uint32_t>();
  config.min_df = body.at("min_df").get<uint32_t>();
  config.max_df_ratio = body.at("max_df_ratio").get<double>();
  config.window_size = body.at("window_size").get<uint32_t>();
  config.gamma = body.at("gamma").get<double>();
  config.epsilon = body.at("epsilon").get<double>();
  config.top_n = body.at("top_n").get<uint32_t>();
  config.threshold = body.at("threshold").get<double>();
  config.infer_iterations = body.at("infer_iterations").get<uint32_t>();
  return config;
}

}  // namespace

Workspace Workspace::open(const std::filesystem::path& root) {
  std::error_code ec;
  for (const char* sub : {"corpora", "models", "reports"}) {
    std::filesystem::create_directories(root / sub, ec);
    if (ec) {
      fail(ErrorCode::IoError, "cannot create " + (root / sub).string() + ": " + ec.message());
    }
  }

  Workspace ws(root);
  const auto config_path = root / "config.json";
  if (std::filesystem::exists(config_path)) {
    const json body = load_artifact(config_path, "workspace-config");
    try {
      ws.config_ = config_from_json(body);
    } catch (const json::exception& e) {
      fail(ErrorCode::MalformedRecord, config_path.string() + ": " + e.what());
    }
  } else {
    save_artifact(config_path, "workspace-config", config_to_json(ws.config_));
  }
  return ws;
}

std::filesystem::path Workspace::matrix_path(const std::string& skill) const {
  return root_ / "corpora" / (skill + ".matrix.jsonl");
}

std::filesystem::path Workspace::tokens_path(const std::string& skill) const {
  return root_ / "corpora" / (skill + ".tokens.jsonl");
}

std::filesystem::path Workspace::gold_path(const std::string& skill) const {
  return root_ / "corpora" / (skill + ".gold.jsonl");
}

std::filesystem::path Workspace::model_path(const std::string& skill) const {
  return root_ / "models" / (skill + ".model.json");
}

std::filesystem::path Workspace::sweep_report_path(const std::string& skill) const {
  return root_ / "reports" / (skill + ".sweep.json");
}

std::filesystem::path Workspace::sweep_csv_path(const std::string& skill) const {
  return root_ / "reports" / (skill + ".sweep.csv");
}

std::filesystem::path Workspace::predictions_path(const std::string& skill) const {
  return root_ / "reports" / (skill + ".predictions.jsonl");
}

std::filesystem::path Workspace::eval_report_path(const std::string& skill) const {
  return root_ / "reports" / (skill + ".eval.json");
}

}  // namespace oertopics
