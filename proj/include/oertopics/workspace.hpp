#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace oertopics {

/// Defaults persisted with a workspace; CLI flags override per invocation.
struct WorkspaceConfig {
  uint64_t seed = 42;
  std::optional<double> alpha;  // nullopt -> 50/k
  double beta = 0.01;
  uint32_t iterations = 1000;
  uint32_t burn_in = 200;
  uint32_t min_df = 2;
  double max_df_ratio = 0.95;
  uint32_t window_size = 110;
  double gamma = 1.0;
  double epsilon = 1e-12;
  uint32_t top_n = 10;
  double threshold = 0.15;
  uint32_t infer_iterations = 100;
};

/// Filesystem layout for persisted corpora, models, and reports:
///   <root>/config.json
///   <root>/corpora/<skill>.matrix.jsonl, <skill>.tokens.jsonl
///   <root>/models/<skill>.model.json
///   <root>/reports/<skill>.sweep.{json,csv}, <skill>.predictions.jsonl,
///                  <skill>.eval.json
class Workspace {
 public:
  /// Opens (creating layout and a default config file if needed).
  static Workspace open(const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }
  const WorkspaceConfig& config() const { return config_; }

  std::filesystem::path matrix_path(const std::string& skill) const;
  std::filesystem::path tokens_path(const std::string& skill) const;
  std::filesystem::path gold_path(const std::string& skill) const;
  std::filesystem::path model_path(const std::string& skill) const;
  std::filesystem::path sweep_report_path(const std::string& skill) const;
  std::filesystem::path sweep_csv_path(const std::string& skill) const;
  std::filesystem::path predictions_path(const std::string& skill) const;
  std::filesystem::path eval_report_path(const std::string& skill) const;

 private:
  explicit Workspace(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path root_;
  WorkspaceConfig config_;
};

}  // namespace oertopics
