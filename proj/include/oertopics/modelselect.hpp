#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oertopics/coherence.hpp"
#include "oertopics/topicmodel.hpp"

namespace oertopics {

/// LDA settings shared across a sweep; k and the per-k seed are filled in
/// when a concrete config is materialized. alpha == nullopt means the 50/k
/// rule.
struct LdaTemplate {
  std::optional<double> alpha;
  double beta = 0.01;
  uint32_t iterations = 1000;
  uint32_t burn_in = 200;
  uint64_t base_seed = 0;

  LdaConfig materialize(uint32_t k) const;
};

struct CoherenceParams {
  uint32_t window_size = 110;
  double gamma = 1.0;
  double epsilon = 1e-12;
  uint32_t top_n = 10;  // words per topic entering C_V
};

struct SweepReport {
  std::string skill;
  uint32_t k_min = 0;
  uint32_t k_max = 0;
  uint64_t base_seed = 0;
  std::vector<CoherencePoint> points;       // k ascending
  uint32_t best_k = 0;                      // smallest k attaining max mean
  std::map<uint32_t, uint64_t> per_k_seed;
};

/// Smallest k attaining the maximum mean coherence; insensitive to the
/// order of points.
uint32_t select_best_k(const std::vector<CoherencePoint>& points);

/// Trains one model per k in [k_min, k_max] (seed derived from
/// (base_seed, k)), scores each with mean C_V over its top-N word lists
/// against the training corpus, and keeps only the report. Training errors
/// propagate annotated with the failing k.
SweepReport sweep_k(const CorpusMatrix& matrix, const std::vector<TokenStream>& streams,
                    uint32_t k_min, uint32_t k_max, const LdaTemplate& tmpl,
                    const CoherenceParams& params = {});

/// Discrete covered-topic set for one document: names of the topics with
/// theta >= threshold, falling back to the argmax topic (lowest index on
/// ties) so the set is never empty.
struct ExtractionResult {
  std::string doc_id;
  TopicDistribution distribution;
  std::set<std::string> covered_names;
  double threshold = 0.15;
};

/// Requires a fully named model (names are the evaluation currency).
ExtractionResult extract_covered_topics(const TopicModel& model, const TokenStream& tokens,
                                        double threshold, uint32_t iterations = 100,
                                        uint64_t seed = 0);

void save_sweep_report(const std::filesystem::path& path, const SweepReport& report);
SweepReport load_sweep_report(const std::filesystem::path& path);

/// CSV rows (k, mean C_V), one per point.
std::string sweep_csv(const SweepReport& report);

}  // namespace oertopics
