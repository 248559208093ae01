#include "oertopics/modelselect.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "oertopics/errors.hpp"
#include "oertopics/rng.hpp"
#include "oertopics/storage.hpp"

namespace oertopics {

using nlohmann::json;

LdaConfig LdaTemplate::materialize(uint32_t k) const {
  LdaConfig config;
  config.k = k;
  config.alpha = alpha ? *alpha : 50.0 / static_cast<double>(k);
  config.beta = beta;
  config.iterations = iterations;
  config.burn_in = burn_in;
  config.seed = derive_seed(base_seed, static_cast<uint64_t>(k));
  config.validate();
  return config;
}

uint32_t select_best_k(const std::vector<CoherencePoint>& points) {
  if (points.empty()) fail(ErrorCode::NoSweepReport, "no coherence points to select from");
  uint32_t best_k = points.front().k;
  double best_mean = points.front().mean;
  for (const auto& point : points) {
    if (point.mean > best_mean || (point.mean == best_mean && point.k < best_k)) {
      best_mean = point.mean;
      best_k = point.k;
    }
  }
  return best_k;
}

SweepReport sweep_k(const CorpusMatrix& matrix, const std::vector<TokenStream>& streams,
                    uint32_t k_min, uint32_t k_max, const LdaTemplate& tmpl,
                    const CoherenceParams& params) {
  if (k_min < 2 || k_min >= k_max) {
    fail(ErrorCode::InvalidConfig, "sweep range requires 2 <= k_min < k_max");
  }
  if (params.top_n < 2) {
    fail(ErrorCode::InvalidConfig, "coherence needs top_n >= 2 words per topic");
  }

  SweepReport report;
  report.skill = matrix.skill;
  report.k_min = k_min;
  report.k_max = k_max;
  report.base_seed = tmpl.base_seed;

  const uint32_t top_n =
      std::min(params.top_n, static_cast<uint32_t>(matrix.vocab.size()));
  if (top_n < 2) {
    fail(ErrorCode::InvalidConfig, "vocabulary too small for coherence (need >= 2 terms)");
  }

  // Train every k first and keep only the top-word lists; the window counts
  // for a term do not depend on which other terms are tracked, so one pass
  // over the union serves every k.
  std::vector<std::vector<std::vector<std::string>>> top_lists;
  top_lists.reserve(k_max - k_min + 1);
  std::set<std::string> targets;
  for (uint32_t k = k_min; k <= k_max; ++k) {
    const LdaConfig config = tmpl.materialize(k);
    report.per_k_seed[k] = config.seed;
    try {
      const TrainResult trained = train(matrix, config);
      std::vector<std::vector<std::string>> lists;
      lists.reserve(k);
      for (uint32_t t = 0; t < k; ++t) {
        lists.push_back(top_words(trained.model, t, top_n));
        for (const auto& word : lists.back()) targets.insert(word);
      }
      top_lists.push_back(std::move(lists));
    } catch (const Error& e) {
      throw Error(e.code(), "k=" + std::to_string(k) + ": " + e.message());
    }
  }

  const WindowStats stats = count_windows(streams, params.window_size, &targets);
  for (uint32_t k = k_min; k <= k_max; ++k) {
    const auto& lists = top_lists[k - k_min];
    std::vector<double> per_topic;
    per_topic.reserve(k);
    for (const auto& list : lists) {
      per_topic.push_back(cv_coherence(list, stats, params.gamma, params.epsilon));
    }
    report.points.push_back(make_coherence_point(k, std::move(per_topic)));
  }
  report.best_k = select_best_k(report.points);
  return report;
}

ExtractionResult extract_covered_topics(const TopicModel& model, const TokenStream& tokens,
                                        double threshold, uint32_t iterations,
                                        uint64_t seed) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    fail(ErrorCode::InvalidConfig, "threshold must lie in (0, 1)");
  }
  if (!model.fully_named()) {
    fail(ErrorCode::UnnamedTopics,
         "model names " + std::to_string(model.topic_names.size()) + " of " +
             std::to_string(model.k()) + " topics; all topics need names before extraction");
  }

  ExtractionResult result;
  result.doc_id = tokens.doc_id;
  result.threshold = threshold;
  result.distribution = infer_theta(model, tokens, iterations, seed, threshold);

  std::set<uint32_t> covered = result.distribution.covered;
  if (covered.empty()) {
    // argmax fallback, lowest index on exact ties
    uint32_t best = 0;
    for (uint32_t t = 1; t < model.k(); ++t) {
      if (result.distribution.theta[t] > result.distribution.theta[best]) best = t;
    }
    covered.insert(best);
  }
  for (uint32_t t : covered) result.covered_names.insert(model.topic_names.at(t));
  return result;
}

void save_sweep_report(const std::filesystem::path& path, const SweepReport& report) {
  json body;
  body["skill"] = report.skill;
  body["k_min"] = report.k_min;
  body["k_max"] = report.k_max;
  body["base_seed"] = report.base_seed;
  body["best_k"] = report.best_k;
  json points = json::array();
  for (const auto& point : report.points) {
    points.push_back({{"k", point.k}, {"per_topic", point.per_topic}, {"mean", point.mean}});
  }
  body["points"] = std::move(points);
  json seeds = json::object();
  for (const auto& [k, seed] : report.per_k_seed) seeds[std::to_string(k)] = seed;
  body["per_k_seed"] = std::move(seeds);
  save_artifact(path, "sweep-report", std::move(body));
}

SweepReport load_sweep_report(const std::filesystem::path& path) {
  const json body = load_artifact(path, "sweep-report");
  SweepReport report;
  report.skill = body.at("skill").get<std::string>();
  report.k_min = body.at("k_min").get<uint32_t>();
  report.k_max = body.at("k_max").get<uint32_t>();
  report.base_seed = body.at("base_seed").get<uint64_t>();
  report.best_k = body.at("best_k").get<uint32_t>();
  for (const auto& entry : body.at("points")) {
    report.points.push_back(make_coherence_point(
        entry.at("k").get<uint32_t>(), entry.at("per_topic").get<std::vector<double>>()));
  }
  for (const auto& [key, value] : body.at("per_k_seed").items()) {
    report.per_k_seed[static_cast<uint32_t>(std::stoul(key))] = value.get<uint64_t>();
  }
  return report;
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "k,mean_cv\n";
  out << std::setprecision(17);
  for (const auto& point : report.points) out << point.k << "," << point.mean << "\n";
  return out.str();
}

}  // namespace oertopics
