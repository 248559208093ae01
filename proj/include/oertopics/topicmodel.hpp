#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oertopics/preprocess.hpp"
#include "oertopics/rng.hpp"

namespace oertopics {

struct LdaConfig {
  uint32_t k = 2;
  double alpha = 25.0;  // symmetric document-topic prior
  double beta = 0.01;   // symmetric topic-word prior
  uint32_t iterations = 1000;
  uint32_t burn_in = 200;
  uint64_t seed = 0;

  /// Throws InvalidConfig when any range constraint is violated.
  void validate() const;
};

/// Dense row-major matrix; enough linear algebra for phi.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(size_t r, size_t c) { return data[r * cols + c]; }
  double at(size_t r, size_t c) const { return data[r * cols + c]; }
};

/// Trained LDA artifact. Rows of phi are topic-word distributions; every
/// entry is strictly positive thanks to the beta smoothing.
struct TopicModel {
  LdaConfig config;
  Vocabulary vocab;
  Matrix phi;  // k x V, row-stochastic
  std::map<uint32_t, std::string> topic_names;

  uint32_t k() const { return config.k; }
  size_t vocab_size() const { return vocab.size(); }
  bool fully_named() const { return topic_names.size() == config.k; }
};

/// Per-document mixture over topics plus the thresholded covered set
/// {t : theta[t] >= threshold} for the threshold recorded alongside.
struct TopicDistribution {
  std::string doc_id;
  std::vector<double> theta;
  double threshold = 0.15;
  std::set<uint32_t> covered;
};

TopicDistribution make_distribution(std::string doc_id, std::vector<double> theta,
                                    double threshold);

/// Collapsed Gibbs sampler over a count matrix. Exposed as a class (rather
/// than only through train) so callers can instrument sweeps: check the
/// integer count marginals, average theta across post-burn-in sweeps, or
/// stop early. Single-threaded by contract; identical seeds give identical
/// assignment sequences.
class GibbsSampler {
 public:
  GibbsSampler(const CorpusMatrix& matrix, const LdaConfig& config);

  /// One full sweep: every token's topic is resampled from
  /// p(z=t | rest) proportional to (n_dt+alpha) * (n_tw+beta) / (n_t+V*beta),
  /// all counts taken with the token itself removed.
  void sweep();

  uint32_t sweeps_done() const { return sweeps_done_; }
  const LdaConfig& config() const { return config_; }

  /// phi(t,w) = (n_tw + beta) / (n_t + V*beta) from the current counts.
  Matrix phi() const;
  /// theta(d,t) = (n_dt + alpha) / (len_d + k*alpha) from the current counts.
  std::vector<double> theta(size_t doc) const;

  // state access, used by invariant checks and oracles
  size_t doc_count() const { return doc_count_; }
  size_t token_count() const { return token_term_.size(); }
  size_t doc_len(size_t doc) const { return doc_offset_[doc + 1] - doc_offset_[doc]; }
  int32_t doc_topic_count(size_t doc, uint32_t topic) const { return n_dt_[doc * k_ + topic]; }
  int32_t topic_term_count(uint32_t topic, uint32_t term) const {
    return n_wt_[static_cast<size_t>(term) * k_ + topic];
  }
  int32_t topic_count(uint32_t topic) const { return n_t_[topic]; }
  uint32_t assignment(size_t token) const { return z_[token]; }

 private:
  LdaConfig config_;
  uint32_t k_;
  uint32_t vocab_size_;
  size_t doc_count_;
  std::vector<size_t> doc_offset_;     // doc d owns tokens [offset[d], offset[d+1])
  std::vector<uint32_t> token_term_;   // term index per token instance
  std::vector<uint32_t> z_;            // topic assignment per token instance
  std::vector<int32_t> n_dt_;          // D x K
  std::vector<int32_t> n_wt_;          // V x K (term-major for the inner loop)
  std::vector<int32_t> n_t_;           // K
  Pcg32 rng_;
  std::vector<double> cumulative_;     // scratch for sampling
  uint32_t sweeps_done_ = 0;
};

struct TrainResult {
  TopicModel model;
  std::vector<TopicDistribution> distributions;  // one per training document
};

/// Runs config.iterations full Gibbs sweeps and reads phi/theta off the
/// final state, so the persisted model is a single deterministic point
/// estimate. Throws EmptyDocument if any document has no in-vocabulary
/// tokens.
TrainResult train(const CorpusMatrix& matrix, const LdaConfig& config,
                  double covered_threshold = 0.15);

/// Folds an unseen document in by resampling its token assignments with the
/// topic-word distributions held fixed. A document with zero in-vocabulary
/// tokens gets the prior mean theta = 1/k.
TopicDistribution infer_theta(const TopicModel& model, const TokenStream& tokens,
                              uint32_t iterations, uint64_t seed,
                              double covered_threshold = 0.15);

/// The n terms with largest phi(topic, .), descending, ties broken
/// lexicographically.
std::vector<std::string> top_words(const TopicModel& model, uint32_t topic, uint32_t n);

/// Returns a copy of the model with the given names attached; phi is
/// untouched. Names must be distinct and non-empty across the result.
TopicModel assign_topic_names(const TopicModel& model,
                              const std::map<uint32_t, std::string>& names);

/// Model file round trip. phi is written with round-trip-exact doubles, so
/// load reproduces it bit for bit.
void save_model(const std::filesystem::path& path, const TopicModel& model,
                const std::string& skill);

struct LoadedModel {
  TopicModel model;
  std::string skill;
};

LoadedModel load_model(const std::filesystem::path& path);

}  // namespace oertopics
