#include "oertopics/topicmodel.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "oertopics/errors.hpp"
#include "oertopics/storage.hpp"

namespace oertopics {

using nlohmann::json;

void LdaConfig::validate() const {
  if (k < 2) fail(ErrorCode::InvalidConfig, "k must be >= 2");
  if (!(alpha > 0.0)) fail(ErrorCode::InvalidConfig, "alpha must be > 0");
  if (!(beta > 0.0)) fail(ErrorCode::InvalidConfig, "beta must be > 0");
  if (iterations < 1) fail(ErrorCode::InvalidConfig, "iterations must be >= 1");
  if (burn_in >= iterations) fail(ErrorCode::InvalidConfig, "burn_in must be < iterations");
}

TopicDistribution make_distribution(std::string doc_id, std::vector<double> theta,
                                    double threshold) {
  TopicDistribution dist;
  dist.doc_id = std::move(doc_id);
  dist.theta = std::move(theta);
  dist.threshold = threshold;
  for (uint32_t t = 0; t < dist.theta.size(); ++t) {
    if (dist.theta[t] >= threshold) dist.covered.insert(t);
  }
  return dist;
}

GibbsSampler::GibbsSampler(const CorpusMatrix& matrix, const LdaConfig& config)
    : config_(config),
      k_(config.k),
      vocab_size_(static_cast<uint32_t>(matrix.vocab.size())),
      doc_count_(matrix.doc_count()),
      rng_(config.seed) {
  config_.validate();
  if (doc_count_ == 0) fail(ErrorCode::InvalidConfig, "corpus is empty");
  if (vocab_size_ == 0) fail(ErrorCode::EmptyVocabulary, "vocabulary is empty");

  doc_offset_.reserve(doc_count_ + 1);
  doc_offset_.push_back(0);
  for (size_t d = 0; d < doc_count_; ++d) {
    size_t len = 0;
    for (const auto& [term, count] : matrix.counts[d]) len += count;
    if (len == 0) {
      fail(ErrorCode::EmptyDocument,
           "document \"" + matrix.doc_ids[d] + "\" has no in-vocabulary tokens");
    }
    doc_offset_.push_back(doc_offset_.back() + len);
  }

  token_term_.reserve(doc_offset_.back());
  for (size_t d = 0; d < doc_count_; ++d) {
    // counts are term-ascending, so token expansion order is deterministic
    for (const auto& [term, count] : matrix.counts[d]) {
      for (uint32_t c = 0; c < count; ++c) token_term_.push_back(term);
    }
  }

  z_.assign(token_term_.size(), 0);
  n_dt_.assign(doc_count_ * k_, 0);
  n_wt_.assign(static_cast<size_t>(vocab_size_) * k_, 0);
  n_t_.assign(k_, 0);
  cumulative_.assign(k_, 0.0);

  for (size_t d = 0; d < doc_count_; ++d) {
    for (size_t i = doc_offset_[d]; i < doc_offset_[d + 1]; ++i) {
      const uint32_t topic = rng_.next_below(k_);
      z_[i] = topic;
      ++n_dt_[d * k_ + topic];
      ++n_wt_[static_cast<size_t>(token_term_[i]) * k_ + topic];
      ++n_t_[topic];
    }
  }
}

void GibbsSampler::sweep() {
  const double v_beta = static_cast<double>(vocab_size_) * config_.beta;
  const double alpha = config_.alpha;
  const double beta = config_.beta;

  for (size_t d = 0; d < doc_count_; ++d) {
    int32_t* n_dt = &n_dt_[d * k_];
    for (size_t i = doc_offset_[d]; i < doc_offset_[d + 1]; ++i) {
      const uint32_t w = token_term_[i];
      int32_t* n_wt = &n_wt_[static_cast<size_t>(w) * k_];
      const uint32_t old_topic = z_[i];
      --n_dt[old_topic];
      --n_wt[old_topic];
      --n_t_[old_topic];

      double total = 0.0;
      for (uint32_t t = 0; t < k_; ++t) {
        total += (n_dt[t] + alpha) * (n_wt[t] + beta) / (n_t_[t] + v_beta);
        cumulative_[t] = total;
      }
      const double u = rng_.next_double01() * total;
      uint32_t picked = 0;
      while (picked + 1 < k_ && cumulative_[picked] <= u) ++picked;

      ++n_dt[picked];
      ++n_wt[picked];
      ++n_t_[picked];
      z_[i] = picked;
    }
  }
  ++sweeps_done_;
}

Matrix GibbsSampler::phi() const {
  const double v_beta = static_cast<double>(vocab_size_) * config_.beta;
  Matrix phi(k_, vocab_size_);
  for (uint32_t t = 0; t < k_; ++t) {
    const double denom = n_t_[t] + v_beta;
    for (uint32_t w = 0; w < vocab_size_; ++w) {
      phi.at(t, w) = (n_wt_[static_cast<size_t>(w) * k_ + t] + config_.beta) / denom;
    }
  }
  return phi;
}

std::vector<double> GibbsSampler::theta(size_t doc) const {
  const double denom =
      static_cast<double>(doc_len(doc)) + static_cast<double>(k_) * config_.alpha;
  std::vector<double> theta(k_);
  for (uint32_t t = 0; t < k_; ++t) {
    theta[t] = (n_dt_[doc * k_ + t] + config_.alpha) / denom;
  }
  return theta;
}

TrainResult train(const CorpusMatrix& matrix, const LdaConfig& config,
                  double covered_threshold) {
  GibbsSampler sampler(matrix, config);
  for (uint32_t it = 0; it < config.iterations; ++it) sampler.sweep();

  TrainResult result;
  result.model.config = config;
  result.model.vocab = matrix.vocab;
  result.model.phi = sampler.phi();
  result.distributions.reserve(matrix.doc_count());
  for (size_t d = 0; d < matrix.doc_count(); ++d) {
    result.distributions.push_back(
        make_distribution(matrix.doc_ids[d], sampler.theta(d), covered_threshold));
  }
  return result;
}

TopicDistribution infer_theta(const TopicModel& model, const TokenStream& tokens,
                              uint32_t iterations, uint64_t seed, double covered_threshold) {
  if (iterations < 1) fail(ErrorCode::InvalidConfig, "iterations must be >= 1");
  const uint32_t k = model.k();
  const double alpha = model.config.alpha;

  std::vector<uint32_t> terms;
  terms.reserve(tokens.tokens.size());
  for (const auto& token : tokens.tokens) {
    if (auto id = model.vocab.lookup(token)) terms.push_back(*id);
  }
  if (terms.empty()) {
    // prior mean under the symmetric alpha
    return make_distribution(tokens.doc_id, std::vector<double>(k, 1.0 / k),
                             covered_threshold);
  }

  Pcg32 rng(seed);
  std::vector<int32_t> n_dt(k, 0);
  std::vector<uint32_t> z(terms.size());
  for (size_t i = 0; i < terms.size(); ++i) {
    z[i] = rng.next_below(k);
    ++n_dt[z[i]];
  }

  std::vector<double> cumulative(k);
  for (uint32_t it = 0; it < iterations; ++it) {
    for (size_t i = 0; i < terms.size(); ++i) {
      const uint32_t w = terms[i];
      --n_dt[z[i]];
      double total = 0.0;
      for (uint32_t t = 0; t < k; ++t) {
        total += (n_dt[t] + alpha) * model.phi.at(t, w);
        cumulative[t] = total;
      }
      const double u = rng.next_double01() * total;
      uint32_t picked = 0;
      while (picked + 1 < k && cumulative[picked] <= u) ++picked;
      ++n_dt[picked];
      z[i] = picked;
    }
  }

  const double denom = static_cast<double>(terms.size()) + static_cast<double>(k) * alpha;
  std::vector<double> theta(k);
  for (uint32_t t = 0; t < k; ++t) theta[t] = (n_dt[t] + alpha) / denom;
  return make_distribution(tokens.doc_id, std::move(theta), covered_threshold);
}

std::vector<std::string> top_words(const TopicModel& model, uint32_t topic, uint32_t n) {
  const uint32_t vocab_size = static_cast<uint32_t>(model.vocab_size());
  if (topic >= model.k()) {
    fail(ErrorCode::IndexOutOfRange,
         "topic " + std::to_string(topic) + " out of range (k=" + std::to_string(model.k()) + ")");
  }
  if (n < 1 || n > vocab_size) {
    fail(ErrorCode::IndexOutOfRange,
         "n=" + std::to_string(n) + " out of range (V=" + std::to_string(vocab_size) + ")");
  }
  std::vector<uint32_t> order(vocab_size);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    const double pa = model.phi.at(topic, a);
    const double pb = model.phi.at(topic, b);
    if (pa != pb) return pa > pb;
    return model.vocab.terms[a] < model.vocab.terms[b];
  });
  std::vector<std::string> words;
  words.reserve(n);
  for (uint32_t i = 0; i < n; ++i) words.push_back(model.vocab.terms[order[i]]);
  return words;
}

TopicModel assign_topic_names(const TopicModel& model,
                              const std::map<uint32_t, std::string>& names) {
  TopicModel named = model;
  for (const auto& [topic, name] : names) {
    if (topic >= model.k()) {
      fail(ErrorCode::IndexOutOfRange, "topic index " + std::to_string(topic) +
                                           " out of range (k=" + std::to_string(model.k()) + ")");
    }
    if (name.empty()) {
      fail(ErrorCode::InvalidConfig, "empty name for topic " + std::to_string(topic));
    }
    named.topic_names[topic] = name;
  }
  std::set<std::string> distinct;
  for (const auto& [topic, name] : named.topic_names) {
    if (!distinct.insert(name).second) {
      fail(ErrorCode::DuplicateName, "topic name \"" + name + "\" used more than once");
    }
  }
  return named;
}

void save_model(const std::filesystem::path& path, const TopicModel& model,
                const std::string& skill) {
  json body;
  body["skill"] = skill;
  body["config"] = {{"k", model.config.k},           {"alpha", model.config.alpha},
                    {"beta", model.config.beta},     {"iterations", model.config.iterations},
                    {"burn_in", model.config.burn_in}, {"seed", model.config.seed}};
  body["vocab"] = model.vocab.terms;
  body["doc_freq"] = model.vocab.doc_freq;
  json phi = json::array();
  for (size_t t = 0; t < model.phi.rows; ++t) {
    json row = json::array();
    for (size_t w = 0; w < model.phi.cols; ++w) row.push_back(model.phi.at(t, w));
    phi.push_back(std::move(row));
  }
  body["phi"] = std::move(phi);
  json names = json::object();
  for (const auto& [topic, name] : model.topic_names) names[std::to_string(topic)] = name;
  body["topic_names"] = std::move(names);
  save_artifact(path, "topic-model", std::move(body));
}

LoadedModel load_model(const std::filesystem::path& path) {
  const json body = load_artifact(path, "topic-model");
  LoadedModel loaded;
  loaded.skill = body.at("skill").get<std::string>();
  TopicModel& model = loaded.model;
  model.config.k = body.at("config").at("k").get<uint32_t>();
  model.config.alpha = body.at("config").at("alpha").get<double>();
  model.config.beta = body.at("config").at("beta").get<double>();
  model.config.iterations = body.at("config").at("iterations").get<uint32_t>();
  model.config.burn_in = body.at("config").at("burn_in").get<uint32_t>();
  model.config.seed = body.at("config").at("seed").get<uint64_t>();
  model.vocab = make_vocabulary(body.at("vocab").get<std::vector<std::string>>(),
                                body.at("doc_freq").get<std::vector<uint32_t>>());
  const auto& phi_rows = body.at("phi");
  model.phi = Matrix(model.config.k, model.vocab.size());
  for (size_t t = 0; t < model.phi.rows; ++t) {
    const auto& row = phi_rows.at(t);
    for (size_t w = 0; w < model.phi.cols; ++w) model.phi.at(t, w) = row.at(w).get<double>();
  }
  for (const auto& [key, value] : body.at("topic_names").items()) {
    model.topic_names[static_cast<uint32_t>(std::stoul(key))] = value.get<std::string>();
  }
  return loaded;
}

}  // namespace oertopics
