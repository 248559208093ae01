#include "oertopics/coherence.hpp"

#include <algorithm>
#include <cmath>

#include "oertopics/errors.hpp"

namespace oertopics {

namespace {

uint64_t pair_key(uint32_t a, uint32_t b) {
  const uint32_t lo = std::min(a, b);
  const uint32_t hi = std::max(a, b);
  return (static_cast<uint64_t>(lo) << 32) | hi;
}

}  // namespace

int64_t WindowStats::occur_count(const std::string& term) const {
  auto it = term_ids.find(term);
  if (it == term_ids.end()) return 0;
  return occur[it->second];
}

int64_t WindowStats::cooccur_count(const std::string& a, const std::string& b) const {
  if (a == b) return occur_count(a);
  auto ia = term_ids.find(a);
  auto ib = term_ids.find(b);
  if (ia == term_ids.end() || ib == term_ids.end()) return 0;
  auto it = cooccur.find(pair_key(ia->second, ib->second));
  if (it == cooccur.end()) return 0;
  return it->second;
}

WindowStats count_windows(const std::vector<TokenStream>& streams, uint32_t window_size,
                          const std::set<std::string>* targets) {
  if (window_size < 1) fail(ErrorCode::InvalidConfig, "window_size must be >= 1");

  WindowStats stats;
  stats.window_size = window_size;

  constexpr int64_t kUntracked = -1;
  auto tracked_id = [&](const std::string& term) -> int64_t {
    if (targets != nullptr && targets->count(term) == 0) return kUntracked;
    auto it = stats.term_ids.find(term);
    if (it != stats.term_ids.end()) return it->second;
    const uint32_t id = static_cast<uint32_t>(stats.term_ids.size());
    stats.term_ids.emplace(term, id);
    stats.occur.push_back(0);
    return id;
  };

  std::vector<int64_t> ids;
  std::vector<uint32_t> present;
  for (const auto& stream : streams) {
    const size_t len = stream.tokens.size();
    ids.resize(len);
    for (size_t i = 0; i < len; ++i) ids[i] = tracked_id(stream.tokens[i]);

    // short documents still contribute one (possibly partial or empty) window
    const size_t window_count = len >= window_size ? len - window_size + 1 : 1;
    stats.total_windows += static_cast<int64_t>(window_count);

    for (size_t start = 0; start < window_count; ++start) {
      const size_t stop = std::min(len, start + window_size);
      present.clear();
      for (size_t i = start; i < stop; ++i) {
        if (ids[i] != kUntracked) present.push_back(static_cast<uint32_t>(ids[i]));
      }
      std::sort(present.begin(), present.end());
      present.erase(std::unique(present.begin(), present.end()), present.end());
      for (size_t i = 0; i < present.size(); ++i) {
        ++stats.occur[present[i]];
        for (size_t j = i + 1; j < present.size(); ++j) {
          ++stats.cooccur[pair_key(present[i], present[j])];
        }
      }
    }
  }
  return stats;
}

double npmi(const std::string& a, const std::string& b, const WindowStats& stats,
            double epsilon) {
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidConfig, "epsilon must be > 0");
  const int64_t occur_a = stats.occur_count(a);
  const int64_t occur_b = stats.occur_count(b);
  if (occur_a == 0 || occur_b == 0) return 0.0;
  const int64_t co = stats.cooccur_count(a, b);
  if (co == 0) return -1.0;

  const double total = static_cast<double>(stats.total_windows);
  const double pa = static_cast<double>(occur_a) / total;
  const double pb = static_cast<double>(occur_b) / total;
  const double pab = static_cast<double>(co) / total;
  return std::log((pab + epsilon) / (pa * pb)) / (-std::log(pab + epsilon));
}

double cv_coherence(const std::vector<std::string>& top_terms, const WindowStats& stats,
                    double gamma, double epsilon) {
  if (top_terms.size() < 2) {
    fail(ErrorCode::InvalidConfig, "cv_coherence needs at least 2 terms");
  }
  if (stats.total_windows == 0) {
    fail(ErrorCode::DegenerateStats, "window statistics cover zero windows");
  }

  // fixed evaluation order makes the result exactly permutation invariant
  std::vector<std::string> terms = top_terms;
  std::sort(terms.begin(), terms.end());
  const size_t n = terms.size();

  auto weighted = [&](double value) {
    return gamma == 1.0 ? value : std::pow(value, gamma);
  };

  std::vector<std::vector<double>> context(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    context[i][i] = weighted(npmi(terms[i], terms[i], stats, epsilon));
    for (size_t j = i + 1; j < n; ++j) {
      const double value = weighted(npmi(terms[i], terms[j], stats, epsilon));
      context[i][j] = value;
      context[j][i] = value;  // npmi is symmetric
    }
  }

  std::vector<double> sum(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) sum[j] += context[i][j];
  }

  double sum_norm_sq = 0.0;
  for (size_t j = 0; j < n; ++j) sum_norm_sq += sum[j] * sum[j];
  const double sum_norm = std::sqrt(sum_norm_sq);

  double accum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double dot = 0.0;
    double norm_sq = 0.0;
    for (size_t j = 0; j < n; ++j) {
      dot += context[i][j] * sum[j];
      norm_sq += context[i][j] * context[i][j];
    }
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0 || sum_norm == 0.0) continue;  // zero vectors count cosine 0
    accum += dot / (norm * sum_norm);
  }
  return std::clamp(accum / static_cast<double>(n), -1.0, 1.0);
}

CoherencePoint make_coherence_point(uint32_t k, std::vector<double> per_topic) {
  if (per_topic.size() != k || k == 0) {
    fail(ErrorCode::InvalidConfig,
         "coherence point needs exactly k per-topic values (k=" + std::to_string(k) + ")");
  }
  CoherencePoint point;
  point.k = k;
  point.per_topic = std::move(per_topic);
  double total = 0.0;
  for (double value : point.per_topic) total += value;
  point.mean = total / static_cast<double>(k);
  return point;
}

}  // namespace oertopics
