#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "oertopics/preprocess.hpp"

namespace oertopics {

/// Boolean sliding-window occurrence statistics. occur(w) counts windows
/// containing w at least once; cooccur(a,b) counts windows containing both.
/// When built with a target set, only those terms are tracked (untracked
/// tokens still occupy window positions).
struct WindowStats {
  uint32_t window_size = 0;
  int64_t total_windows = 0;
  std::unordered_map<std::string, uint32_t> term_ids;
  std::vector<int64_t> occur;                      // by tracked id
  std::unordered_map<uint64_t, int64_t> cooccur;   // key lo<<32|hi, lo < hi

  int64_t occur_count(const std::string& term) const;
  /// Symmetric; cooccur(a,a) equals occur(a).
  int64_t cooccur_count(const std::string& a, const std::string& b) const;
};

/// Slides a width-window_size window one token at a time over each document.
/// Documents shorter than the window contribute a single window; windows
/// never span documents.
WindowStats count_windows(const std::vector<TokenStream>& streams, uint32_t window_size,
                          const std::set<std::string>* targets = nullptr);

/// Normalized PMI from window statistics:
///   ln((p(a,b)+eps) / (p(a)p(b))) / (-ln(p(a,b)+eps))
/// with exactly -1 when the pair never co-occurs (both occurring) and 0 when
/// either term never occurs.
double npmi(const std::string& a, const std::string& b, const WindowStats& stats,
            double epsilon = 1e-12);

/// C_V under one-set segmentation: each word's context vector is its NPMI^gamma
/// profile against the whole set, and the score is the mean cosine between
/// each context vector and their sum. Zero vectors have cosine 0 by
/// definition. Internally evaluates terms in lexicographic order, so the
/// result is exactly invariant under permutation of top_terms.
double cv_coherence(const std::vector<std::string>& top_terms, const WindowStats& stats,
                    double gamma = 1.0, double epsilon = 1e-12);

/// Coherence of one candidate topic count: per-topic C_V values and their
/// arithmetic mean.
struct CoherencePoint {
  uint32_t k = 0;
  std::vector<double> per_topic;
  double mean = 0.0;
};

CoherencePoint make_coherence_point(uint32_t k, std::vector<double> per_topic);

}  // namespace oertopics
