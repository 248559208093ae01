#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oertopics/corpus.hpp"

namespace oertopics {

struct TokenStream {
  std::string doc_id;
  std::vector<std::string> tokens;  // lowercase, normalized, stopwords removed

  bool operator==(const TokenStream&) const = default;
};

/// Term <-> index mapping with document frequencies. Terms are kept in
/// lexicographic order so indexing is identical across runs.
struct Vocabulary {
  std::vector<std::string> terms;
  std::vector<uint32_t> doc_freq;  // aligned with terms
  std::unordered_map<std::string, uint32_t> index;

  size_t size() const { return terms.size(); }

  std::optional<uint32_t> lookup(const std::string& term) const {
    auto it = index.find(term);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// Rebuilds the index from terms; doc_freq must already be aligned.
Vocabulary make_vocabulary(std::vector<std::string> terms, std::vector<uint32_t> doc_freq);

using SparseCounts = std::vector<std::pair<uint32_t, uint32_t>>;   // (term, tf), term ascending
using SparseWeights = std::vector<std::pair<uint32_t, double>>;    // same sparsity pattern

struct CorpusMatrix {
  std::string skill;
  Vocabulary vocab;
  std::vector<std::string> doc_ids;
  std::vector<SparseCounts> counts;
  std::vector<SparseWeights> tfidf;

  size_t doc_count() const { return doc_ids.size(); }
};

/// Tokenizes raw transcript text. URL-looking runs (http://, https://, www.)
/// go first, the rest is lowercased, anything outside [a-z0-9'-] splits
/// tokens, and leading non-letter characters are stripped so every surviving
/// token starts with a letter. Total function; "" gives [].
std::vector<std::string> normalize(std::string_view text);

/// Order-preserving stopword filter over already-normalized tokens.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords);

/// Bundled standard English stopword list (~180 terms).
const std::set<std::string>& default_stopwords();

/// One term per line; blank lines ignored. Entries are normalized so the
/// file can be written in any case.
std::set<std::string> load_stopwords(const std::filesystem::path& path);

/// Retains terms with min_df <= df <= max_df_ratio * N, lexicographically
/// ordered. Throws EmptyVocabulary if nothing survives.
Vocabulary build_vocabulary(const std::vector<TokenStream>& streams, uint32_t min_df,
                            double max_df_ratio);

/// Per-term occurrence counts for one stream; out-of-vocabulary tokens are
/// ignored.
SparseCounts vectorize(const TokenStream& stream, const Vocabulary& vocab);

/// Smoothed TF-IDF: weight(t,d) = tf * (ln((1+N)/(1+df)) + 1). The +1 floor
/// keeps every retained term's idf finite and positive, so weight is zero
/// exactly when tf is zero.
std::vector<SparseWeights> tfidf_weights(const Vocabulary& vocab,
                                         const std::vector<SparseCounts>& counts);

struct PreprocessOptions {
  uint32_t min_df = 2;
  double max_df_ratio = 0.95;
  std::set<std::string> stopwords = default_stopwords();
};

struct PreprocessResult {
  std::vector<TokenStream> streams;  // corpus order, pre-vocabulary-pruning
  CorpusMatrix matrix;
};

/// Full pipeline: normalize + stopword removal per document, vocabulary
/// construction, count vectors, TF-IDF.
PreprocessResult preprocess_corpus(const Corpus& corpus, const PreprocessOptions& options = {});

}  // namespace oertopics
