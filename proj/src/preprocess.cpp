#include "oertopics/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "oertopics/errors.hpp"

namespace oertopics {

namespace {

bool is_space_byte(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool matches_marker(std::string_view text, size_t pos, std::string_view marker) {
  if (pos + marker.size() > text.size()) return false;
  for (size_t j = 0; j < marker.size(); ++j) {
    char c = text[pos + j];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c != marker[j]) return false;
  }
  return true;
}

bool starts_url(std::string_view text, size_t pos) {
  return matches_marker(text, pos, "http://") || matches_marker(text, pos, "https://") ||
         matches_marker(text, pos, "www.");
}

}  // namespace

std::vector<std::string> normalize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;

  auto flush = [&]() {
    // Strip leading characters until the token starts with a letter; a chunk
    // with no letter at all is dropped.
    size_t p = 0;
    while (p < current.size() && !(current[p] >= 'a' && current[p] <= 'z')) ++p;
    if (p < current.size()) tokens.emplace_back(current.substr(p));
    current.clear();
  };

  size_t i = 0;
  while (i < text.size()) {
    if (starts_url(text, i)) {
      // URL runs extend to the next whitespace
      while (i < text.size() && !is_space_byte(static_cast<unsigned char>(text[i]))) ++i;
      flush();
      continue;
    }
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c + 32);
    const bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'' || c == '-';
    if (keep) {
      current.push_back(static_cast<char>(c));
    } else {
      flush();
    }
    ++i;
  }
  flush();
  return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (!stopwords.count(token)) kept.push_back(token);
  }
  return kept;
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MissingFile, "stopword file not found: " + path.string());
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    for (const auto& token : normalize(line)) words.insert(token);
  }
  return words;
}

Vocabulary make_vocabulary(std::vector<std::string> terms, std::vector<uint32_t> doc_freq) {
  Vocabulary vocab;
  vocab.terms = std::move(terms);
  vocab.doc_freq = std::move(doc_freq);
  vocab.index.reserve(vocab.terms.size());
  for (uint32_t i = 0; i < vocab.terms.size(); ++i) vocab.index.emplace(vocab.terms[i], i);
  return vocab;
}

Vocabulary build_vocabulary(const std::vector<TokenStream>& streams, uint32_t min_df,
                            double max_df_ratio) {
  if (min_df < 1) fail(ErrorCode::InvalidConfig, "min_df must be >= 1");
  if (!(max_df_ratio > 0.0 && max_df_ratio <= 1.0)) {
    fail(ErrorCode::InvalidConfig, "max_df_ratio must be in (0, 1]");
  }

  // std::map keeps terms lexicographically ordered, which fixes the indexing
  std::map<std::string, uint32_t> df;
  std::set<std::string> in_doc;
  for (const auto& stream : streams) {
    in_doc.clear();
    in_doc.insert(stream.tokens.begin(), stream.tokens.end());
    for (const auto& term : in_doc) ++df[term];
  }

  const double max_df = max_df_ratio * static_cast<double>(streams.size());
  std::vector<std::string> terms;
  std::vector<uint32_t> freqs;
  for (const auto& [term, count] : df) {
    if (count >= min_df && static_cast<double>(count) <= max_df) {
      terms.push_back(term);
      freqs.push_back(count);
    }
  }
  if (terms.empty()) {
    fail(ErrorCode::EmptyVocabulary, "no term satisfies min_df=" + std::to_string(min_df) +
                                         ", max_df_ratio=" + std::to_string(max_df_ratio));
  }
  return make_vocabulary(std::move(terms), std::move(freqs));
}

SparseCounts vectorize(const TokenStream& stream, const Vocabulary& vocab) {
  std::map<uint32_t, uint32_t> counts;
  for (const auto& token : stream.tokens) {
    if (auto id = vocab.lookup(token)) ++counts[*id];
  }
  return SparseCounts(counts.begin(), counts.end());
}

std::vector<SparseWeights> tfidf_weights(const Vocabulary& vocab,
                                         const std::vector<SparseCounts>& counts) {
  const double n_docs = static_cast<double>(counts.size());
  std::vector<double> idf(vocab.size());
  for (size_t t = 0; t < vocab.size(); ++t) {
    idf[t] = std::log((1.0 + n_docs) / (1.0 + vocab.doc_freq[t])) + 1.0;
  }
  std::vector<SparseWeights> weights;
  weights.reserve(counts.size());
  for (const auto& doc : counts) {
    SparseWeights row;
    row.reserve(doc.size());
    for (const auto& [term, tf] : doc) row.emplace_back(term, tf * idf[term]);
    weights.push_back(std::move(row));
  }
  return weights;
}

PreprocessResult preprocess_corpus(const Corpus& corpus, const PreprocessOptions& options) {
  PreprocessResult result;
  result.streams.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    result.streams.push_back(
        TokenStream{doc.id, remove_stopwords(normalize(doc.text), options.stopwords)});
  }
  result.matrix.skill = corpus.skill;
  result.matrix.vocab = build_vocabulary(result.streams, options.min_df, options.max_df_ratio);
  for (const auto& stream : result.streams) {
    result.matrix.doc_ids.push_back(stream.doc_id);
    result.matrix.counts.push_back(vectorize(stream, result.matrix.vocab));
  }
  result.matrix.tfidf = tfidf_weights(result.matrix.vocab, result.matrix.counts);
  return result;
}

}  // namespace oertopics
