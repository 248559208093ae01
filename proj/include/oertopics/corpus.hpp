#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace oertopics {

/// One educational resource: a transcript plus the skill it belongs to and,
/// for evaluation documents, the expert-assigned topic labels.
struct Document {
  std::string id;
  std::string skill;
  std::string text;
  std::optional<std::set<std::string>> gold_topics;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::string skill;
  std::vector<Document> documents;  // manifest order

  bool operator==(const Corpus&) const = default;

  const Document* find(std::string_view id) const;
};

/// Loads a corpus from a line-delimited manifest of
/// {"id": ..., "skill": ..., "path": ...} records. Transcript paths are
/// resolved relative to the manifest's directory and read verbatim.
Corpus load_corpus(const std::filesystem::path& manifest_path);

/// Returns a copy of the corpus with gold topic sets attached from a
/// line-delimited {"id": ..., "topics": [...]} labels file. Text and
/// document order are untouched.
Corpus load_gold_labels(const std::filesystem::path& labels_path, const Corpus& corpus);

bool utf8_valid(std::string_view bytes);

}  // namespace oertopics
