#include "oertopics/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "oertopics/errors.hpp"
#include "oertopics/storage.hpp"

namespace oertopics {

using nlohmann::json;

const Document* Corpus::find(std::string_view id) const {
  for (const auto& doc : documents) {
    if (doc.id == id) return &doc;
  }
  return nullptr;
}

bool utf8_valid(std::string_view bytes) {
  size_t i = 0;
  const size_t n = bytes.size();
  while (i < n) {
    const unsigned char c = static_cast<unsigned char>(bytes[i]);
    size_t len;
    uint32_t cp;
    if (c < 0x80) {
      i += 1;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (size_t j = 1; j < len; ++j) {
      const unsigned char cc = static_cast<unsigned char>(bytes[i + j]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // reject overlong encodings, surrogates, and out-of-range code points
    if (len == 2 && cp < 0x80) return false;
    if (len == 3 && cp < 0x800) return false;
    if (len == 4 && cp < 0x10000) return false;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += len;
  }
  return true;
}

namespace {

// Parses one JSONL record, reporting the line number on any failure.
json parse_record_line(const std::string& line, const std::filesystem::path& file, int line_no) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::exception& e) {
    fail(ErrorCode::MalformedRecord,
         file.string() + ":" + std::to_string(line_no) + ": " + e.what());
  }
  if (!record.is_object()) {
    fail(ErrorCode::MalformedRecord,
         file.string() + ":" + std::to_string(line_no) + ": record is not an object");
  }
  return record;
}

std::string require_string(const json& record, const char* key,
                           const std::filesystem::path& file, int line_no) {
  if (!record.contains(key) || !record[key].is_string()) {
    fail(ErrorCode::MalformedRecord, file.string() + ":" + std::to_string(line_no) +
                                         ": missing string field \"" + key + "\"");
  }
  std::string value = record[key].get<std::string>();
  if (value.empty()) {
    fail(ErrorCode::MalformedRecord, file.string() + ":" + std::to_string(line_no) +
                                         ": field \"" + key + "\" is empty");
  }
  return value;
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) fail(ErrorCode::MissingFile, "manifest not found: " + manifest_path.string());

  const auto base_dir = manifest_path.has_parent_path() ? manifest_path.parent_path()
                                                        : std::filesystem::path(".");
  Corpus corpus;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!utf8_valid(line)) {
      fail(ErrorCode::MalformedRecord,
           manifest_path.string() + ":" + std::to_string(line_no) + ": invalid UTF-8");
    }
    const json record = parse_record_line(line, manifest_path, line_no);
    Document doc;
    doc.id = require_string(record, "id", manifest_path, line_no);
    doc.skill = require_string(record, "skill", manifest_path, line_no);
    const std::string rel_path = require_string(record, "path", manifest_path, line_no);

    if (!seen_ids.insert(doc.id).second) {
      fail(ErrorCode::DuplicateId, manifest_path.string() + ":" + std::to_string(line_no) +
                                       ": duplicate document id \"" + doc.id + "\"");
    }
    if (corpus.documents.empty()) {
      corpus.skill = doc.skill;
    } else if (doc.skill != corpus.skill) {
      fail(ErrorCode::MalformedRecord,
           manifest_path.string() + ":" + std::to_string(line_no) + ": skill \"" + doc.skill +
               "\" differs from corpus skill \"" + corpus.skill + "\"");
    }

    std::filesystem::path transcript = rel_path;
    if (transcript.is_relative()) transcript = base_dir / transcript;
    std::ifstream tin(transcript, std::ios::binary);
    if (!tin) {
      fail(ErrorCode::MissingFile, manifest_path.string() + ":" + std::to_string(line_no) +
                                       ": transcript not found: " + transcript.string());
    }
    std::ostringstream text;
    text << tin.rdbuf();
    doc.text = std::move(text).str();
    if (!utf8_valid(doc.text)) {
      fail(ErrorCode::MalformedRecord, manifest_path.string() + ":" + std::to_string(line_no) +
                                           ": transcript is not valid UTF-8: " +
                                           transcript.string());
    }
    corpus.documents.push_back(std::move(doc));
  }

  if (corpus.documents.empty()) {
    fail(ErrorCode::EmptyManifest, "manifest has no records: " + manifest_path.string());
  }
  return corpus;
}

Corpus load_gold_labels(const std::filesystem::path& labels_path, const Corpus& corpus) {
  std::ifstream in(labels_path);
  if (!in) fail(ErrorCode::MissingFile, "labels file not found: " + labels_path.string());

  Corpus result = corpus;
  std::unordered_map<std::string, size_t> by_id;
  for (size_t i = 0; i < result.documents.size(); ++i) by_id[result.documents[i].id] = i;

  std::unordered_set<std::string> labeled;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json record = parse_record_line(line, labels_path, line_no);
    const std::string id = require_string(record, "id", labels_path, line_no);
    if (!record.contains("topics") || !record["topics"].is_array()) {
      fail(ErrorCode::MalformedRecord, labels_path.string() + ":" + std::to_string(line_no) +
                                           ": missing array field \"topics\"");
    }
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      fail(ErrorCode::UnknownDocument, labels_path.string() + ":" + std::to_string(line_no) +
                                           ": no document with id \"" + id + "\"");
    }
    if (!labeled.insert(id).second) {
      fail(ErrorCode::DuplicateId, labels_path.string() + ":" + std::to_string(line_no) +
                                       ": second label record for id \"" + id + "\"");
    }
    std::set<std::string> topics;
    for (const auto& entry : record["topics"]) {
      if (!entry.is_string() || entry.get<std::string>().empty()) {
        fail(ErrorCode::MalformedRecord, labels_path.string() + ":" + std::to_string(line_no) +
                                             ": topics must be non-empty strings");
      }
      topics.insert(entry.get<std::string>());
    }
    if (topics.empty()) {
      fail(ErrorCode::EmptyLabelSet, labels_path.string() + ":" + std::to_string(line_no) +
                                         ": record for \"" + id + "\" has zero topics");
    }
    result.documents[it->second].gold_topics = std::move(topics);
  }
  return result;
}

}  // namespace oertopics
