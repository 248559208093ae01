#pragma once

#include <stdexcept>
#include <string>

namespace oertopics {

enum class ErrorCode {
  // corpus loading
  MissingFile,
  DuplicateId,
  EmptyManifest,
  MalformedRecord,
  UnknownDocument,
  EmptyLabelSet,
  // preprocessing
  EmptyVocabulary,
  // topic modelling
  EmptyDocument,
  InvalidConfig,
  IndexOutOfRange,
  DuplicateName,
  // coherence
  DegenerateStats,
  // extraction / evaluation
  UnnamedTopics,
  MissingGold,
  UnknownLabel,
  // workspace / CLI
  NoSweepReport,
  FormatVersionMismatch,
  IoError,
  UsageError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyManifest: return "EmptyManifest";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::EmptyLabelSet: return "EmptyLabelSet";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::DegenerateStats: return "DegenerateStats";
    case ErrorCode::UnnamedTopics: return "UnnamedTopics";
    case ErrorCode::MissingGold: return "MissingGold";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::NoSweepReport: return "NoSweepReport";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "UnknownError";
}

/// Library-wide exception; the code identifies the failure class and the
/// message carries file/line context where available.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string("[") + to_string(code) + "] " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace oertopics
