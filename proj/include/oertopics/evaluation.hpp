#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oertopics/corpus.hpp"
#include "oertopics/modelselect.hpp"

namespace oertopics {

struct PerDocCounts {
  std::string doc_id;
  int tp = 0;
  int fp = 0;
  int fn = 0;
};

struct TopicScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int support = 0;  // gold occurrences of the topic
};

struct EvalReport {
  std::string skill;
  std::vector<PerDocCounts> per_doc;
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;  // unweighted mean of per-topic f1 over support > 0
  std::map<std::string, TopicScore> per_topic;
};

/// Scores predicted covered-topic sets against expert labels. Per document
/// TP = |pred & gold|, FP = |pred \ gold|, FN = |gold \ pred|; micro scores
/// pool the counts, macro averages per-topic F1 over topics with support.
/// Every prediction needs gold labels (MissingGold) and every gold label
/// must be a known topic name (UnknownLabel, reported with the doc id).
EvalReport score(const std::vector<ExtractionResult>& predictions, const Corpus& gold,
                 const std::set<std::string>& topic_names, const std::string& skill = "");

/// Unweighted arithmetic mean of per-skill micro F1.
double aggregate_skills(const std::vector<EvalReport>& reports);

/// "78.3%" style formatting; one decimal, never rounded to whole percent.
std::string format_percent(double fraction);

/// Human-readable table: per-topic rows plus micro/macro footer.
std::string render_eval_table(const EvalReport& report);

void save_eval_report(const std::filesystem::path& path, const EvalReport& report);
EvalReport load_eval_report(const std::filesystem::path& path);

}  // namespace oertopics
