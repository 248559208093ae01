#include "oertopics/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "oertopics/errors.hpp"
#include "oertopics/storage.hpp"

namespace oertopics {

using nlohmann::json;

namespace {

double safe_ratio(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) {
  return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

}  // namespace

EvalReport score(const std::vector<ExtractionResult>& predictions, const Corpus& gold,
                 const std::set<std::string>& topic_names, const std::string& skill) {
  EvalReport report;
  report.skill = skill;

  struct TopicTally {
    long tp = 0;
    long fp = 0;
    long fn = 0;
  };
  std::map<std::string, TopicTally> tallies;
  long total_tp = 0;
  long total_fp = 0;
  long total_fn = 0;

  for (const auto& prediction : predictions) {
    const Document* doc = gold.find(prediction.doc_id);
    if (doc == nullptr || !doc->gold_topics.has_value()) {
      fail(ErrorCode::MissingGold,
           "document \"" + prediction.doc_id + "\" has no gold labels");
    }
    const std::set<std::string>& gold_set = *doc->gold_topics;
    for (const auto& label : gold_set) {
      if (topic_names.count(label) == 0) {
        fail(ErrorCode::UnknownLabel, "document \"" + prediction.doc_id +
                                          "\": gold label \"" + label +
                                          "\" is not a model topic name");
      }
    }

    PerDocCounts counts;
    counts.doc_id = prediction.doc_id;
    for (const auto& name : prediction.covered_names) {
      if (gold_set.count(name)) {
        ++counts.tp;
        ++tallies[name].tp;
      } else {
        ++counts.fp;
        ++tallies[name].fp;
      }
    }
    for (const auto& name : gold_set) {
      if (prediction.covered_names.count(name) == 0) {
        ++counts.fn;
        ++tallies[name].fn;
      }
    }
    total_tp += counts.tp;
    total_fp += counts.fp;
    total_fn += counts.fn;
    report.per_doc.push_back(std::move(counts));
  }

  report.micro_precision = safe_ratio(total_tp, total_tp + total_fp);
  report.micro_recall = safe_ratio(total_tp, total_tp + total_fn);
  report.micro_f1 = harmonic(report.micro_precision, report.micro_recall);

  double f1_sum = 0.0;
  long supported = 0;
  for (const auto& [name, tally] : tallies) {
    TopicScore ts;
    ts.precision = safe_ratio(tally.tp, tally.tp + tally.fp);
    ts.recall = safe_ratio(tally.tp, tally.tp + tally.fn);
    ts.f1 = harmonic(ts.precision, ts.recall);
    ts.support = static_cast<int>(tally.tp + tally.fn);
    report.per_topic.emplace(name, ts);
    if (ts.support > 0) {
      f1_sum += ts.f1;
      ++supported;
    }
  }
  report.macro_f1 = supported == 0 ? 0.0 : f1_sum / static_cast<double>(supported);
  return report;
}

double aggregate_skills(const std::vector<EvalReport>& reports) {
  if (reports.empty()) fail(ErrorCode::InvalidConfig, "aggregate needs at least one report");
  double total = 0.0;
  for (const auto& report : reports) total += report.micro_f1;
  return total / static_cast<double>(reports.size());
}

std::string format_percent(double fraction) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f%%", fraction * 100.0);
  return buffer;
}

std::string render_eval_table(const EvalReport& report) {
  size_t name_width = 5;  // "topic"
  for (const auto& [name, ts] : report.per_topic) name_width = std::max(name_width, name.size());

  std::ostringstream out;
  if (!report.skill.empty()) out << "skill: " << report.skill << "\n";
  out << std::left << std::setw(static_cast<int>(name_width)) << "topic" << "  "
      << std::right << std::setw(9) << "precision" << "  " << std::setw(6) << "recall"
      << "  " << std::setw(6) << "f1" << "  " << std::setw(7) << "support" << "\n";
  for (const auto& [name, ts] : report.per_topic) {
    out << std::left << std::setw(static_cast<int>(name_width)) << name << "  "
        << std::right << std::setw(9) << format_percent(ts.precision) << "  "
        << std::setw(6) << format_percent(ts.recall) << "  " << std::setw(6)
        << format_percent(ts.f1) << "  " << std::setw(7) << ts.support << "\n";
  }
  out << "micro  precision " << format_percent(report.micro_precision) << "  recall "
      << format_percent(report.micro_recall) << "  f1 " << format_percent(report.micro_f1)
      << "\n";
  out << "macro  f1 " << format_percent(report.macro_f1) << "\n";
  return out.str();
}

void save_eval_report(const std::filesystem::path& path, const EvalReport& report) {
  json body;
  body["skill"] = report.skill;
  json per_doc = json::array();
  for (const auto& counts : report.per_doc) {
    per_doc.push_back(
        {{"id", counts.doc_id}, {"tp", counts.tp}, {"fp", counts.fp}, {"fn", counts.fn}});
  }
  body["per_doc"] = std::move(per_doc);
  body["micro_precision"] = report.micro_precision;
  body["micro_recall"] = report.micro_recall;
  body["micro_f1"] = report.micro_f1;
  body["macro_f1"] = report.macro_f1;
  json per_topic = json::object();
  for (const auto& [name, ts] : report.per_topic) {
    per_topic[name] = {{"precision", ts.precision},
                       {"recall", ts.recall},
                       {"f1", ts.f1},
                       {"support", ts.support}};
  }
  body["per_topic"] = std::move(per_topic);
  save_artifact(path, "eval-report", std::move(body));
}

EvalReport load_eval_report(const std::filesystem::path& path) {
  const json body = load_artifact(path, "eval-report");
  EvalReport report;
  report.skill = body.at("skill").get<std::string>();
  for (const auto& entry : body.at("per_doc")) {
    PerDocCounts counts;
    counts.doc_id = entry.at("id").get<std::string>();
    counts.tp = entry.at("tp").get<int>();
    counts.fp = entry.at("fp").get<int>();
    counts.fn = entry.at("fn").get<int>();
    report.per_doc.push_back(std::move(counts));
  }
  report.micro_precision = body.at("micro_precision").get<double>();
  report.micro_recall = body.at("micro_recall").get<double>();
  report.micro_f1 = body.at("micro_f1").get<double>();
  report.macro_f1 = body.at("macro_f1").get<double>();
  for (const auto& [name, entry] : body.at("per_topic").items()) {
    TopicScore ts;
    ts.precision = entry.at("precision").get<double>();
    ts.recall = entry.at("recall").get<double>();
    ts.f1 = entry.at("f1").get<double>();
    ts.support = entry.at("support").get<int>();
    report.per_topic.emplace(name, ts);
  }
  return report;
}

}  // namespace oertopics
