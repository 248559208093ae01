// oertopics: learn per-skill topic models from lecture transcripts, pick the
// topic count by C_V coherence, extract covered topics of new resources, and
// score extractions against expert labels.

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oertopics/corpus.hpp"
#include "oertopics/errors.hpp"
#include "oertopics/evaluation.hpp"
#include "oertopics/modelselect.hpp"
#include "oertopics/preprocess.hpp"
#include "oertopics/rng.hpp"
#include "oertopics/storage.hpp"
#include "oertopics/topicmodel.hpp"
#include "oertopics/workspace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace oertopics;

namespace {

// ---------------------------------------------------------------------------
// JSONL artifact helpers (matrix, token streams, predictions)

std::vector<std::string> nonempty_lines(const std::string& bytes) {
  std::vector<std::string> lines;
  std::istringstream in(bytes);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

json parse_json_line(const fs::path& path, size_t lineno, const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    fail(ErrorCode::MalformedRecord,
         path.string() + ":" + std::to_string(lineno) + ": " + e.what());
  }
}

void check_jsonl_header(const fs::path& path, const json& header,
                        const std::string& expected_type) {
  if (!header.is_object() || !header.contains("format_version") || !header.contains("type")) {
    fail(ErrorCode::MalformedRecord, path.string() + ": missing format_version/type header");
  }
  const int version = header.at("format_version").get<int>();
  if (version > kFormatVersion) {
    fail(ErrorCode::FormatVersionMismatch,
         path.string() + ": format_version " + std::to_string(version) +
             " is newer than supported " + std::to_string(kFormatVersion));
  }
  const std::string type = header.at("type").get<std::string>();
  if (type != expected_type) {
    fail(ErrorCode::MalformedRecord, path.string() + ": artifact type \"" + type +
                                         "\" where \"" + expected_type + "\" was expected");
  }
}

void save_matrix(const fs::path& path, const CorpusMatrix& matrix) {
  std::ostringstream out;
  json header;
  header["format_version"] = kFormatVersion;
  header["type"] = "corpus-matrix";
  header["skill"] = matrix.skill;
  header["vocab"] = matrix.vocab.terms;
  header["doc_freq"] = matrix.vocab.doc_freq;
  out << header.dump() << "\n";
  for (size_t d = 0; d < matrix.doc_count(); ++d) {
    json record;
    record["id"] = matrix.doc_ids[d];
    record["counts"] = matrix.counts[d];
    record["tfidf"] = matrix.tfidf[d];
    out << record.dump() << "\n";
  }
  atomic_write_file(path, out.str());
}

CorpusMatrix load_matrix(const fs::path& path) {
  const auto lines = nonempty_lines(read_text_file(path));
  if (lines.empty()) fail(ErrorCode::MalformedRecord, path.string() + ": empty artifact");
  const json header = parse_json_line(path, 1, lines[0]);
  check_jsonl_header(path, header, "corpus-matrix");

  CorpusMatrix matrix;
  matrix.skill = header.at("skill").get<std::string>();
  matrix.vocab = make_vocabulary(header.at("vocab").get<std::vector<std::string>>(),
                                 header.at("doc_freq").get<std::vector<uint32_t>>());
  for (size_t i = 1; i < lines.size(); ++i) {
    const json record = parse_json_line(path, i + 1, lines[i]);
    matrix.doc_ids.push_back(record.at("id").get<std::string>());
    matrix.counts.push_back(record.at("counts").get<SparseCounts>());
    matrix.tfidf.push_back(record.at("tfidf").get<SparseWeights>());
  }
  return matrix;
}

void save_streams(const fs::path& path, const std::string& skill,
                  const std::vector<TokenStream>& streams) {
  std::ostringstream out;
  json header;
  header["format_version"] = kFormatVersion;
  header["type"] = "token-streams";
  header["skill"] = skill;
  out << header.dump() << "\n";
  for (const auto& stream : streams) {
    json record;
    record["id"] = stream.doc_id;
    record["tokens"] = stream.tokens;
    out << record.dump() << "\n";
  }
  atomic_write_file(path, out.str());
}

std::vector<TokenStream> load_streams(const fs::path& path) {
  const auto lines = nonempty_lines(read_text_file(path));
  if (lines.empty()) fail(ErrorCode::MalformedRecord, path.string() + ": empty artifact");
  check_jsonl_header(path, parse_json_line(path, 1, lines[0]), "token-streams");
  std::vector<TokenStream> streams;
  for (size_t i = 1; i < lines.size(); ++i) {
    const json record = parse_json_line(path, i + 1, lines[i]);
    TokenStream stream;
    stream.doc_id = record.at("id").get<std::string>();
    stream.tokens = record.at("tokens").get<std::vector<std::string>>();
    streams.push_back(std::move(stream));
  }
  return streams;
}

void save_predictions(const fs::path& path, const std::string& skill, double threshold,
                      const std::vector<ExtractionResult>& results) {
  std::ostringstream out;
  json header;
  header["format_version"] = kFormatVersion;
  header["type"] = "predictions";
  header["skill"] = skill;
  header["threshold"] = threshold;
  out << header.dump() << "\n";
  for (const auto& result : results) {
    json record;
    record["id"] = result.doc_id;
    record["theta"] = result.distribution.theta;
    record["covered"] = result.covered_names;
    out << record.dump() << "\n";
  }
  atomic_write_file(path, out.str());
}

struct PredictionsFile {
  std::string skill;
  double threshold = 0.15;
  std::vector<ExtractionResult> results;
};

PredictionsFile load_predictions(const fs::path& path) {
  const auto lines = nonempty_lines(read_text_file(path));
  if (lines.empty()) fail(ErrorCode::MalformedRecord, path.string() + ": empty artifact");
  const json header = parse_json_line(path, 1, lines[0]);
  check_jsonl_header(path, header, "predictions");

  PredictionsFile file;
  file.skill = header.at("skill").get<std::string>();
  file.threshold = header.at("threshold").get<double>();
  for (size_t i = 1; i < lines.size(); ++i) {
    const json record = parse_json_line(path, i + 1, lines[i]);
    ExtractionResult result;
    result.doc_id = record.at("id").get<std::string>();
    result.threshold = file.threshold;
    result.distribution =
        make_distribution(result.doc_id, record.at("theta").get<std::vector<double>>(),
                          file.threshold);
    for (const auto& name : record.at("covered")) {
      result.covered_names.insert(name.get<std::string>());
    }
    file.results.push_back(std::move(result));
  }
  return file;
}

// Gold labels travel in the same plain JSONL exchange format they arrive in:
// one {"id": ..., "topics": [...]} record per document.
void save_gold(const fs::path& path, const Corpus& corpus) {
  std::ostringstream out;
  for (const auto& doc : corpus.documents) {
    if (!doc.gold_topics) continue;
    json record;
    record["id"] = doc.id;
    record["topics"] = *doc.gold_topics;
    out << record.dump() << "\n";
  }
  atomic_write_file(path, out.str());
}

// ---------------------------------------------------------------------------
// small shared utilities

std::string trim(const std::string& text) {
  size_t begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  size_t end = text.find_last_not_of(" \t");
  return text.substr(begin, end - begin + 1);
}

/// Name file: one "<topic index> <name>" per line; blank lines and lines
/// starting with '#' are skipped.
std::map<uint32_t, std::string> parse_name_file(const fs::path& path) {
  const auto bytes = read_text_file(path);
  std::map<uint32_t, std::string> names;
  std::istringstream in(bytes);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#') continue;
    const size_t space = entry.find_first_of(" \t");
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (space == std::string::npos) {
      fail(ErrorCode::MalformedRecord, where + ": expected \"<index> <name>\"");
    }
    uint32_t index = 0;
    try {
      size_t used = 0;
      index = static_cast<uint32_t>(std::stoul(entry.substr(0, space), &used));
      if (used != space) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      fail(ErrorCode::MalformedRecord, where + ": topic index is not a number");
    }
    const std::string name = trim(entry.substr(space + 1));
    if (name.empty()) fail(ErrorCode::MalformedRecord, where + ": empty topic name");
    if (!names.emplace(index, name).second) {
      fail(ErrorCode::MalformedRecord,
           where + ": duplicate entry for topic " + std::to_string(index));
    }
  }
  return names;
}

std::string topic_label(const TopicModel& model, uint32_t topic) {
  auto it = model.topic_names.find(topic);
  if (it != model.topic_names.end()) return it->second;
  return "topic-" + std::to_string(topic);
}

/// Table-1-style layout: one row per topic, its significant words beside it.
void print_topic_table(std::ostream& out, const TopicModel& model) {
  const uint32_t top_n = static_cast<uint32_t>(std::min<size_t>(10, model.vocab_size()));
  size_t label_width = 0;
  for (uint32_t t = 0; t < model.k(); ++t) {
    label_width = std::max(label_width, topic_label(model, t).size());
  }
  for (uint32_t t = 0; t < model.k(); ++t) {
    const auto words = top_words(model, t, top_n);
    out << std::left << std::setw(static_cast<int>(label_width)) << topic_label(model, t)
        << "  ";
    for (size_t i = 0; i < words.size(); ++i) {
      if (i > 0) out << ", ";
      out << words[i];
    }
    out << "\n";
  }
}

json topic_table_json(const TopicModel& model) {
  const uint32_t top_n = static_cast<uint32_t>(std::min<size_t>(10, model.vocab_size()));
  json topics = json::array();
  for (uint32_t t = 0; t < model.k(); ++t) {
    json entry;
    entry["index"] = t;
    auto it = model.topic_names.find(t);
    if (it != model.topic_names.end()) entry["name"] = it->second;
    entry["top_words"] = top_words(model, t, top_n);
    topics.push_back(std::move(entry));
  }
  return topics;
}

uint64_t pick(uint64_t flag_value, bool flag_given, uint64_t fallback) {
  return flag_given ? flag_value : fallback;
}

// ---------------------------------------------------------------------------
// subcommand state

struct GlobalArgs {
  std::string workspace_dir = "./workspace";
  std::string format = "table";

  bool json_output() const { return format == "json"; }
  Workspace open() const { return Workspace::open(workspace_dir); }
};

struct IngestArgs {
  std::string manifest;
  std::string labels;
  std::string skill;
  std::string stopword_file;
  uint32_t min_df = 0;
  double max_df_ratio = 0.0;
  CLI::Option* min_df_opt = nullptr;
  CLI::Option* max_df_opt = nullptr;
};

struct SweepArgs {
  std::string skill;
  uint32_t k_min = 2;
  uint32_t k_max = 10;
  uint64_t seed = 0;
  double alpha = 0.0;
  double beta = 0.0;
  uint32_t iterations = 0;
  uint32_t burn_in = 0;
  uint32_t window_size = 0;
  uint32_t top_n = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* iterations_opt = nullptr;
  CLI::Option* burn_in_opt = nullptr;
  CLI::Option* window_opt = nullptr;
  CLI::Option* top_n_opt = nullptr;
};

struct TrainArgs {
  std::string skill;
  uint32_t k = 0;
  std::string name_file;
  uint64_t seed = 0;
  double alpha = 0.0;
  double beta = 0.0;
  uint32_t iterations = 0;
  uint32_t burn_in = 0;
  CLI::Option* k_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* iterations_opt = nullptr;
  CLI::Option* burn_in_opt = nullptr;
};

struct InferArgs {
  std::string skill;
  std::string input;
  double threshold = 0.0;
  uint64_t seed = 0;
  uint32_t iterations = 0;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* iterations_opt = nullptr;
};

struct EvalArgs {
  std::string skill;
  std::string predictions;
  std::string labels;
};

struct SummarizeArgs {
  std::vector<std::string> skills;
};

// ---------------------------------------------------------------------------
// subcommand bodies

void cmd_ingest(const GlobalArgs& global, const IngestArgs& args) {
  Workspace ws = global.open();
  Corpus corpus = load_corpus(args.manifest);
  if (!args.skill.empty() && corpus.skill != args.skill) {
    fail(ErrorCode::UsageError, "manifest skill \"" + corpus.skill +
                                    "\" does not match --skill \"" + args.skill + "\"");
  }
  if (!args.labels.empty()) corpus = load_gold_labels(args.labels, corpus);

  PreprocessOptions options;
  if (args.min_df_opt->count() > 0) options.min_df = args.min_df;
  else options.min_df = ws.config().min_df;
  if (args.max_df_opt->count() > 0) options.max_df_ratio = args.max_df_ratio;
  else options.max_df_ratio = ws.config().max_df_ratio;
  if (!args.stopword_file.empty()) options.stopwords = load_stopwords(args.stopword_file);

  const PreprocessResult result = preprocess_corpus(corpus, options);
  save_matrix(ws.matrix_path(corpus.skill), result.matrix);
  save_streams(ws.tokens_path(corpus.skill), corpus.skill, result.streams);
  if (!args.labels.empty()) save_gold(ws.gold_path(corpus.skill), corpus);

  size_t tokens = 0;
  for (const auto& stream : result.streams) tokens += stream.tokens.size();
  if (global.json_output()) {
    json out;
    out["skill"] = corpus.skill;
    out["documents"] = corpus.documents.size();
    out["vocabulary"] = result.matrix.vocab.size();
    out["tokens"] = tokens;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "ingested skill " << corpus.skill << ": " << corpus.documents.size()
              << " documents, " << result.matrix.vocab.size() << " vocabulary terms, "
              << tokens << " tokens\n";
  }
}

void cmd_sweep(const GlobalArgs& global, const SweepArgs& args) {
  if (args.k_min < 2 || args.k_min >= args.k_max) {
    fail(ErrorCode::UsageError, "sweep range requires 2 <= k_min < k_max");
  }
  Workspace ws = global.open();
  const CorpusMatrix matrix = load_matrix(ws.matrix_path(args.skill));
  const auto streams = load_streams(ws.tokens_path(args.skill));

  LdaTemplate tmpl;
  if (args.alpha_opt->count() > 0) tmpl.alpha = args.alpha;
  else tmpl.alpha = ws.config().alpha;
  tmpl.beta = args.beta_opt->count() > 0 ? args.beta : ws.config().beta;
  tmpl.iterations =
      args.iterations_opt->count() > 0 ? args.iterations : ws.config().iterations;
  tmpl.burn_in = args.burn_in_opt->count() > 0 ? args.burn_in : ws.config().burn_in;
  tmpl.base_seed = pick(args.seed, args.seed_opt->count() > 0, ws.config().seed);

  CoherenceParams params;
  params.window_size =
      args.window_opt->count() > 0 ? args.window_size : ws.config().window_size;
  params.gamma = ws.config().gamma;
  params.epsilon = ws.config().epsilon;
  params.top_n = args.top_n_opt->count() > 0 ? args.top_n : ws.config().top_n;

  const SweepReport report = sweep_k(matrix, streams, args.k_min, args.k_max, tmpl, params);
  save_sweep_report(ws.sweep_report_path(args.skill), report);
  atomic_write_file(ws.sweep_csv_path(args.skill), sweep_csv(report));

  if (global.json_output()) {
    std::cout << read_text_file(ws.sweep_report_path(args.skill));
  } else {
    std::cout << "skill: " << report.skill << "\n";
    std::cout << std::setprecision(4);
    for (const auto& point : report.points) {
      std::cout << "k=" << std::setw(2) << point.k << "  mean C_V " << std::setw(7)
                << point.mean << "  per topic:";
      for (double value : point.per_topic) std::cout << " " << value;
      std::cout << "\n";
    }
    std::cout << "best k: " << report.best_k << "\n";
  }
}

void cmd_train(const GlobalArgs& global, const TrainArgs& args) {
  Workspace ws = global.open();
  const CorpusMatrix matrix = load_matrix(ws.matrix_path(args.skill));

  uint32_t k = args.k;
  if (args.k_opt->count() == 0) {
    const auto report_path = ws.sweep_report_path(args.skill);
    if (!fs::exists(report_path)) {
      fail(ErrorCode::NoSweepReport,
           "no sweep report for skill \"" + args.skill + "\"; run sweep first or pass --k");
    }
    k = load_sweep_report(report_path).best_k;
  }

  LdaTemplate tmpl;
  if (args.alpha_opt->count() > 0) tmpl.alpha = args.alpha;
  else tmpl.alpha = ws.config().alpha;
  tmpl.beta = args.beta_opt->count() > 0 ? args.beta : ws.config().beta;
  tmpl.iterations =
      args.iterations_opt->count() > 0 ? args.iterations : ws.config().iterations;
  tmpl.burn_in = args.burn_in_opt->count() > 0 ? args.burn_in : ws.config().burn_in;
  tmpl.base_seed = pick(args.seed, args.seed_opt->count() > 0, ws.config().seed);
  // same per-k derivation as the sweep, so training at best_k reproduces the
  // swept model exactly
  const LdaConfig config = tmpl.materialize(k);

  TrainResult trained = train(matrix, config, ws.config().threshold);
  TopicModel model = std::move(trained.model);
  if (!args.name_file.empty()) {
    model = assign_topic_names(model, parse_name_file(args.name_file));
  }
  save_model(ws.model_path(args.skill), model, args.skill);

  if (global.json_output()) {
    json out;
    out["skill"] = args.skill;
    out["k"] = k;
    out["seed"] = config.seed;
    out["topics"] = topic_table_json(model);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "skill: " << args.skill << "  k=" << k << "\n";
    print_topic_table(std::cout, model);
  }
}

void cmd_infer(const GlobalArgs& global, const InferArgs& args) {
  Workspace ws = global.open();
  const LoadedModel loaded = load_model(ws.model_path(args.skill));

  const double threshold =
      args.threshold_opt->count() > 0 ? args.threshold : ws.config().threshold;
  const uint32_t iterations =
      args.iterations_opt->count() > 0 ? args.iterations : ws.config().infer_iterations;
  const uint64_t base_seed = pick(args.seed, args.seed_opt->count() > 0, ws.config().seed);

  std::vector<fs::path> inputs;
  const fs::path input(args.input);
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.is_regular_file()) inputs.push_back(entry.path());
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) fail(ErrorCode::MissingFile, "no files in " + input.string());
  } else if (fs::is_regular_file(input)) {
    inputs.push_back(input);
  } else {
    fail(ErrorCode::MissingFile, input.string() + " is neither a file nor a directory");
  }

  std::vector<ExtractionResult> results;
  results.reserve(inputs.size());
  for (const auto& path : inputs) {
    TokenStream stream;
    stream.doc_id = path.stem().string();
    // stopwords never reach the vocabulary, so the lookup inside inference
    // filters them implicitly
    stream.tokens = normalize(read_text_file(path));
    const uint64_t doc_seed = derive_seed(base_seed, stream.doc_id);
    results.push_back(
        extract_covered_topics(loaded.model, stream, threshold, iterations, doc_seed));
  }

  save_predictions(ws.predictions_path(args.skill), args.skill, threshold, results);

  if (global.json_output()) {
    for (const auto& result : results) {
      json record;
      record["id"] = result.doc_id;
      record["theta"] = result.distribution.theta;
      record["covered"] = result.covered_names;
      std::cout << record.dump() << "\n";
    }
  } else {
    for (const auto& result : results) {
      std::cout << result.doc_id << ": ";
      bool first = true;
      for (const auto& name : result.covered_names) {
        if (!first) std::cout << ", ";
        std::cout << name;
        first = false;
      }
      std::cout << "\n";
    }
    std::cout << results.size() << " documents -> " << ws.predictions_path(args.skill).string()
              << "\n";
  }
}

void cmd_eval(const GlobalArgs& global, const EvalArgs& args) {
  Workspace ws = global.open();
  const LoadedModel loaded = load_model(ws.model_path(args.skill));

  const fs::path predictions_path =
      args.predictions.empty() ? ws.predictions_path(args.skill) : fs::path(args.predictions);
  const PredictionsFile predictions = load_predictions(predictions_path);

  fs::path labels_path(args.labels);
  if (args.labels.empty()) {
    labels_path = ws.gold_path(args.skill);
    if (!fs::exists(labels_path)) {
      fail(ErrorCode::MissingGold,
           "no gold labels for skill \"" + args.skill + "\"; pass --labels");
    }
  }

  Corpus corpus;
  corpus.skill = args.skill;
  for (const auto& result : predictions.results) {
    corpus.documents.push_back(Document{result.doc_id, args.skill, "", std::nullopt});
  }
  corpus = load_gold_labels(labels_path, corpus);

  std::set<std::string> topic_names;
  for (const auto& [topic, name] : loaded.model.topic_names) topic_names.insert(name);
  if (topic_names.empty()) {
    fail(ErrorCode::UnnamedTopics, "model for skill \"" + args.skill + "\" has no topic names");
  }

  const EvalReport report = score(predictions.results, corpus, topic_names, args.skill);
  save_eval_report(ws.eval_report_path(args.skill), report);

  if (global.json_output()) {
    std::cout << read_text_file(ws.eval_report_path(args.skill));
  } else {
    std::cout << render_eval_table(report);
  }
}

void cmd_summarize(const GlobalArgs& global, const SummarizeArgs& args) {
  Workspace ws = global.open();
  std::vector<std::string> skills = args.skills;
  if (skills.empty()) {
    const fs::path reports = ws.root() / "reports";
    const std::string suffix = ".eval.json";
    for (const auto& entry : fs::directory_iterator(reports)) {
      const std::string name = entry.path().filename().string();
      if (name.size() > suffix.size() &&
          name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
        skills.push_back(name.substr(0, name.size() - suffix.size()));
      }
    }
    std::sort(skills.begin(), skills.end());
    if (skills.empty()) {
      fail(ErrorCode::MissingFile, "no eval reports in " + reports.string());
    }
  }

  std::vector<EvalReport> reports;
  reports.reserve(skills.size());
  for (const auto& skill : skills) {
    reports.push_back(load_eval_report(ws.eval_report_path(skill)));
  }
  const double mean = aggregate_skills(reports);

  if (global.json_output()) {
    json out;
    json per_skill = json::object();
    for (size_t i = 0; i < skills.size(); ++i) {
      per_skill[skills[i]] = {{"micro_f1", reports[i].micro_f1},
                              {"macro_f1", reports[i].macro_f1}};
    }
    out["skills"] = std::move(per_skill);
    out["mean_micro_f1"] = mean;
    std::cout << out.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < skills.size(); ++i) {
      std::cout << skills[i] << ": micro F1 " << format_percent(reports[i].micro_f1) << "\n";
    }
    std::cout << "mean micro F1 over " << skills.size()
              << " skills: " << format_percent(mean) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Per-skill topic models over lecture transcripts: LDA training with "
               "coherence-driven topic-count selection, covered-topic extraction, and "
               "F1 scoring against expert labels"};
  app.require_subcommand(1);

  GlobalArgs global;
  app.add_option("--workspace", global.workspace_dir, "Workspace directory")
      ->envname("OERTOPICS_WORKSPACE")
      ->capture_default_str();
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  IngestArgs ingest;
  auto* ingest_cmd =
      app.add_subcommand("ingest", "Load a transcript manifest and persist the corpus");
  ingest_cmd->add_option("--manifest", ingest.manifest, "Manifest JSONL path")->required();
  ingest_cmd->add_option("--labels", ingest.labels, "Gold label JSONL path");
  ingest_cmd->add_option("--skill", ingest.skill, "Expected skill name (cross-check)");
  ingest_cmd->add_option("--stopword-file", ingest.stopword_file,
                         "Stopword list overriding the bundled one");
  ingest.min_df_opt =
      ingest_cmd->add_option("--min-df", ingest.min_df, "Minimum document frequency");
  ingest.max_df_opt = ingest_cmd->add_option("--max-df-ratio", ingest.max_df_ratio,
                                             "Maximum document-frequency ratio");

  SweepArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Score candidate topic counts by C_V coherence");
  sweep_cmd->add_option("--skill", sweep.skill, "Skill to sweep")->required();
  sweep_cmd->add_option("--k-min", sweep.k_min, "Smallest topic count")
      ->capture_default_str();
  sweep_cmd->add_option("--k-max", sweep.k_max, "Largest topic count")->capture_default_str();
  sweep.seed_opt = sweep_cmd->add_option("--seed", sweep.seed, "Base seed");
  sweep.alpha_opt = sweep_cmd->add_option("--alpha", sweep.alpha, "Document-topic prior");
  sweep.beta_opt = sweep_cmd->add_option("--beta", sweep.beta, "Topic-word prior");
  sweep.iterations_opt =
      sweep_cmd->add_option("--iterations", sweep.iterations, "Gibbs sweeps per model");
  sweep.burn_in_opt = sweep_cmd->add_option("--burn-in", sweep.burn_in, "Burn-in sweeps");
  sweep.window_opt =
      sweep_cmd->add_option("--window-size", sweep.window_size, "Coherence window width");
  sweep.top_n_opt =
      sweep_cmd->add_option("--top-n", sweep.top_n, "Words per topic entering C_V");

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train and persist the skill topic model");
  train_cmd->add_option("--skill", train_args.skill, "Skill to train")->required();
  train_args.k_opt =
      train_cmd->add_option("--k", train_args.k, "Topic count (default: sweep best_k)");
  train_cmd->add_option("--name-file", train_args.name_file,
                        "Topic name file (\"<index> <name>\" per line)");
  train_args.seed_opt = train_cmd->add_option("--seed", train_args.seed, "Base seed");
  train_args.alpha_opt =
      train_cmd->add_option("--alpha", train_args.alpha, "Document-topic prior");
  train_args.beta_opt = train_cmd->add_option("--beta", train_args.beta, "Topic-word prior");
  train_args.iterations_opt =
      train_cmd->add_option("--iterations", train_args.iterations, "Gibbs sweeps");
  train_args.burn_in_opt =
      train_cmd->add_option("--burn-in", train_args.burn_in, "Burn-in sweeps");

  InferArgs infer;
  auto* infer_cmd =
      app.add_subcommand("infer", "Extract covered topics of new transcripts");
  infer_cmd->add_option("--skill", infer.skill, "Skill model to apply")->required();
  infer_cmd->add_option("--input", infer.input, "Transcript file or directory")->required();
  infer.threshold_opt =
      infer_cmd->add_option("--threshold", infer.threshold, "Covered-topic threshold");
  infer.seed_opt = infer_cmd->add_option("--seed", infer.seed, "Base seed");
  infer.iterations_opt =
      infer_cmd->add_option("--iterations", infer.iterations, "Inference sweeps");

  EvalArgs eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "Score predictions against expert gold labels");
  eval_cmd->add_option("--skill", eval.skill, "Skill to evaluate")->required();
  eval_cmd->add_option("--predictions", eval.predictions,
                       "Predictions file (default: workspace predictions)");
  eval_cmd->add_option("--labels", eval.labels,
                       "Gold label JSONL (default: labels stored at ingest)");

  SummarizeArgs summarize;
  auto* summarize_cmd =
      app.add_subcommand("summarize", "Average micro F1 across evaluated skills");
  summarize_cmd->add_option("--skill", summarize.skills,
                            "Skill to include (repeatable; default: all evaluated)");

  ingest_cmd->callback([&]() { cmd_ingest(global, ingest); });
  sweep_cmd->callback([&]() { cmd_sweep(global, sweep); });
  train_cmd->callback([&]() { cmd_train(global, train_args); });
  infer_cmd->callback([&]() { cmd_infer(global, infer); });
  eval_cmd->callback([&]() { cmd_eval(global, eval); });
  summarize_cmd->callback([&]() { cmd_summarize(global, summarize); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::UsageError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
