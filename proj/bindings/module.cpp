// Python bindings for the core pipeline: preprocessing, LDA training,
// coherence-driven model selection, covered-topic extraction, evaluation.
// Documents cross the boundary as (id, text) pairs; artifacts as paths.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oertopics/coherence.hpp"
#include "oertopics/errors.hpp"
#include "oertopics/evaluation.hpp"
#include "oertopics/modelselect.hpp"
#include "oertopics/preprocess.hpp"
#include "oertopics/topicmodel.hpp"

namespace py = pybind11;
using namespace oertopics;

namespace {

using DocPairs = std::vector<std::pair<std::string, std::string>>;
using LabelPairs = std::vector<std::pair<std::string, std::set<std::string>>>;

PreprocessResult preprocess_pairs(const DocPairs& docs, uint32_t min_df,
                                  double max_df_ratio) {
  Corpus corpus;
  corpus.skill = "python";
  for (const auto& [id, text] : docs) {
    corpus.documents.push_back(Document{id, "python", text, std::nullopt});
  }
  PreprocessOptions options;
  options.min_df = min_df;
  options.max_df_ratio = max_df_ratio;
  return preprocess_corpus(corpus, options);
}

LdaTemplate make_template(std::optional<double> alpha, double beta, uint32_t iterations,
                          uint32_t burn_in, uint64_t seed) {
  LdaTemplate tmpl;
  tmpl.alpha = alpha;
  tmpl.beta = beta;
  tmpl.iterations = iterations;
  tmpl.burn_in = burn_in;
  tmpl.base_seed = seed;
  return tmpl;
}

/// Trained model handle; wraps TopicModel plus the operations notebooks need.
struct PyModel {
  TopicModel model;

  uint32_t k() const { return model.k(); }
  size_t vocab_size() const { return model.vocab_size(); }
  std::vector<std::string> vocab() const { return model.vocab.terms; }
  std::map<uint32_t, std::string> names() const { return model.topic_names; }
  bool fully_named() const { return model.fully_named(); }

  std::vector<std::string> words(uint32_t topic, uint32_t n) const {
    return top_words(model, topic, n);
  }

  void set_names(const std::map<uint32_t, std::string>& names) {
    model = assign_topic_names(model, names);
  }

  std::vector<double> infer(const std::string& text, uint32_t iterations,
                            uint64_t seed) const {
    TokenStream stream{"query", normalize(text)};
    return infer_theta(model, stream, iterations, seed).theta;
  }

  py::dict extract(const std::string& text, double threshold, uint32_t iterations,
                   uint64_t seed) const {
    TokenStream stream{"query", normalize(text)};
    const ExtractionResult result =
        extract_covered_topics(model, stream, threshold, iterations, seed);
    py::dict out;
    out["theta"] = result.distribution.theta;
    out["covered"] = result.covered_names;
    return out;
  }

  void save(const std::filesystem::path& path, const std::string& skill) const {
    save_model(path, model, skill);
  }
};

PyModel train_pairs(const DocPairs& docs, uint32_t k, std::optional<double> alpha,
                    double beta, uint32_t iterations, uint32_t burn_in, uint64_t seed,
                    uint32_t min_df, double max_df_ratio) {
  const PreprocessResult prepared = preprocess_pairs(docs, min_df, max_df_ratio);
  const LdaConfig config =
      make_template(alpha, beta, iterations, burn_in, seed).materialize(k);
  return PyModel{train(prepared.matrix, config).model};
}

py::dict sweep_pairs(const DocPairs& docs, uint32_t k_min, uint32_t k_max,
                     std::optional<double> alpha, double beta, uint32_t iterations,
                     uint32_t burn_in, uint64_t seed, uint32_t min_df,
                     double max_df_ratio, uint32_t window_size, uint32_t top_n) {
  const PreprocessResult prepared = preprocess_pairs(docs, min_df, max_df_ratio);
  CoherenceParams params;
  params.window_size = window_size;
  params.top_n = top_n;
  const SweepReport report =
      sweep_k(prepared.matrix, prepared.streams, k_min, k_max,
              make_template(alpha, beta, iterations, burn_in, seed), params);
  py::list points;
  for (const auto& point : report.points) {
    py::dict entry;
    entry["k"] = point.k;
    entry["mean"] = point.mean;
    entry["per_topic"] = point.per_topic;
    points.append(std::move(entry));
  }
  py::dict out;
  out["best_k"] = report.best_k;
  out["points"] = std::move(points);
  return out;
}

double coherence_of(const std::vector<std::vector<std::string>>& docs,
                    const std::vector<std::string>& terms, uint32_t window_size,
                    double gamma) {
  std::vector<TokenStream> streams;
  streams.reserve(docs.size());
  for (size_t d = 0; d < docs.size(); ++d) {
    streams.push_back({"doc-" + std::to_string(d), docs[d]});
  }
  const WindowStats stats = count_windows(streams, window_size);
  return cv_coherence(terms, stats, gamma);
}

py::dict evaluate_pairs(const LabelPairs& predictions, const LabelPairs& gold,
                        const std::set<std::string>& topic_names) {
  std::vector<ExtractionResult> results;
  results.reserve(predictions.size());
  for (const auto& [id, names] : predictions) {
    ExtractionResult result;
    result.doc_id = id;
    result.covered_names = names;
    results.push_back(std::move(result));
  }
  Corpus corpus;
  corpus.skill = "python";
  for (const auto& [id, names] : gold) {
    corpus.documents.push_back(Document{id, "python", "", names});
  }
  const EvalReport report = score(results, corpus, topic_names);

  py::dict out;
  out["micro_precision"] = report.micro_precision;
  out["micro_recall"] = report.micro_recall;
  out["micro_f1"] = report.micro_f1;
  out["macro_f1"] = report.macro_f1;
  py::dict per_topic;
  for (const auto& [name, ts] : report.per_topic) {
    py::dict entry;
    entry["precision"] = ts.precision;
    entry["recall"] = ts.recall;
    entry["f1"] = ts.f1;
    entry["support"] = ts.support;
    per_topic[py::str(name)] = std::move(entry);
  }
  out["per_topic"] = std::move(per_topic);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Per-skill LDA topic models with coherence-based model selection";

  py::register_exception<Error>(m, "PipelineError");

  m.def("normalize", [](const std::string& text) { return normalize(text); },
        py::arg("text"), "Tokenize raw transcript text (URLs removed, lowercased).");
  m.def("default_stopwords", []() { return default_stopwords(); },
        "The bundled English stopword list.");

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("k", &PyModel::k)
      .def_property_readonly("vocab_size", &PyModel::vocab_size)
      .def_property_readonly("vocab", &PyModel::vocab)
      .def_property_readonly("names", &PyModel::names)
      .def_property_readonly("fully_named", &PyModel::fully_named)
      .def("top_words", &PyModel::words, py::arg("topic"), py::arg("n") = 10,
           "Highest-probability words of one topic, ties lexicographic.")
      .def("set_names", &PyModel::set_names, py::arg("names"),
           "Attach human topic names ({index: name}); names must be distinct.")
      .def("infer", &PyModel::infer, py::arg("text"), py::arg("iterations") = 100,
           py::arg("seed") = 0, "Document-topic mixture of unseen text.")
      .def("extract", &PyModel::extract, py::arg("text"), py::arg("threshold") = 0.15,
           py::arg("iterations") = 100, py::arg("seed") = 0,
           "Covered topic names of unseen text (requires set_names).")
      .def("save", &PyModel::save, py::arg("path"), py::arg("skill") = "python");

  m.def(
      "load_model",
      [](const std::filesystem::path& path) { return PyModel{load_model(path).model}; },
      py::arg("path"));

  m.def("train_model", &train_pairs, py::arg("docs"), py::arg("k"),
        py::arg("alpha") = std::nullopt, py::arg("beta") = 0.01,
        py::arg("iterations") = 1000, py::arg("burn_in") = 200, py::arg("seed") = 42,
        py::arg("min_df") = 2, py::arg("max_df_ratio") = 0.95,
        "Train an LDA model over (id, text) pairs. alpha=None applies the 50/k rule; "
        "the Gibbs seed is derived from (seed, k).");

  m.def("sweep", &sweep_pairs, py::arg("docs"), py::arg("k_min") = 2,
        py::arg("k_max") = 10, py::arg("alpha") = std::nullopt, py::arg("beta") = 0.01,
        py::arg("iterations") = 1000, py::arg("burn_in") = 200, py::arg("seed") = 42,
        py::arg("min_df") = 2, py::arg("max_df_ratio") = 0.95,
        py::arg("window_size") = 110, py::arg("top_n") = 10,
        "Score k_min..k_max by mean C_V coherence and report the best k.");

  m.def("cv_coherence", &coherence_of, py::arg("docs"), py::arg("terms"),
        py::arg("window_size") = 110, py::arg("gamma") = 1.0,
        "C_V coherence of a term set against tokenized documents.");

  m.def("evaluate", &evaluate_pairs, py::arg("predictions"), py::arg("gold"),
        py::arg("topic_names"),
        "Micro/macro precision-recall-F1 of covered-topic predictions.");
}
