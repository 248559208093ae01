#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "oertopics/errors.hpp"
#include "oertopics/modelselect.hpp"
#include "oertopics/rng.hpp"
#include "support/synthetic.hpp"
#include "support/testutil.hpp"

using namespace oertopics;

namespace {

LdaTemplate fast_template(uint64_t base_seed = 42) {
  LdaTemplate tmpl;
  tmpl.alpha = std::nullopt;
  tmpl.beta = 0.01;
  tmpl.iterations = 200;
  tmpl.burn_in = 50;
  tmpl.base_seed = base_seed;
  return tmpl;
}

CoherenceParams small_window_params() {
  CoherenceParams params;
  params.window_size = 20;
  params.top_n = 8;
  return params;
}

}  // namespace

TEST_CASE("materialize applies the 50/k rule and derives per-k seeds") {
  LdaTemplate tmpl = fast_template(42);

  const LdaConfig at5 = tmpl.materialize(5);
  CHECK(at5.k == 5);
  CHECK(at5.alpha == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(at5.beta == 0.01);
  CHECK(at5.iterations == 200);
  CHECK(at5.burn_in == 50);
  CHECK(at5.seed == derive_seed(42, uint64_t{5}));

  CHECK(tmpl.materialize(2).alpha == doctest::Approx(25.0).epsilon(1e-15));

  tmpl.alpha = 0.3;
  CHECK(tmpl.materialize(5).alpha == 0.3);
  CHECK(tmpl.materialize(9).alpha == 0.3);

  // per-k seeds over a full sweep range are pairwise distinct
  std::set<uint64_t> seeds;
  for (uint32_t k = 2; k <= 10; ++k) seeds.insert(fast_template().materialize(k).seed);
  CHECK(seeds.size() == 9);

  // template problems surface through the config validation
  LdaTemplate bad = fast_template();
  bad.beta = 0.0;
  CHECK_THROWS_AS(bad.materialize(3), Error);
  bad = fast_template();
  bad.burn_in = bad.iterations;
  CHECK_THROWS_AS(bad.materialize(3), Error);
}

TEST_CASE("select_best_k picks the maximum, ties to the smaller k") {
  auto point = [](uint32_t k, double mean) {
    return make_coherence_point(k, std::vector<double>(k, mean));
  };

  CHECK(select_best_k({point(2, 0.3), point(3, 0.7), point(4, 0.5)}) == 3);
  CHECK(select_best_k({point(2, 0.5), point(3, 0.5)}) == 2);
  CHECK(select_best_k({point(3, 0.5), point(2, 0.5)}) == 2);  // order-insensitive
  CHECK(select_best_k({point(4, -0.2)}) == 4);
  CHECK(select_best_k({point(5, 0.1), point(2, 0.1), point(9, 0.1)}) == 2);

  try {
    select_best_k({});
    FAIL("expected NoSweepReport");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSweepReport);
  }
}

TEST_CASE("sweep_k reports one coherence point per candidate k") {
  const auto planted = synthetic::make_planted(3, 30, 60, 50, 0.2, 17);
  const LdaTemplate tmpl = fast_template(42);
  const SweepReport report =
      sweep_k(planted.matrix, planted.streams, 2, 5, tmpl, small_window_params());

  CHECK(report.skill == "synthetic");
  CHECK(report.k_min == 2);
  CHECK(report.k_max == 5);
  CHECK(report.base_seed == 42);
  REQUIRE(report.points.size() == 4);
  for (size_t i = 0; i < report.points.size(); ++i) {
    const auto& point = report.points[i];
    CHECK(point.k == 2 + i);  // ascending k
    CHECK(point.per_topic.size() == point.k);
    CHECK(point.mean >= -1.0);
    CHECK(point.mean <= 1.0);
    CHECK(report.per_k_seed.at(point.k) == derive_seed(42, uint64_t{point.k}));
  }
  CHECK(report.best_k == select_best_k(report.points));
  CHECK(report.best_k >= 2);
  CHECK(report.best_k <= 5);

  // identical inputs reproduce the report bit for bit
  const SweepReport again =
      sweep_k(planted.matrix, planted.streams, 2, 5, tmpl, small_window_params());
  CHECK(again.best_k == report.best_k);
  for (size_t i = 0; i < report.points.size(); ++i) {
    CHECK(again.points[i].mean == report.points[i].mean);
    CHECK(again.points[i].per_topic == report.points[i].per_topic);
  }
}

TEST_CASE("sweep_k validates its range and annotates per-k failures") {
  const auto planted = synthetic::make_planted(2, 10, 10, 20, 0.5, 3);

  CHECK_THROWS_AS(sweep_k(planted.matrix, planted.streams, 1, 4, fast_template()), Error);
  CHECK_THROWS_AS(sweep_k(planted.matrix, planted.streams, 4, 4, fast_template()), Error);
  CHECK_THROWS_AS(sweep_k(planted.matrix, planted.streams, 5, 3, fast_template()), Error);

  CoherenceParams bad_params;
  bad_params.top_n = 1;
  CHECK_THROWS_AS(
      sweep_k(planted.matrix, planted.streams, 2, 4, fast_template(), bad_params), Error);

  // a corpus defect surfaces with the failing k in the message
  CorpusMatrix broken = planted.matrix;
  broken.doc_ids.push_back("hollow");
  broken.counts.push_back({});
  broken.tfidf.push_back({});
  try {
    sweep_k(broken, planted.streams, 2, 4, fast_template());
    FAIL("expected EmptyDocument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDocument);
    CHECK(std::string(e.what()).find("k=2") != std::string::npos);
    CHECK(std::string(e.what()).find("hollow") != std::string::npos);
  }
}

TEST_CASE("extract_covered_topics thresholds named topics, argmax as fallback") {
  const auto planted = synthetic::make_planted(3, 30, 60, 80, 0.2, 21);
  LdaConfig config;
  config.k = 3;
  config.alpha = 0.5;
  config.beta = 0.01;
  config.iterations = 200;
  config.burn_in = 50;
  config.seed = 5;
  TopicModel model = train(planted.matrix, config).model;

  // locate which learned topic carries each planted block before naming
  std::vector<uint32_t> matching;
  const double recovery = synthetic::greedy_match_cosine(planted.phi_star, model.phi, &matching);
  REQUIRE(recovery > 0.8);  // blocks are well separated; anything less is a sampler bug
  const std::vector<std::string> block_names = {"block-a", "block-b", "block-c"};
  std::map<uint32_t, std::string> names;
  for (uint32_t t = 0; t < 3; ++t) names[matching[t]] = block_names[t];
  const TopicModel named = assign_topic_names(model, names);

  // unnamed models are rejected
  try {
    extract_covered_topics(model, {"d", {"w00"}}, 0.15);
    FAIL("expected UnnamedTopics");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnnamedTopics);
  }
  // threshold domain is the open interval (0, 1)
  CHECK_THROWS_AS(extract_covered_topics(named, {"d", {"w00"}}, 0.0), Error);
  CHECK_THROWS_AS(extract_covered_topics(named, {"d", {"w00"}}, 1.0), Error);
  CHECK_THROWS_AS(extract_covered_topics(named, {"d", {"w00"}}, -0.2), Error);

  // a document purely from block 0 covers exactly that block's name
  TokenStream pure{"pure", {}};
  for (int i = 0; i < 60; ++i) pure.tokens.push_back(synthetic::term_name(i % 10));
  const ExtractionResult single = extract_covered_topics(named, pure, 0.4, 100, 9);
  CHECK(single.doc_id == "pure");
  CHECK(single.threshold == 0.4);
  CHECK(single.covered_names == std::set<std::string>{"block-a"});

  // a 50/50 mix of blocks 0 and 1 covers both names at threshold 0.3
  TokenStream mixed{"mixed", {}};
  for (int i = 0; i < 30; ++i) {
    mixed.tokens.push_back(synthetic::term_name(i % 10));        // block 0
    mixed.tokens.push_back(synthetic::term_name(10 + i % 10));   // block 1
  }
  const ExtractionResult both = extract_covered_topics(named, mixed, 0.3, 100, 9);
  CHECK(both.covered_names == std::set<std::string>{"block-a", "block-b"});

  // out-of-vocabulary document: theta is uniform 1/3, so a high threshold
  // empties the thresholded set and the argmax fallback returns topic 0
  const ExtractionResult fallback =
      extract_covered_topics(named, {"oov", {"zzz", "qqq"}}, 0.5, 100, 9);
  CHECK(fallback.distribution.covered.empty());
  REQUIRE(fallback.covered_names.size() == 1);
  CHECK(*fallback.covered_names.begin() == named.topic_names.at(0));

  // threshold <= 1/k can never strand a document (max theta >= mean = 1/k)
  for (int d = 0; d < 5; ++d) {
    const ExtractionResult covered =
        extract_covered_topics(named, planted.streams[d], 1.0 / 3.0, 100, 9);
    CHECK_FALSE(covered.distribution.covered.empty());
  }

  // raising the threshold only shrinks the covered set
  const auto loose = extract_covered_topics(named, mixed, 0.1, 100, 9);
  const auto middle = extract_covered_topics(named, mixed, 0.25, 100, 9);
  const auto tight = extract_covered_topics(named, mixed, 0.45, 100, 9);
  auto subset = [](const std::set<std::string>& inner, const std::set<std::string>& outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
  };
  CHECK(subset(tight.covered_names, middle.covered_names));
  CHECK(subset(middle.covered_names, loose.covered_names));
}

TEST_CASE("sweep report round trips through disk") {
  const auto planted = synthetic::make_planted(2, 10, 20, 30, 0.3, 8);
  CoherenceParams params;
  params.window_size = 10;
  params.top_n = 5;
  const SweepReport report = sweep_k(planted.matrix, planted.streams, 2, 4,
                                     fast_template(7), params);

  testutil::TempDir dir;
  const auto path = dir / "sweep.json";
  save_sweep_report(path, report);
  const SweepReport loaded = load_sweep_report(path);

  CHECK(loaded.skill == report.skill);
  CHECK(loaded.k_min == report.k_min);
  CHECK(loaded.k_max == report.k_max);
  CHECK(loaded.base_seed == report.base_seed);
  CHECK(loaded.best_k == report.best_k);
  CHECK(loaded.per_k_seed == report.per_k_seed);
  REQUIRE(loaded.points.size() == report.points.size());
  for (size_t i = 0; i < report.points.size(); ++i) {
    CHECK(loaded.points[i].k == report.points[i].k);
    CHECK(loaded.points[i].per_topic == report.points[i].per_topic);  // bit exact
    CHECK(loaded.points[i].mean == report.points[i].mean);
  }
}

TEST_CASE("sweep_csv emits a header and one parseable row per k") {
  SweepReport report;
  report.points.push_back(make_coherence_point(2, {0.25, 0.75}));
  report.points.push_back(make_coherence_point(3, {0.1, 0.2, 0.3}));
  report.best_k = 2;

  const std::string csv = sweep_csv(report);
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "k,mean_cv");

  size_t row = 0;
  while (std::getline(lines, line)) {
    REQUIRE(row < report.points.size());
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    CHECK(std::stoul(line.substr(0, comma)) == report.points[row].k);
    // 17 significant digits make the double round-trip exact
    CHECK(std::strtod(line.c_str() + comma + 1, nullptr) == report.points[row].mean);
    ++row;
  }
  CHECK(row == report.points.size());
}
