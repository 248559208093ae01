#include <doctest.h>

#include <functional>
#include <string>

#include "oertopics/corpus.hpp"
#include "oertopics/errors.hpp"
#include "support/testutil.hpp"

using namespace oertopics;
using testutil::TempDir;
using testutil::write_file;

namespace {

ErrorCode code_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error to be thrown");
  return ErrorCode::IoError;
}

void write_manifest_corpus(const TempDir& dir) {
  write_file(dir / "texts/a.txt", "alpha beta gamma");
  write_file(dir / "texts/b.txt", "delta epsilon");
  write_file(dir / "manifest.jsonl",
             R"({"id": "doc-a", "skill": "demo", "path": "texts/a.txt"})"
             "\n\n"
             R"({"id": "doc-b", "skill": "demo", "path": "texts/b.txt"})"
             "\n");
}

}  // namespace

TEST_CASE("load_corpus reads records in manifest order") {
  TempDir dir;
  write_manifest_corpus(dir);
  const Corpus corpus = load_corpus(dir / "manifest.jsonl");
  CHECK(corpus.skill == "demo");
  REQUIRE(corpus.documents.size() == 2);
  CHECK(corpus.documents[0].id == "doc-a");
  CHECK(corpus.documents[0].text == "alpha beta gamma");
  CHECK(corpus.documents[1].id == "doc-b");
  CHECK(corpus.documents[1].text == "delta epsilon");
  CHECK_FALSE(corpus.documents[0].gold_topics.has_value());
  CHECK(corpus.find("doc-b") == &corpus.documents[1]);
  CHECK(corpus.find("doc-zz") == nullptr);
}

TEST_CASE("load_corpus resolves transcript paths relative to the manifest") {
  TempDir dir;
  write_file(dir / "nested/inner/texts/a.txt", "hello");
  write_file(dir / "nested/inner/manifest.jsonl",
             R"({"id": "x", "skill": "s", "path": "texts/a.txt"})"
             "\n");
  const Corpus corpus = load_corpus(dir / "nested/inner/manifest.jsonl");
  CHECK(corpus.documents.at(0).text == "hello");
}

TEST_CASE("load_corpus error cases carry codes and line numbers") {
  TempDir dir;
  write_manifest_corpus(dir);

  SUBCASE("missing manifest") {
    CHECK(code_of([&] { load_corpus(dir / "nope.jsonl"); }) == ErrorCode::MissingFile);
  }
  SUBCASE("empty manifest") {
    write_file(dir / "empty.jsonl", "\n  \n");
    CHECK(code_of([&] { load_corpus(dir / "empty.jsonl"); }) == ErrorCode::EmptyManifest);
  }
  SUBCASE("duplicate id") {
    write_file(dir / "dup.jsonl",
               R"({"id": "d", "skill": "s", "path": "texts/a.txt"})"
               "\n"
               R"({"id": "d", "skill": "s", "path": "texts/b.txt"})"
               "\n");
    CHECK(code_of([&] { load_corpus(dir / "dup.jsonl"); }) == ErrorCode::DuplicateId);
  }
  SUBCASE("missing transcript reports the line") {
    write_file(dir / "miss.jsonl",
               R"({"id": "d", "skill": "s", "path": "texts/gone.txt"})"
               "\n");
    try {
      load_corpus(dir / "miss.jsonl");
      FAIL("expected MissingFile");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingFile);
      CHECK(std::string(e.what()).find("miss.jsonl:1") != std::string::npos);
    }
  }
  SUBCASE("mixed skills rejected") {
    write_file(dir / "mixed.jsonl",
               R"({"id": "d1", "skill": "s1", "path": "texts/a.txt"})"
               "\n"
               R"({"id": "d2", "skill": "s2", "path": "texts/b.txt"})"
               "\n");
    CHECK(code_of([&] { load_corpus(dir / "mixed.jsonl"); }) == ErrorCode::MalformedRecord);
  }
  SUBCASE("broken json names the line") {
    write_file(dir / "broken.jsonl",
               R"({"id": "d1", "skill": "s", "path": "texts/a.txt"})"
               "\n{not json\n");
    try {
      load_corpus(dir / "broken.jsonl");
      FAIL("expected MalformedRecord");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedRecord);
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
  }
  SUBCASE("missing fields rejected") {
    write_file(dir / "nofield.jsonl", R"({"id": "d1", "path": "texts/a.txt"})"
                                      "\n");
    CHECK(code_of([&] { load_corpus(dir / "nofield.jsonl"); }) == ErrorCode::MalformedRecord);
  }
  SUBCASE("invalid utf8 transcript rejected") {
    write_file(dir / "texts/bad.txt", std::string("abc\xff\xfe def"));
    write_file(dir / "badutf.jsonl",
               R"({"id": "d", "skill": "s", "path": "texts/bad.txt"})"
               "\n");
    CHECK(code_of([&] { load_corpus(dir / "badutf.jsonl"); }) == ErrorCode::MalformedRecord);
  }
}

TEST_CASE("load_gold_labels attaches label sets without touching text") {
  TempDir dir;
  write_manifest_corpus(dir);
  const Corpus corpus = load_corpus(dir / "manifest.jsonl");

  write_file(dir / "labels.jsonl",
             R"({"id": "doc-a", "topics": ["t1", "t2", "t1"]})"
             "\n");
  const Corpus labeled = load_gold_labels(dir / "labels.jsonl", corpus);

  REQUIRE(labeled.documents.size() == 2);
  CHECK(labeled.documents[0].text == corpus.documents[0].text);
  REQUIRE(labeled.documents[0].gold_topics.has_value());
  // duplicates collapse because labels form a set
  CHECK(*labeled.documents[0].gold_topics == std::set<std::string>{"t1", "t2"});
  CHECK_FALSE(labeled.documents[1].gold_topics.has_value());
  // the input corpus is untouched
  CHECK_FALSE(corpus.documents[0].gold_topics.has_value());
}

TEST_CASE("load_gold_labels error cases") {
  TempDir dir;
  write_manifest_corpus(dir);
  const Corpus corpus = load_corpus(dir / "manifest.jsonl");

  SUBCASE("unknown document id") {
    write_file(dir / "labels.jsonl", R"({"id": "ghost", "topics": ["t"]})"
                                     "\n");
    CHECK(code_of([&] { load_gold_labels(dir / "labels.jsonl", corpus); }) ==
          ErrorCode::UnknownDocument);
  }
  SUBCASE("second record for one document") {
    write_file(dir / "labels.jsonl",
               R"({"id": "doc-a", "topics": ["t"]})"
               "\n"
               R"({"id": "doc-a", "topics": ["u"]})"
               "\n");
    CHECK(code_of([&] { load_gold_labels(dir / "labels.jsonl", corpus); }) ==
          ErrorCode::DuplicateId);
  }
  SUBCASE("empty topic list") {
    write_file(dir / "labels.jsonl", R"({"id": "doc-a", "topics": []})"
                                     "\n");
    CHECK(code_of([&] { load_gold_labels(dir / "labels.jsonl", corpus); }) ==
          ErrorCode::EmptyLabelSet);
  }
  SUBCASE("missing labels file") {
    CHECK(code_of([&] { load_gold_labels(dir / "gone.jsonl", corpus); }) ==
          ErrorCode::MissingFile);
  }
}

TEST_CASE("utf8_valid accepts real UTF-8 and rejects malformed bytes") {
  CHECK(utf8_valid(""));
  CHECK(utf8_valid("plain ascii text"));
  CHECK(utf8_valid("caf\xc3\xa9"));                   // é
  CHECK(utf8_valid("\xe2\x82\xac"));                  // €
  CHECK(utf8_valid("\xf0\x9f\x98\x80"));              // emoji
  CHECK_FALSE(utf8_valid("\xff"));                    // invalid lead byte
  CHECK_FALSE(utf8_valid("\xc3"));                    // truncated sequence
  CHECK_FALSE(utf8_valid("\xc0\xaf"));                // overlong '/'
  CHECK_FALSE(utf8_valid("\xe0\x80\x80"));            // overlong NUL
  CHECK_FALSE(utf8_valid("\xed\xa0\x80"));            // UTF-16 surrogate
  CHECK_FALSE(utf8_valid("\xf4\x90\x80\x80"));        // beyond U+10FFFF
  CHECK_FALSE(utf8_valid("ok\x80stray"));             // stray continuation
}
