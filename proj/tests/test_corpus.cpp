// Copyright 2026 the ccmask authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccmask/corpus.hpp"

#include <doctest.h>

#include "ccmask/errors.hpp"
#include "ccmask/util.hpp"
#include "test_util.hpp"

using namespace ccmask;
using ccmask::testing::TempDir;
using ccmask::testing::write_file;

TEST_CASE("tokenize splits whitespace and punctuation") {
  CHECK(tokenize("The virus spreads.") ==
        std::vector<std::string>{"the", "virus", "spreads", "."});
  CHECK(tokenize("(hello)") == std::vector<std::string>{"(", "hello", ")"});
  CHECK(tokenize("wait...") ==
        std::vector<std::string>{"wait", ".", ".", "."});
  CHECK(tokenize("don't stop") == std::vector<std::string>{"don't", "stop"});
  // Leading then core then trailing, trailing in original order.
  CHECK(tokenize("(COVID-19)!") ==
        std::vector<std::string>{"(", "covid-19", ")", "!"});
}

TEST_CASE("tokenize keeps hashtags, mentions, and URLs whole") {
  CHECK(tokenize("#StayHome http://x.co/a") ==
        std::vector<std::string>{"#stayhome", "http://x.co/a"});
  CHECK(tokenize("@User123 said HTTPS://X.CO") ==
        std::vector<std::string>{"@user123", "said", "HTTPS://X.CO"});
  // URL-prefixed units are kept whole, trailing punctuation included.
  CHECK(tokenize("www.example.com,") ==
        std::vector<std::string>{"www.example.com,"});
}

TEST_CASE("tokenize keeps emoticons and emoji whole") {
  CHECK(tokenize(":) :-( <3") == std::vector<std::string>{":)", ":-(", "<3"});
  CHECK(tokenize("nice :D") == std::vector<std::string>{"nice", ":D"});
  // Multi-byte sequences are never split; trailing ASCII punctuation is.
  CHECK(tokenize("\xF0\x9F\xA6\xA0!") ==
        std::vector<std::string>{"\xF0\x9F\xA6\xA0", "!"});
}

TEST_CASE("tokenize handles empty and degenerate input") {
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("   \t\n ") == std::vector<std::string>{});
  CHECK(tokenize("#") == std::vector<std::string>{"#"});
}

TEST_CASE("tokenize is deterministic on arbitrary bytes") {
  SplitMix64 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::string text;
    std::size_t len = rng.next_below(40);
    for (std::size_t i = 0; i < len; ++i) {
      // Printable ASCII plus a sprinkle of two-byte UTF-8.
      if (rng.next_bernoulli(0.1)) {
        text += static_cast<char>(0xC3);
        text += static_cast<char>(0xA0 + rng.next_below(20));
      } else {
        text += static_cast<char>(32 + rng.next_below(95));
      }
    }
    auto first = tokenize(text);
    auto second = tokenize(text);
    CHECK(first == second);
    for (const auto& token : first) CHECK(!token.empty());
  }
}

TEST_CASE("assign_topics keeps strictly-above-threshold topics") {
  CHECK(assign_topics({{"t1", 0.4}, {"t2", 0.05}}, 0.1, "fb") ==
        std::set<std::string>{"t1"});
  CHECK(assign_topics({{"t1", 0.05}, {"t2", 0.02}}, 0.1, "fb") ==
        std::set<std::string>{"fb"});
  // Exactly at the threshold does not qualify.
  CHECK(assign_topics({{"t1", 0.1}}, 0.1, "fb") ==
        std::set<std::string>{"fb"});
  CHECK_THROWS_AS(assign_topics({}, 1.0, "fb"), std::invalid_argument);
  CHECK_THROWS_AS(assign_topics({}, -0.1, "fb"), std::invalid_argument);
}

namespace {

GroupCatalog test_catalog() {
  GroupCatalog catalog =
      GroupCatalog::with_topics({"t_virus", "t_vax"}, "no_topic");
  return catalog;
}

}  // namespace

TEST_CASE("load_sentences reads valid records in order") {
  TempDir tmp;
  auto path = write_file(
      tmp.file("corpus.jsonl"),
      R"({"id": "a", "text": "the virus", "emotions": ["anger"], "topics": ["t_virus"]})"
      "\n"
      R"({"id": "b", "tokens": ["Vax", "works"], "emotions": [], "topics": ["t_vax"]})"
      "\n"
      R"({"id": "c", "text": "ok", "emotions": [], "topic_confidences": {"t_virus": 0.05}})"
      "\n");
  auto catalog = test_catalog();
  auto corpus = load_sentences(path, catalog);
  REQUIRE(corpus.size() == 3);
  CHECK(corpus[0].id == "a");
  CHECK(corpus[0].tokens == std::vector<std::string>{"the", "virus"});
  CHECK(corpus[0].emotion_groups == std::set<std::string>{"anger"});
  // Explicit tokens are preserved verbatim, no re-tokenization.
  CHECK(corpus[1].tokens == std::vector<std::string>{"Vax", "works"});
  // Low confidences resolve to the fallback topic.
  CHECK(corpus[2].topic_groups == std::set<std::string>{"no_topic"});
  for (const auto& s : corpus) CHECK(!s.topic_groups.empty());
}

TEST_CASE("load_sentences rejects bad records with line context") {
  TempDir tmp;
  auto catalog = test_catalog();

  auto check_error = [&](const std::string& record,
                         const std::string& needle) {
    auto path = write_file(tmp.file("bad.jsonl"), record + "\n");
    auto fresh = test_catalog();
    try {
      load_sentences(path, fresh);
      FAIL("expected ParseError for: " << record);
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  check_error(R"({"id": "a", "text": "x", "emotions": ["joy"], "topics": []})",
              "joy");
  check_error(R"({"id": "a", "text": "x", "emotions": [], "topics": ["tX"]})",
              "tX");
  check_error(R"({"id": "a", "emotions": [], "topics": []})", "text");
  check_error(R"({"id": "a", "text": "x", "emotions": []})",
              "exactly one of");
  check_error(
      R"({"id": "a", "text": "x", "emotions": [], "topics": [], "topic_confidences": {}})",
      "exactly one of");
  check_error(R"({"id": "a", "text": " ", "emotions": [], "topics": []})",
              "empty token list");
  check_error(
      R"({"id": "a", "tokens": ["ok", "bad token"], "emotions": [], "topics": []})",
      "whitespace");
  check_error("{not json", "malformed");
  check_error(
      R"({"id": "a", "text": "x", "emotions": [], "topics": [], "gold_emotions": ["none", "anger"]})",
      "none");
  check_error(
      R"({"id": "a", "text": "x", "emotions": [], "topics": [], "gold_emotions": ["anger"], "gold_bias_prone": ["anger"]})",
      "duplicates");

  // Duplicate ids are caught on the second line.
  auto path = write_file(
      tmp.file("dup.jsonl"),
      R"({"id": "a", "text": "x", "emotions": [], "topics": []})"
      "\n"
      R"({"id": "a", "text": "y", "emotions": [], "topics": []})"
      "\n");
  auto fresh = test_catalog();
  try {
    load_sentences(path, fresh);
    FAIL("expected duplicate id error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("load_sentences collects topics in open mode") {
  TempDir tmp;
  auto path = write_file(
      tmp.file("corpus.jsonl"),
      R"({"id": "a", "text": "x", "emotions": [], "topics": ["fresh_topic"]})"
      "\n");
  auto catalog = GroupCatalog::open();
  auto corpus = load_sentences(path, catalog);
  CHECK(corpus[0].topic_groups == std::set<std::string>{"fresh_topic"});
  CHECK(catalog.has_topic("fresh_topic"));
}

TEST_CASE("load_sentences skips a mask header record") {
  TempDir tmp;
  auto path = write_file(
      tmp.file("masked.jsonl"),
      R"({"masked_tokens_applied": ["virus"], "replacement": "it"})"
      "\n"
      R"({"id": "a", "text": "the it", "emotions": [], "topics": []})"
      "\n");
  auto catalog = test_catalog();
  auto corpus = load_sentences(path, catalog);
  REQUIRE(corpus.size() == 1);
  CHECK(corpus[0].id == "a");
}

TEST_CASE("write_sentences round-trips a corpus") {
  TempDir tmp;
  auto catalog = test_catalog();
  auto path = write_file(
      tmp.file("corpus.jsonl"),
      R"({"id": "a", "text": "the virus", "emotions": ["anger"], "topics": ["t_virus"], "gold_emotions": ["anger"], "gold_bias_prone": ["fear"]})"
      "\n");
  auto corpus = load_sentences(path, catalog);
  write_sentences(tmp.file("out.jsonl"), corpus);
  auto fresh = test_catalog();
  auto reloaded = load_sentences(tmp.file("out.jsonl"), fresh);
  REQUIRE(reloaded.size() == 1);
  CHECK(reloaded[0].tokens == corpus[0].tokens);
  CHECK(reloaded[0].emotion_groups == corpus[0].emotion_groups);
  CHECK(reloaded[0].gold_emotions == corpus[0].gold_emotions);
  CHECK(reloaded[0].gold_bias_prone == corpus[0].gold_bias_prone);
}

TEST_CASE("build_vocabulary ranks by frequency then lexicographically") {
  Corpus corpus;
  auto sentence = [](std::string id, std::vector<std::string> tokens) {
    Sentence s;
    s.id = std::move(id);
    s.tokens = std::move(tokens);
    s.topic_groups = {"no_topic"};
    return s;
  };
  corpus.push_back(sentence("1", {"a", "a", "b", "c"}));
  corpus.push_back(sentence("2", {"a", "a", "a", "b", "b"}));

  auto vocab = build_vocabulary(corpus, 2);
  CHECK(vocab.tokens == std::vector<std::string>{"a", "b"});
  CHECK(vocab.frequency == std::vector<std::uint64_t>{5, 3});

  // Within-sentence duplicates count toward frequency.
  corpus.push_back(sentence("3", {"c", "c", "c", "c"}));
  vocab = build_vocabulary(corpus, 3);
  CHECK(vocab.tokens == std::vector<std::string>{"a", "c", "b"});

  // Ties break lexicographically.
  Corpus tied;
  tied.push_back(sentence("1", {"zed", "ant"}));
  auto tie_vocab = build_vocabulary(tied, 1);
  CHECK(tie_vocab.tokens == std::vector<std::string>{"ant"});

  // max_size larger than the distinct token count keeps everything.
  auto all = build_vocabulary(corpus, 100);
  CHECK(all.size() == 3);
  CHECK(all.rank("a") == 0);
  CHECK(all.rank("missing") == -1);

  CHECK_THROWS_AS(build_vocabulary({}, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_vocabulary(corpus, 0), std::invalid_argument);
}

TEST_CASE("vocabulary ordering is total") {
  SplitMix64 rng(13);
  Corpus corpus;
  Sentence s;
  s.id = "1";
  s.topic_groups = {"no_topic"};
  for (int i = 0; i < 300; ++i) {
    s.tokens.push_back("tok" + std::to_string(rng.next_below(60)));
  }
  corpus.push_back(s);
  auto vocab = build_vocabulary(corpus, 1000);
  for (std::size_t i = 1; i < vocab.size(); ++i) {
    const bool ordered =
        vocab.frequency[i - 1] > vocab.frequency[i] ||
        (vocab.frequency[i - 1] == vocab.frequency[i] &&
         vocab.tokens[i - 1] < vocab.tokens[i]);
    CHECK(ordered);
  }
}

TEST_CASE("catalog validation") {
  GroupCatalog catalog;
  catalog.emotion_groups = {"anger", "t_x"};
  catalog.topic_groups = {"t_x", "no_topic"};
  CHECK_THROWS_AS(catalog.validate(), std::invalid_argument);

  GroupCatalog missing_fallback;
  missing_fallback.topic_groups = {"t_x"};
  missing_fallback.fallback_topic = "no_topic";
  CHECK_THROWS_AS(missing_fallback.validate(), std::invalid_argument);

  CHECK_THROWS_AS(GroupCatalog::with_topics({kUnionGroup}),
                  std::invalid_argument);
}
