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

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "ccmask/errors.hpp"

namespace ccmask {

using nlohmann::json;

const std::vector<std::string>& gold_emotion_labels() {
  static const std::vector<std::string> labels = {
      "anger", "disgust", "anticipation", "love",
      "sadness", "joy",    "fear",        "none"};
  return labels;
}

GroupCatalog GroupCatalog::with_topics(std::vector<std::string> topics,
                                       std::string fallback) {
  GroupCatalog catalog;
  catalog.topic_groups = std::move(topics);
  catalog.fallback_topic = fallback;
  if (std::find(catalog.topic_groups.begin(), catalog.topic_groups.end(),
                fallback) == catalog.topic_groups.end()) {
    catalog.topic_groups.push_back(std::move(fallback));
  }
  catalog.validate();
  return catalog;
}

GroupCatalog GroupCatalog::open(std::string fallback) {
  GroupCatalog catalog;
  catalog.topic_groups = {fallback};
  catalog.fallback_topic = std::move(fallback);
  catalog.open_topics = true;
  catalog.validate();
  return catalog;
}

bool GroupCatalog::has_emotion(const std::string& g) const {
  return std::find(emotion_groups.begin(), emotion_groups.end(), g) !=
         emotion_groups.end();
}

bool GroupCatalog::has_topic(const std::string& g) const {
  return std::find(topic_groups.begin(), topic_groups.end(), g) !=
         topic_groups.end();
}

void GroupCatalog::validate() const {
  if (emotion_groups.empty()) {
    throw std::invalid_argument("catalog needs at least one emotion group");
  }
  if (!has_topic(fallback_topic)) {
    throw std::invalid_argument("fallback topic \"" + fallback_topic +
                                "\" missing from topic groups");
  }
  for (const auto& g : emotion_groups) {
    if (has_topic(g)) {
      throw std::invalid_argument("group \"" + g +
                                  "\" is both an emotion and a topic");
    }
    if (g == kUnionGroup) {
      throw std::invalid_argument("group name \"" + g + "\" is reserved");
    }
  }
  for (const auto& g : topic_groups) {
    if (g == kUnionGroup) {
      throw std::invalid_argument("group name \"" + g + "\" is reserved");
    }
  }
}

namespace {

bool is_ascii_punct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char a = s[i], b = prefix[i];
    if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
    if (a != b) return false;
  }
  return true;
}

bool is_url(std::string_view unit) {
  return starts_with_ci(unit, "http://") || starts_with_ci(unit, "https://") ||
         starts_with_ci(unit, "www.");
}

bool is_emoticon(std::string_view unit) {
  // Sideways faces (with optional nose and reversed variants) and hearts.
  static const std::regex pattern(
      R"(^(?:[<>]?[:;=8][-^o']?[\)\(\[\]dDpPoO3/\\|*@$]+|[\)\(\[\]dDpPoO$][-^o']?[:;=8][<>]?|<[/\\]?3)$)");
  return std::regex_match(unit.begin(), unit.end(), pattern);
}

void emit_unit(std::string_view unit, std::vector<std::string>& out) {
  if (unit.empty()) return;
  if (unit.front() == '#' || unit.front() == '@') {
    out.push_back(ascii_lower(unit));
    return;
  }
  if (is_url(unit) || is_emoticon(unit)) {
    out.emplace_back(unit);
    return;
  }
  std::size_t begin = 0;
  std::size_t end = unit.size();
  while (begin < end && is_ascii_punct(unit[begin])) {
    out.push_back(std::string(1, unit[begin]));
    ++begin;
  }
  std::size_t core_end = end;
  while (core_end > begin && is_ascii_punct(unit[core_end - 1])) --core_end;
  if (core_end > begin) {
    out.push_back(ascii_lower(unit.substr(begin, core_end - begin)));
  }
  for (std::size_t i = core_end; i < end; ++i) {
    out.push_back(std::string(1, unit[i]));
  }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > start) emit_unit(text.substr(start, i - start), out);
  }
  return out;
}

std::set<std::string> assign_topics(
    const std::map<std::string, double>& confidences, double threshold,
    const std::string& fallback) {
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("topic threshold must be in [0, 1)");
  }
  std::set<std::string> topics;
  for (const auto& [topic, confidence] : confidences) {
    if (confidence > threshold) topics.insert(topic);
  }
  if (topics.empty()) topics.insert(fallback);
  return topics;
}

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line,
                       const std::string& msg) {
  throw ParseError(path, line, msg);
}

std::vector<std::string> string_array(const json& value,
                                      const std::string& field,
                                      const std::string& path,
                                      std::size_t line) {
  if (!value.is_array()) fail(path, line, "\"" + field + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      fail(path, line, "\"" + field + "\" must contain only strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

Corpus load_sentences(const std::string& path, GroupCatalog& catalog,
                      double topic_threshold) {
  catalog.validate();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);

  Corpus corpus;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;

  const auto& gold_labels = gold_emotion_labels();
  auto is_gold_label = [&](const std::string& g) {
    return std::find(gold_labels.begin(), gold_labels.end(), g) !=
           gold_labels.end();
  };

  while (std::getline(in, line)) {
    ++line_no;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(path, line_no, std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) fail(path, line_no, "record must be a JSON object");

    if (!rec.contains("id")) {
      if (rec.contains("masked_tokens_applied")) continue;  // mask header
      fail(path, line_no, "record missing \"id\"");
    }
    if (!rec["id"].is_string() || rec["id"].get<std::string>().empty()) {
      fail(path, line_no, "\"id\" must be a non-empty string");
    }

    Sentence s;
    s.id = rec["id"].get<std::string>();
    if (!seen_ids.insert(s.id).second) {
      fail(path, line_no, "duplicate sentence id \"" + s.id + "\"");
    }

    if (rec.contains("text")) {
      if (!rec["text"].is_string()) {
        fail(path, line_no, "\"text\" must be a string");
      }
      s.text = rec["text"].get<std::string>();
    }

    if (rec.contains("tokens")) {
      s.tokens = string_array(rec["tokens"], "tokens", path, line_no);
      for (const auto& t : s.tokens) {
        if (t.empty()) fail(path, line_no, "empty string in \"tokens\"");
        for (char c : t) {
          if (is_ascii_space(c)) {
            fail(path, line_no,
                 "token \"" + t + "\" contains whitespace");
          }
        }
      }
    } else if (rec.contains("text")) {
      s.tokens = tokenize(s.text);
    } else {
      fail(path, line_no, "record needs \"text\" or \"tokens\"");
    }
    if (s.tokens.empty()) fail(path, line_no, "empty token list");

    if (!rec.contains("emotions")) {
      fail(path, line_no, "record missing \"emotions\"");
    }
    for (const auto& g :
         string_array(rec["emotions"], "emotions", path, line_no)) {
      if (!catalog.has_emotion(g)) {
        fail(path, line_no, "unknown emotion group \"" + g + "\"");
      }
      s.emotion_groups.insert(g);
    }

    const bool has_topics = rec.contains("topics");
    const bool has_confidences = rec.contains("topic_confidences");
    if (has_topics == has_confidences) {
      fail(path, line_no,
           "record needs exactly one of \"topics\" or \"topic_confidences\"");
    }
    if (has_topics) {
      for (const auto& g :
           string_array(rec["topics"], "topics", path, line_no)) {
        if (!catalog.has_topic(g)) {
          if (!catalog.open_topics) {
            fail(path, line_no, "unknown topic group \"" + g + "\"");
          }
          if (g == kUnionGroup) {
            fail(path, line_no, "topic name \"" + g + "\" is reserved");
          }
          catalog.topic_groups.push_back(g);
        }
        s.topic_groups.insert(g);
      }
      if (s.topic_groups.empty()) {
        s.topic_groups.insert(catalog.fallback_topic);
      }
    } else {
      if (!rec["topic_confidences"].is_object()) {
        fail(path, line_no, "\"topic_confidences\" must be an object");
      }
      std::map<std::string, double> confidences;
      for (const auto& [topic, value] : rec["topic_confidences"].items()) {
        if (!value.is_number()) {
          fail(path, line_no, "non-numeric confidence for topic \"" + topic +
                                  "\"");
        }
        double c = value.get<double>();
        if (c < 0.0 || c > 1.0) {
          fail(path, line_no, "confidence for topic \"" + topic +
                                  "\" outside [0, 1]");
        }
        if (!catalog.has_topic(topic)) {
          if (!catalog.open_topics) {
            fail(path, line_no, "unknown topic group \"" + topic + "\"");
          }
          if (topic == kUnionGroup) {
            fail(path, line_no, "topic name \"" + topic + "\" is reserved");
          }
          catalog.topic_groups.push_back(topic);
        }
        confidences[topic] = c;
      }
      s.topic_groups =
          assign_topics(confidences, topic_threshold, catalog.fallback_topic);
    }

    if (rec.contains("gold_emotions")) {
      auto gold =
          string_array(rec["gold_emotions"], "gold_emotions", path, line_no);
      if (gold.empty()) {
        fail(path, line_no,
             "\"gold_emotions\" must not be empty; omit the field instead");
      }
      for (const auto& g : gold) {
        if (!is_gold_label(g)) {
          fail(path, line_no, "unknown gold emotion \"" + g + "\"");
        }
        s.gold_emotions.insert(g);
      }
      if (s.gold_emotions.count(kGoldNone) && s.gold_emotions.size() > 1) {
        fail(path, line_no, "\"none\" cannot combine with other gold emotions");
      }
      s.has_gold = true;
    }

    if (rec.contains("gold_bias_prone")) {
      if (!s.has_gold) {
        fail(path, line_no, "\"gold_bias_prone\" requires \"gold_emotions\"");
      }
      for (const auto& g : string_array(rec["gold_bias_prone"],
                                        "gold_bias_prone", path, line_no)) {
        if (!is_gold_label(g) || g == kGoldNone) {
          fail(path, line_no, "invalid bias-prone emotion \"" + g + "\"");
        }
        if (s.gold_emotions.count(g)) {
          fail(path, line_no, "bias-prone flag \"" + g +
                                  "\" duplicates a gold emotion");
        }
        s.gold_bias_prone.insert(g);
      }
    }

    corpus.push_back(std::move(s));
  }
  return corpus;
}

void write_sentences(const std::string& path, const Corpus& corpus,
                     const std::vector<std::string>* masked_tokens,
                     const std::string* replacement) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  if (masked_tokens != nullptr) {
    json header;
    header["masked_tokens_applied"] = *masked_tokens;
    if (replacement != nullptr) header["replacement"] = *replacement;
    out << header.dump() << "\n";
  }
  for (const auto& s : corpus) {
    json rec;
    rec["id"] = s.id;
    if (!s.text.empty()) rec["text"] = s.text;
    rec["tokens"] = s.tokens;
    rec["emotions"] = s.emotion_groups;
    rec["topics"] = s.topic_groups;
    if (s.has_gold) {
      rec["gold_emotions"] = s.gold_emotions;
      if (!s.gold_bias_prone.empty()) {
        rec["gold_bias_prone"] = s.gold_bias_prone;
      }
    }
    out << rec.dump() << "\n";
  }
}

Vocabulary build_vocabulary(const Corpus& corpus, std::size_t max_size) {
  if (corpus.empty()) throw std::invalid_argument("corpus is empty");
  if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");

  std::unordered_map<std::string, std::uint64_t> freq;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) ++freq[t];
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(freq.begin(),
                                                            freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > max_size) ranked.resize(max_size);

  Vocabulary vocab;
  vocab.max_size = max_size;
  vocab.tokens.reserve(ranked.size());
  vocab.frequency.reserve(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    vocab.index.emplace(ranked[i].first, static_cast<std::int32_t>(i));
    vocab.tokens.push_back(std::move(ranked[i].first));
    vocab.frequency.push_back(ranked[i].second);
  }
  return vocab;
}

}  // namespace ccmask
