// Copyright 2026 The PerturbShield Authors
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

#include "perturbshield/text.h"

#include <algorithm>
#include <array>

#include "perturbshield/errors.h"

namespace perturbshield {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Bytes >= 0x80 are treated as letters so accented words stay words.
bool IsLetter(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u >= 0x80;
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool IsCoreChar(char c) { return IsLetter(c) || IsDigit(c); }

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }

bool IsClosing(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

bool IsOpening(char c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{';
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    const size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

bool EndsWithTerminal(std::string_view token) {
  while (!token.empty() && IsClosing(token.back())) token.remove_suffix(1);
  if (token.empty()) return false;
  const char c = token.back();
  return c == '.' || c == '!' || c == '?';
}

bool StartsWithUpper(std::string_view token) {
  while (!token.empty() && IsOpening(token.front())) token.remove_prefix(1);
  return !token.empty() && IsUpper(token.front());
}

constexpr std::array<std::string_view, 33> kAbbreviations = {
    "mr.",   "mrs.", "ms.",  "dr.",  "prof.", "st.",  "jr.",  "sr.",   "vs.",
    "etc.",  "e.g.", "i.e.", "cf.",  "al.",   "no.",  "vol.", "fig.",  "approx.",
    "inc.",  "ltd.", "co.",  "corp.", "jan.", "feb.", "mar.", "apr.",  "jun.",
    "jul.",  "aug.", "sep.", "oct.", "nov.", "dec."};

}  // namespace

std::string_view LabelName(Label label) {
  return label == Label::kPositive ? "positive" : "negative";
}

Label ParseLabel(std::string_view name) {
  if (name == "positive") return Label::kPositive;
  if (name == "negative") return Label::kNegative;
  throw DataError("unknown label '" + std::string(name) +
                  "' (expected positive or negative)");
}

TokenParts SplitToken(std::string_view surface) {
  size_t begin = 0;
  while (begin < surface.size() && !IsCoreChar(surface[begin])) ++begin;
  size_t end = surface.size();
  while (end > begin && !IsCoreChar(surface[end - 1])) --end;
  return {surface.substr(0, begin), surface.substr(begin, end - begin),
          surface.substr(end)};
}

Token MakeToken(std::string surface) {
  Token token;
  const std::string_view core = SplitToken(surface).core;
  bool word = !core.empty();
  for (size_t i = 0; word && i < core.size(); ++i) {
    const char c = core[i];
    if (IsLetter(c)) continue;
    const bool inner = i > 0 && i + 1 < core.size();
    if (!(inner && (c == '-' || c == '\''))) word = false;
  }
  token.is_word = word;
  token.eligible = word && CodePointLength(core) >= 2;
  token.surface = std::move(surface);
  return token;
}

std::string Sentence::Text() const { return Reassemble(tokens); }

size_t Sentence::EligibleCount() const {
  return static_cast<size_t>(std::count_if(
      tokens.begin(), tokens.end(), [](const Token& t) { return t.eligible; }));
}

std::vector<size_t> Sentence::EligibleIndices() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].eligible) out.push_back(i);
  }
  return out;
}

size_t Review::WordCount() const {
  size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

size_t Review::EligibleCount() const {
  size_t n = 0;
  for (const auto& s : sentences) n += s.EligibleCount();
  return n;
}

double Review::MeanSentenceLength() const {
  if (sentences.empty()) return 0.0;
  return static_cast<double>(WordCount()) /
         static_cast<double>(sentences.size());
}

std::vector<Token> Tokenize(std::string_view sentence_text) {
  std::vector<Token> tokens;
  for (std::string_view piece : SplitWhitespace(sentence_text)) {
    tokens.push_back(MakeToken(std::string(piece)));
  }
  return tokens;
}

bool IsAbbreviation(std::string_view token) {
  while (!token.empty() && IsClosing(token.back())) token.remove_suffix(1);
  while (!token.empty() && IsOpening(token.front())) token.remove_prefix(1);
  if (token.size() == 2 && IsUpper(token[0]) && token[1] == '.') return true;
  const std::string lower = ToLowerAscii(token);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) !=
         kAbbreviations.end();
}

std::vector<Sentence> Segment(std::string_view text) {
  const std::vector<std::string_view> words = SplitWhitespace(text);
  if (words.empty()) throw EmptyInputError();

  std::vector<Sentence> sentences;
  Sentence current;
  for (size_t i = 0; i < words.size(); ++i) {
    current.tokens.push_back(MakeToken(std::string(words[i])));
    const bool last = i + 1 == words.size();
    const bool boundary = EndsWithTerminal(words[i]) &&
                          !IsAbbreviation(words[i]) &&
                          (last || StartsWithUpper(words[i + 1]));
    if (last || boundary) {
      current.index = sentences.size();
      sentences.push_back(std::move(current));
      current = Sentence();
    }
  }
  return sentences;
}

std::string Reassemble(std::span<const Token> tokens) {
  std::string out;
  for (const Token& t : tokens) {
    if (t.dropped()) continue;
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  // Replacement surfaces may carry their own whitespace (multi-word
  // synonyms), so normalize once more.
  return NormalizeWhitespace(out);
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  for (std::string_view piece : SplitWhitespace(text)) {
    if (!out.empty()) out += ' ';
    out.append(piece);
  }
  return out;
}

std::string ToLowerAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (IsUpper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

size_t CodePointLength(std::string_view s) {
  size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

Review MakeReview(std::string id, std::string text,
                  std::optional<Label> gold_label) {
  Review review;
  review.sentences = Segment(text);
  review.id = std::move(id);
  review.text = std::move(text);
  review.gold_label = gold_label;
  return review;
}

}  // namespace perturbshield
