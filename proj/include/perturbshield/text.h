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

// Review text model: sentence segmentation, whitespace tokenization and
// reassembly of (possibly perturbed) token sequences.

#ifndef PERTURBSHIELD_TEXT_H_
#define PERTURBSHIELD_TEXT_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perturbshield {

// Binary sentiment label. Negative orders before positive.
enum class Label { kNegative = 0, kPositive = 1 };

std::string_view LabelName(Label label);
// Accepts "positive" / "negative"; throws DataError otherwise.
Label ParseLabel(std::string_view name);
inline Label Opposite(Label label) {
  return label == Label::kPositive ? Label::kNegative : Label::kPositive;
}

// A token surface split into leading punctuation, alphabetic core and
// trailing punctuation. "(great!" -> {"(", "great", "!"}.
struct TokenParts {
  std::string_view prefix;
  std::string_view core;
  std::string_view suffix;
};

TokenParts SplitToken(std::string_view surface);

struct Token {
  std::string surface;
  // Core is non-empty and made of letters, with internal hyphens or
  // apostrophes allowed.
  bool is_word = false;
  // is_word and the core has at least two characters.
  bool eligible = false;

  bool dropped() const { return surface.empty(); }
  std::string_view core() const { return SplitToken(surface).core; }
};

// Classifies a raw surface into a Token.
Token MakeToken(std::string surface);

struct Sentence {
  size_t index = 0;
  std::vector<Token> tokens;

  std::string Text() const;
  size_t EligibleCount() const;
  std::vector<size_t> EligibleIndices() const;
};

struct Review {
  std::string id;
  std::string text;
  std::vector<Sentence> sentences;
  std::optional<Label> gold_label;

  size_t WordCount() const;
  size_t EligibleCount() const;
  // Mean tokens per sentence.
  double MeanSentenceLength() const;
};

// Whitespace tokenization with per-token eligibility.
std::vector<Token> Tokenize(std::string_view sentence_text);

// Splits on '.', '!' or '?' (optionally followed by closing quotes or
// brackets) when the next token starts with an uppercase letter, or at the
// end of the text. Tokens in the abbreviation list (see IsAbbreviation)
// never end a sentence. Throws EmptyInputError for blank text.
std::vector<Sentence> Segment(std::string_view text);

// Fixed list: titles (mr. mrs. ms. dr. prof. st. jr. sr.), Latin and
// reference forms (vs. etc. e.g. i.e. cf. al. no. vol. fig. approx.),
// company suffixes (inc. ltd. co. corp.), month abbreviations, plus single
// letter initials such as "J.".
bool IsAbbreviation(std::string_view token);

// Single-space join of non-dropped surfaces. All dropped gives "".
std::string Reassemble(std::span<const Token> tokens);

// Collapses whitespace runs to one space and trims both ends.
std::string NormalizeWhitespace(std::string_view text);

std::string ToLowerAscii(std::string_view s);

// Number of UTF-8 code points.
size_t CodePointLength(std::string_view s);

Review MakeReview(std::string id, std::string text,
                  std::optional<Label> gold_label = std::nullopt);

}  // namespace perturbshield

#endif  // PERTURBSHIELD_TEXT_H_
