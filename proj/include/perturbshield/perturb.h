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

// Random corrections applied to sentence replicates.
//
// Work is split in two phases. Planning consumes the random stream and
// produces plain data (which tokens, which correction, the seed for any
// later choice). Application is a pure function of the plan and the
// lexicons, so replicates can be materialized in any order or in parallel
// without changing a single byte of output.

#ifndef PERTURBSHIELD_PERTURB_H_
#define PERTURBSHIELD_PERTURB_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perturbshield/lexicon.h"
#include "perturbshield/rng.h"
#include "perturbshield/text.h"

namespace perturbshield {

enum class CorrectionKind { kSpellCheck, kSynonymSub, kDropWord };

// "spell", "synonym", "drop".
std::string_view KindName(CorrectionKind kind);
CorrectionKind ParseKind(std::string_view name);
// Comma separated list, duplicates removed, order kept. Throws
// std::invalid_argument on unknown or empty input.
std::vector<CorrectionKind> ParseKinds(std::string_view list);
const std::vector<CorrectionKind>& AllKinds();

// Corrects the alphabetic core of `word`. Words already in the lexicon come
// back unchanged; otherwise the most frequent lexicon word within OSA
// distance 2 wins (ties go to the lexicographically smallest). With no
// candidate the word is returned as is. Surrounding punctuation and the
// capitalization pattern (Initial or ALL CAPS) are kept.
std::string SpellCorrect(const SpellLexicon& lex, std::string_view word);

// Uniform draw from the synonym candidates of the word's core, with the
// word's punctuation and capitalization carried over. nullopt when the word
// has no candidates.
std::optional<std::string> SynonymSub(const SynonymLexicon& lex,
                                      std::string_view word, Rng& rng);

Token DropWord(const Token& token);

// Copies `source` capitalization (Initial or ALL CAPS) onto `lower`.
std::string MatchCase(std::string_view source, std::string_view lower);

struct PlanStep {
  size_t sentence_index = 0;
  size_t token_index = 0;
  CorrectionKind kind = CorrectionKind::kSpellCheck;
  // Kinds to try, in order, if a synonym substitution finds no candidate.
  std::vector<CorrectionKind> fallbacks;
  // Seeds the synonym draw at application time.
  uint64_t draw_seed = 0;
};

struct PerturbationPlan {
  uint64_t seed = 0;
  std::vector<PlanStep> steps;
};

enum class TokenSampling { kWithoutReplacement, kWithReplacement };

// Draws the steps for one replicate of `sentence`: min(k, #eligible)
// distinct eligible tokens (kWithoutReplacement) or k independent draws
// (kWithReplacement), each with a kind drawn uniformly from `kinds`. The
// fallback list holds up to two kinds, each drawn uniformly from the kinds
// not yet tried. Returns nullopt when the sentence has no eligible token.
std::optional<std::vector<PlanStep>> PlanReplicate(
    const Sentence& sentence, size_t k, std::span<const CorrectionKind> kinds,
    Rng& rng, TokenSampling sampling = TokenSampling::kWithoutReplacement);

struct AppliedStep {
  size_t token_index = 0;
  CorrectionKind kind = CorrectionKind::kSpellCheck;
  std::string before;
  std::string after;
};

struct Replicate {
  size_t sentence_index = 0;
  std::string text;
  std::vector<AppliedStep> audit;
};

// Applies `steps` in order to a copy of `sentence`.
Replicate ApplyPlan(const Sentence& sentence, std::span<const PlanStep> steps,
                    const Lexicons& lexicons);

}  // namespace perturbshield

#endif  // PERTURBSHIELD_PERTURB_H_
