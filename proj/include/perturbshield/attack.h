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

// Small adversarial attack generators used to build attacked corpora.
//
//   CharBug      random character bugs (swap, delete, insert, look-alike
//                substitution) on random eligible tokens.
//   SynonymSwap  random synonym replacement on random tokens.
//   GreedyFlip   ranks tokens by how much deleting them lowers the target
//                classifier's confidence, then swaps them in that order for
//                the synonym that lowers it most (character bug when no
//                synonym exists) until the prediction flips or the budget
//                runs out.

#ifndef PERTURBSHIELD_ATTACK_H_
#define PERTURBSHIELD_ATTACK_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perturbshield/classifier.h"
#include "perturbshield/lexicon.h"
#include "perturbshield/rng.h"
#include "perturbshield/text.h"

namespace perturbshield {

enum class AttackStyle { kCharBug, kSynonymSwap, kGreedyFlip };

std::string_view AttackStyleName(AttackStyle style);  // charbug, synswap, greedyflip
AttackStyle ParseAttackStyle(std::string_view name);

struct Position {
  size_t sentence_index = 0;
  size_t token_index = 0;
  bool operator==(const Position&) const = default;
  auto operator<=>(const Position&) const = default;
};

struct AttackSpec {
  AttackStyle style = AttackStyle::kGreedyFlip;
  // Absolute budget a (>= 1), used unless `fraction` is set.
  size_t budget = 1;
  // Fraction of the review's word count, e.g. 0.1 to 0.3.
  std::optional<double> fraction;
  uint64_t seed = 0;
};

// Absolute budget for `review`: round(fraction * W) (at least 1) in
// fraction mode, otherwise spec.budget. Throws std::invalid_argument for a
// zero budget or a fraction outside (0, 1].
size_t ResolveBudget(const Review& review, const AttackSpec& spec);

struct AttackedReview {
  Review original;
  std::string attacked_text;
  std::vector<Position> perturbed_positions;
  bool flipped = false;
  AttackStyle style = AttackStyle::kCharBug;
  size_t budget = 0;
};

enum class CharBugOp { kSwap, kDelete, kInsert, kVisual };

// Deterministic character edits on a word. `pos` indexes bytes:
//   swap:   exchanges pos and pos + 1
//   delete: removes pos
//   insert: inserts `c` before pos (pos may equal size)
//   visual: o -> 0, l -> 1, a -> @ at pos (must be one of those)
std::string SwapAdjacent(std::string_view word, size_t pos);
std::string DeleteChar(std::string_view word, size_t pos);
std::string InsertChar(std::string_view word, size_t pos, char c);
std::string VisualSubstitute(std::string_view word, size_t pos);

// One random bug on the core of `word` (punctuation kept). Ops are drawn
// uniformly; look-alike substitution is re-drawn away from when the word
// has no o, l or a.
std::string RandomCharBug(std::string_view word, Rng& rng);

AttackedReview AttackCharBug(const Review& review, size_t budget, Rng& rng);
AttackedReview AttackSynonymSwap(const Review& review, size_t budget,
                                 const SynonymLexicon& lexicon, Rng& rng);

struct TokenImportance {
  Position position;
  // Drop in the target's confidence for its original label when the token
  // is deleted.
  double importance = 0.0;
};

// Leave-one-out importance for every eligible token, most important first
// (ties keep reading order). One batched classifier call.
std::vector<TokenImportance> RankTokenImportance(const Review& review,
                                                 const Classifier& target);

AttackedReview AttackGreedyFlip(const Review& review, size_t budget,
                                const Classifier& target,
                                const SynonymLexicon& lexicon, Rng& rng);

// Dispatches on spec.style. `target` is required for GreedyFlip; when given
// it is also used to fill `flipped` for the other styles.
AttackedReview RunAttack(const Review& review, const AttackSpec& spec,
                         const SynonymLexicon& lexicon,
                         const Classifier* target, Rng& rng);

// Full review text rebuilt from its sentence tokens.
std::string ReviewText(const Review& review);

}  // namespace perturbshield

#endif  // PERTURBSHIELD_ATTACK_H_
