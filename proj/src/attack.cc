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

#include "perturbshield/attack.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "perturbshield/perturb.h"

namespace perturbshield {
namespace {

using TokenGrid = std::vector<std::vector<Token>>;

TokenGrid GridOf(const Review& review) {
  TokenGrid grid;
  grid.reserve(review.sentences.size());
  for (const auto& s : review.sentences) grid.push_back(s.tokens);
  return grid;
}

std::string GridText(const TokenGrid& grid) {
  std::string out;
  for (const auto& sentence : grid) {
    const std::string text = Reassemble(sentence);
    if (text.empty()) continue;
    if (!out.empty()) out += ' ';
    out += text;
  }
  return out;
}

std::vector<Position> EligiblePositions(const Review& review) {
  std::vector<Position> out;
  for (const auto& s : review.sentences) {
    for (size_t t : s.EligibleIndices()) out.push_back({s.index, t});
  }
  return out;
}

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsVisualSource(char c) { return c == 'o' || c == 'l' || c == 'a'; }

std::string RebuildToken(std::string_view surface, std::string_view core) {
  const TokenParts parts = SplitToken(surface);
  std::string out(parts.prefix);
  out.append(core);
  out.append(parts.suffix);
  return out;
}

AttackedReview Finish(const Review& review, const TokenGrid& grid,
                      std::vector<Position> positions, AttackStyle style,
                      size_t budget) {
  AttackedReview out;
  out.original = review;
  out.attacked_text = GridText(grid);
  std::sort(positions.begin(), positions.end());
  out.perturbed_positions = std::move(positions);
  out.style = style;
  out.budget = budget;
  return out;
}

}  // namespace

std::string_view AttackStyleName(AttackStyle style) {
  switch (style) {
    case AttackStyle::kCharBug:
      return "charbug";
    case AttackStyle::kSynonymSwap:
      return "synswap";
    case AttackStyle::kGreedyFlip:
      return "greedyflip";
  }
  return "unknown";
}

AttackStyle ParseAttackStyle(std::string_view name) {
  for (AttackStyle s : {AttackStyle::kCharBug, AttackStyle::kSynonymSwap,
                        AttackStyle::kGreedyFlip}) {
    if (AttackStyleName(s) == name) return s;
  }
  throw std::invalid_argument("unknown attack style '" + std::string(name) +
                              "' (expected charbug, synswap or greedyflip)");
}

size_t ResolveBudget(const Review& review, const AttackSpec& spec) {
  if (spec.fraction) {
    const double f = *spec.fraction;
    if (!(f > 0.0 && f <= 1.0)) {
      throw std::invalid_argument("attack fraction must be in (0, 1]");
    }
    const auto a = static_cast<size_t>(
        std::llround(f * static_cast<double>(review.WordCount())));
    return std::max<size_t>(a, 1);
  }
  if (spec.budget < 1) throw std::invalid_argument("attack budget must be >= 1");
  return spec.budget;
}

std::string ReviewText(const Review& review) { return GridText(GridOf(review)); }

std::string SwapAdjacent(std::string_view word, size_t pos) {
  std::string out(word);
  if (pos + 1 >= out.size()) throw std::out_of_range("swap position");
  std::swap(out[pos], out[pos + 1]);
  return out;
}

std::string DeleteChar(std::string_view word, size_t pos) {
  std::string out(word);
  if (pos >= out.size()) throw std::out_of_range("delete position");
  out.erase(pos, 1);
  return out;
}

std::string InsertChar(std::string_view word, size_t pos, char c) {
  std::string out(word);
  if (pos > out.size()) throw std::out_of_range("insert position");
  out.insert(out.begin() + static_cast<ptrdiff_t>(pos), c);
  return out;
}

std::string VisualSubstitute(std::string_view word, size_t pos) {
  std::string out(word);
  if (pos >= out.size()) throw std::out_of_range("visual position");
  switch (out[pos]) {
    case 'o':
      out[pos] = '0';
      break;
    case 'l':
      out[pos] = '1';
      break;
    case 'a':
      out[pos] = '@';
      break;
    default:
      throw std::invalid_argument("no look-alike for this character");
  }
  return out;
}

std::string RandomCharBug(std::string_view word, Rng& rng) {
  const std::string core(SplitToken(word).core);
  // Candidate positions per op; only ASCII letters are edited so multi-byte
  // characters stay intact.
  std::vector<size_t> swaps, deletes, inserts, visuals;
  for (size_t i = 0; i < core.size(); ++i) {
    if (IsAsciiLetter(core[i])) deletes.push_back(i);
    if (IsVisualSource(core[i])) visuals.push_back(i);
    if (i + 1 < core.size() && IsAsciiLetter(core[i]) &&
        IsAsciiLetter(core[i + 1]) && core[i] != core[i + 1]) {
      swaps.push_back(i);
    }
    if ((static_cast<unsigned char>(core[i]) & 0xC0) != 0x80) {
      inserts.push_back(i);
    }
  }
  inserts.push_back(core.size());
  if (core.size() < 2) deletes.clear();

  std::vector<CharBugOp> ops;
  if (!swaps.empty()) ops.push_back(CharBugOp::kSwap);
  if (!deletes.empty()) ops.push_back(CharBugOp::kDelete);
  ops.push_back(CharBugOp::kInsert);
  if (!visuals.empty()) ops.push_back(CharBugOp::kVisual);

  std::string bugged;
  switch (ops[rng.UniformIndex(ops.size())]) {
    case CharBugOp::kSwap:
      bugged = SwapAdjacent(core, swaps[rng.UniformIndex(swaps.size())]);
      break;
    case CharBugOp::kDelete:
      bugged = DeleteChar(core, deletes[rng.UniformIndex(deletes.size())]);
      break;
    case CharBugOp::kInsert: {
      const size_t pos = inserts[rng.UniformIndex(inserts.size())];
      const char c = static_cast<char>('a' + rng.UniformIndex(26));
      bugged = InsertChar(core, pos, c);
      break;
    }
    case CharBugOp::kVisual:
      bugged = VisualSubstitute(core, visuals[rng.UniformIndex(visuals.size())]);
      break;
  }
  return RebuildToken(word, bugged);
}

AttackedReview AttackCharBug(const Review& review, size_t budget, Rng& rng) {
  TokenGrid grid = GridOf(review);
  const std::vector<Position> eligible = EligiblePositions(review);
  std::vector<Position> hit;
  for (size_t pick : rng.SampleWithoutReplacement(eligible.size(), budget)) {
    const Position p = eligible[pick];
    Token& token = grid[p.sentence_index][p.token_index];
    token = MakeToken(RandomCharBug(token.surface, rng));
    hit.push_back(p);
  }
  return Finish(review, grid, std::move(hit), AttackStyle::kCharBug, budget);
}

AttackedReview AttackSynonymSwap(const Review& review, size_t budget,
                                 const SynonymLexicon& lexicon, Rng& rng) {
  TokenGrid grid = GridOf(review);
  std::vector<Position> order = EligiblePositions(review);
  rng.Shuffle(order);
  std::vector<Position> hit;
  for (const Position& p : order) {
    if (hit.size() >= budget) break;
    Token& token = grid[p.sentence_index][p.token_index];
    const TokenParts parts = SplitToken(token.surface);
    const auto candidates = lexicon.Candidates(parts.core);
    if (candidates.empty()) continue;
    const std::string& pick = candidates[rng.UniformIndex(candidates.size())];
    token = MakeToken(RebuildToken(token.surface, MatchCase(parts.core, pick)));
    hit.push_back(p);
  }
  return Finish(review, grid, std::move(hit), AttackStyle::kSynonymSwap,
                budget);
}

std::vector<TokenImportance> RankTokenImportance(const Review& review,
                                                 const Classifier& target) {
  const TokenGrid grid = GridOf(review);
  const std::vector<Position> eligible = EligiblePositions(review);
  std::vector<std::string> texts;
  texts.reserve(eligible.size() + 1);
  texts.push_back(GridText(grid));
  for (const Position& p : eligible) {
    TokenGrid without = grid;
    without[p.sentence_index][p.token_index].surface.clear();
    texts.push_back(GridText(without));
  }
  const std::vector<Verdict> verdicts = target.ClassifyBatch(texts);
  const Label original = verdicts.front().label;
  const double base = ScoreFor(verdicts.front(), original);
  std::vector<TokenImportance> ranked;
  ranked.reserve(eligible.size());
  for (size_t i = 0; i < eligible.size(); ++i) {
    ranked.push_back({eligible[i], base - ScoreFor(verdicts[i + 1], original)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const TokenImportance& a, const TokenImportance& b) {
                     return a.importance > b.importance;
                   });
  return ranked;
}

AttackedReview AttackGreedyFlip(const Review& review, size_t budget,
                                const Classifier& target,
                                const SynonymLexicon& lexicon, Rng& rng) {
  TokenGrid grid = GridOf(review);
  const Label original = target.Classify(GridText(grid)).label;
  std::vector<Position> hit;
  bool flipped = false;
  for (const TokenImportance& ranked : RankTokenImportance(review, target)) {
    if (hit.size() >= budget || flipped) break;
    const Position p = ranked.position;
    Token& token = grid[p.sentence_index][p.token_index];
    const std::string before = token.surface;
    const TokenParts parts = SplitToken(before);
    const auto candidates = lexicon.Candidates(parts.core);

    Verdict now;
    if (!candidates.empty()) {
      std::vector<std::string> surfaces;
      std::vector<std::string> texts;
      for (const auto& c : candidates) {
        surfaces.push_back(RebuildToken(before, MatchCase(parts.core, c)));
        token.surface = surfaces.back();
        texts.push_back(GridText(grid));
      }
      const std::vector<Verdict> verdicts = target.ClassifyBatch(texts);
      size_t best = 0;
      for (size_t i = 1; i < verdicts.size(); ++i) {
        if (ScoreFor(verdicts[i], original) <
            ScoreFor(verdicts[best], original)) {
          best = i;
        }
      }
      token = MakeToken(surfaces[best]);
      now = verdicts[best];
    } else {
      token = MakeToken(RandomCharBug(before, rng));
      now = target.Classify(GridText(grid));
    }
    hit.push_back(p);
    flipped = now.label != original;
  }
  AttackedReview out = Finish(review, grid, std::move(hit),
                              AttackStyle::kGreedyFlip, budget);
  out.flipped = flipped;
  return out;
}

AttackedReview RunAttack(const Review& review, const AttackSpec& spec,
                         const SynonymLexicon& lexicon,
                         const Classifier* target, Rng& rng) {
  const size_t budget = ResolveBudget(review, spec);
  switch (spec.style) {
    case AttackStyle::kGreedyFlip:
      if (target == nullptr) {
        throw std::invalid_argument("greedyflip needs a target classifier");
      }
      return AttackGreedyFlip(review, budget, *target, lexicon, rng);
    case AttackStyle::kCharBug:
    case AttackStyle::kSynonymSwap: {
      AttackedReview out =
          spec.style == AttackStyle::kCharBug
              ? AttackCharBug(review, budget, rng)
              : AttackSynonymSwap(review, budget, lexicon, rng);
      if (target != nullptr) {
        const std::vector<std::string> texts = {ReviewText(review),
                                                out.attacked_text};
        const auto verdicts = target->ClassifyBatch(texts);
        out.flipped = verdicts[0].label != verdicts[1].label;
      }
      return out;
    }
  }
  throw std::invalid_argument("unknown attack style");
}

}  // namespace perturbshield
