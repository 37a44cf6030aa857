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

#include "perturbshield/perturb.h"

#include <algorithm>
#include <stdexcept>

namespace perturbshield {
namespace {

bool IsUpperAscii(char c) { return c >= 'A' && c <= 'Z'; }
bool IsLowerAscii(char c) { return c >= 'a' && c <= 'z'; }

std::string Rebuild(const TokenParts& parts, std::string_view core) {
  std::string out(parts.prefix);
  out.append(core);
  out.append(parts.suffix);
  return out;
}

}  // namespace

std::string_view KindName(CorrectionKind kind) {
  switch (kind) {
    case CorrectionKind::kSpellCheck:
      return "spell";
    case CorrectionKind::kSynonymSub:
      return "synonym";
    case CorrectionKind::kDropWord:
      return "drop";
  }
  return "unknown";
}

CorrectionKind ParseKind(std::string_view name) {
  for (CorrectionKind kind : AllKinds()) {
    if (KindName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown correction kind '" + std::string(name) +
                              "' (expected spell, synonym or drop)");
}

std::vector<CorrectionKind> ParseKinds(std::string_view list) {
  std::vector<CorrectionKind> kinds;
  size_t start = 0;
  while (start <= list.size()) {
    const size_t comma = list.find(',', start);
    const size_t end = comma == std::string_view::npos ? list.size() : comma;
    const std::string_view item = list.substr(start, end - start);
    if (!item.empty()) {
      const CorrectionKind kind = ParseKind(item);
      if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
        kinds.push_back(kind);
      }
    }
    start = end + 1;
  }
  if (kinds.empty()) throw std::invalid_argument("no correction kinds given");
  return kinds;
}

const std::vector<CorrectionKind>& AllKinds() {
  static const std::vector<CorrectionKind> kAll = {
      CorrectionKind::kSpellCheck, CorrectionKind::kSynonymSub,
      CorrectionKind::kDropWord};
  return kAll;
}

std::string MatchCase(std::string_view source, std::string_view lower) {
  std::string out(lower);
  if (source.empty() || out.empty() || !IsUpperAscii(source.front())) {
    return out;
  }
  const bool all_caps =
      source.size() > 1 &&
      std::none_of(source.begin(), source.end(), IsLowerAscii);
  if (all_caps) {
    for (char& c : out) {
      if (IsLowerAscii(c)) c = static_cast<char>(c - 'a' + 'A');
    }
  } else if (IsLowerAscii(out.front())) {
    out.front() = static_cast<char>(out.front() - 'a' + 'A');
  }
  return out;
}

std::string SpellCorrect(const SpellLexicon& lex, std::string_view word) {
  const TokenParts parts = SplitToken(word);
  if (parts.core.empty()) return std::string(word);
  const std::string lower = ToLowerAscii(parts.core);
  if (lex.Contains(lower)) return std::string(word);

  std::string_view best;
  uint64_t best_freq = 0;
  for (const auto& [candidate, distance] :
       lex.Neighbors(lower, SpellLexicon::kMaxIndexedDistance)) {
    const uint64_t freq = lex.Frequency(candidate);
    if (freq > best_freq || (freq == best_freq && candidate < best)) {
      best = candidate;
      best_freq = freq;
    }
  }
  if (best_freq == 0) return std::string(word);
  return Rebuild(parts, MatchCase(parts.core, best));
}

std::optional<std::string> SynonymSub(const SynonymLexicon& lex,
                                      std::string_view word, Rng& rng) {
  const TokenParts parts = SplitToken(word);
  if (parts.core.empty()) return std::nullopt;
  const std::vector<std::string> candidates = lex.Candidates(parts.core);
  if (candidates.empty()) return std::nullopt;
  const std::string& pick = candidates[rng.UniformIndex(candidates.size())];
  return Rebuild(parts, MatchCase(parts.core, pick));
}

Token DropWord(const Token& token) {
  Token dropped = token;
  dropped.surface.clear();
  dropped.is_word = false;
  dropped.eligible = false;
  return dropped;
}

std::optional<std::vector<PlanStep>> PlanReplicate(
    const Sentence& sentence, size_t k, std::span<const CorrectionKind> kinds,
    Rng& rng, TokenSampling sampling) {
  if (k == 0) throw std::invalid_argument("PlanReplicate: k must be >= 1");
  if (kinds.empty()) {
    throw std::invalid_argument("PlanReplicate: no correction kinds enabled");
  }
  const std::vector<size_t> eligible = sentence.EligibleIndices();
  if (eligible.empty()) return std::nullopt;

  std::vector<size_t> picks;
  if (sampling == TokenSampling::kWithoutReplacement) {
    picks = rng.SampleWithoutReplacement(eligible.size(), k);
  } else {
    for (size_t i = 0; i < k; ++i) {
      picks.push_back(rng.UniformIndex(eligible.size()));
    }
  }

  std::vector<PlanStep> steps;
  steps.reserve(picks.size());
  for (size_t pick : picks) {
    PlanStep step;
    step.sentence_index = sentence.index;
    step.token_index = eligible[pick];
    step.kind = kinds[rng.UniformIndex(kinds.size())];
    std::vector<CorrectionKind> remaining;
    for (CorrectionKind c : kinds) {
      if (c != step.kind) remaining.push_back(c);
    }
    for (int retry = 0; retry < 2 && !remaining.empty(); ++retry) {
      const size_t j = rng.UniformIndex(remaining.size());
      step.fallbacks.push_back(remaining[j]);
      remaining.erase(remaining.begin() + static_cast<ptrdiff_t>(j));
    }
    step.draw_seed = rng.NextU64();
    steps.push_back(std::move(step));
  }
  return steps;
}

Replicate ApplyPlan(const Sentence& sentence, std::span<const PlanStep> steps,
                    const Lexicons& lexicons) {
  std::vector<Token> tokens = sentence.tokens;
  Replicate replicate;
  replicate.sentence_index = sentence.index;
  for (const PlanStep& step : steps) {
    if (step.token_index >= tokens.size()) {
      throw std::out_of_range("plan step token index past sentence end");
    }
    Token& token = tokens[step.token_index];
    AppliedStep record;
    record.token_index = step.token_index;
    record.kind = step.kind;
    record.before = token.surface;
    // A token dropped by an earlier step (with-replacement sampling) stays
    // dropped.
    if (!token.dropped()) {
      Rng draw(step.draw_seed);
      std::vector<CorrectionKind> attempts = {step.kind};
      attempts.insert(attempts.end(), step.fallbacks.begin(),
                      step.fallbacks.end());
      for (CorrectionKind kind : attempts) {
        record.kind = kind;
        if (kind == CorrectionKind::kSpellCheck) {
          token = MakeToken(SpellCorrect(lexicons.spell, token.surface));
          break;
        }
        if (kind == CorrectionKind::kDropWord) {
          token = DropWord(token);
          break;
        }
        if (auto swapped = SynonymSub(lexicons.synonyms, token.surface, draw)) {
          token = MakeToken(std::move(*swapped));
          break;
        }
        record.kind = step.kind;
      }
    }
    record.after = token.surface;
    replicate.audit.push_back(std::move(record));
  }
  replicate.text = Reassemble(tokens);
  return replicate;
}

}  // namespace perturbshield
