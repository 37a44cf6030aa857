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

#ifndef PERTURBSHIELD_LEXICON_H_
#define PERTURBSHIELD_LEXICON_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace perturbshield {

// Optimal string alignment distance (restricted Damerau-Levenshtein):
// insertions, deletions, substitutions and adjacent transpositions, each
// substring edited at most once. Byte-wise.
int OsaDistance(std::string_view a, std::string_view b);

// Word -> frequency dictionary backing spell correction.
//
// Keys are lowercase letters with optional hyphens. On top of the map the
// lexicon keeps a symmetric-delete index (every string reachable by up to
// kMaxIndexedDistance deletions, mapped back to its source words), so
// neighbourhood queries avoid a scan over the whole dictionary.
class SpellLexicon {
 public:
  static constexpr int kMaxIndexedDistance = 2;

  // File format: one "word count" per line. Words are lowercased; duplicate
  // words keep the larger count. Throws ParseError on a malformed line or
  // an empty lexicon, DataError when the file cannot be opened.
  static SpellLexicon Load(const std::string& path);

  // Same rules as Load; `origin` names the source in error messages.
  static SpellLexicon FromEntries(
      const std::vector<std::pair<std::string, uint64_t>>& entries,
      const std::string& origin = "<memory>");

  bool Contains(std::string_view lower_word) const;
  // 0 when absent.
  uint64_t Frequency(std::string_view lower_word) const;
  size_t size() const { return words_.size(); }
  const std::map<std::string, uint64_t, std::less<>>& entries() const {
    return words_;
  }

  // Every lexicon word within OSA distance `max_distance` (<= 2) of
  // `lower_word`, with its distance. Order is unspecified.
  std::vector<std::pair<std::string_view, int>> Neighbors(
      std::string_view lower_word, int max_distance) const;

 private:
  SpellLexicon() = default;
  void BuildIndex();

  std::map<std::string, uint64_t, std::less<>> words_;
  std::vector<std::string> by_id_;
  std::unordered_map<std::string, std::vector<uint32_t>> deletes_;
};

// Flattened synonym groups (one WordNet-style synset per group).
class SynonymLexicon {
 public:
  // File format: one group per line, members separated by TAB. Lines
  // starting with '#' and blank lines are ignored. Members are lowercased
  // and deduplicated; groups left with fewer than two members are skipped.
  static SynonymLexicon Load(const std::string& path);
  static SynonymLexicon FromGroups(
      const std::vector<std::vector<std::string>>& groups);

  // Union of every group containing lowercase(word), minus the word itself,
  // sorted and deduplicated. Empty for unknown words.
  std::vector<std::string> Candidates(std::string_view word) const;

  const std::vector<std::vector<std::string>>& groups() const {
    return groups_;
  }
  size_t size() const { return groups_.size(); }

 private:
  void AddGroup(const std::vector<std::string>& members);

  std::vector<std::vector<std::string>> groups_;
  std::unordered_map<std::string, std::vector<size_t>> index_;
};

// Both resources the defenses and attacks draw from.
struct Lexicons {
  SpellLexicon spell;
  SynonymLexicon synonyms;
};

}  // namespace perturbshield

#endif  // PERTURBSHIELD_LEXICON_H_
