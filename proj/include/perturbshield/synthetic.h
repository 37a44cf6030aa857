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

// Seeded generator of labeled movie-review-like text.
//
// Labels are balanced (an odd extra review is negative) and shuffled.
// A review has N sentences (uniform in [min_sentences, max_sentences]).
// Each sentence is one of:
//   * a polar sentence carrying one sentiment adjective of the review's
//     label (probability polar_rate),
//   * an off-polarity sentence carrying an adjective of the other label
//     (off_rate),
//   * an ironic sentence carrying the "ironic" member of an
//     other-label group (ironic_rate); e.g. "tremendous" is listed with
//     "great" but is only ever used ironically in negative reviews,
//   * otherwise a neutral sentence with no sentiment word.
// Sentiment groups have three plain members and one ironic member, so a
// classifier trained on this text sees ironic words as strong evidence for
// the opposite label while a synonym lexicon lists them next to the plain
// words. A fraction label_noise of gold labels is flipped after
// generation.

#ifndef PERTURBSHIELD_SYNTHETIC_H_
#define PERTURBSHIELD_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "perturbshield/evaluation.h"
#include "perturbshield/lexicon.h"

namespace perturbshield {

struct SyntheticConfig {
  size_t reviews = 500;
  uint64_t seed = 0;
  size_t min_sentences = 10;
  size_t max_sentences = 14;
  double polar_rate = 0.9;
  double off_rate = 0.05;
  double ironic_rate = 0.05;
  double label_noise = 0.0;
  std::string id_prefix = "syn";
};

std::vector<CorpusEntry> GenerateSynthetic(const SyntheticConfig& config);

struct SentimentGroup {
  Label polarity;
  std::vector<std::string> plain;  // used with the group's polarity
  std::string ironic;              // used only in other-label reviews
};

const std::vector<SentimentGroup>& SyntheticSentimentGroups();

// Synonym groups: every sentiment group (plain + ironic) and the neutral
// filler groups.
std::vector<std::vector<std::string>> SyntheticSynonymGroups();

// Every word the generator can emit or the synonym groups contain, with a
// frequency that favors common words.
std::vector<std::pair<std::string, uint64_t>> SyntheticSpellEntries();

Lexicons SyntheticLexicons();

// Writes the lexicons in the on-disk formats read by SpellLexicon::Load
// and SynonymLexicon::Load.
void WriteSyntheticLexicons(const std::string& spell_path,
                            const std::string& synonym_path);

}  // namespace perturbshield

#endif  // PERTURBSHIELD_SYNTHETIC_H_
