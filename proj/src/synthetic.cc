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

#include "perturbshield/synthetic.h"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "perturbshield/errors.h"
#include "perturbshield/rng.h"

namespace perturbshield {
namespace {

const std::vector<std::string>& Subjects() {
  static const std::vector<std::string> kSubjects = {
      "The movie",      "The film",       "The plot",     "The story",
      "The cast",       "The script",     "The ending",   "The soundtrack",
      "The direction",  "The dialogue",   "The pacing",   "The lead role",
      "Every scene",    "The second half", "The opening act"};
  return kSubjects;
}

const std::vector<std::string>& Verbs() {
  static const std::vector<std::string> kVerbs = {
      "was", "felt", "seemed", "looked", "proved", "remained", "stayed"};
  return kVerbs;
}

const std::vector<std::string>& Adverbs() {
  static const std::vector<std::string> kAdverbs = {
      "really", "quite", "truly", "rather", "fairly", "mostly", "simply"};
  return kAdverbs;
}

const std::vector<std::string>& Tails() {
  static const std::vector<std::string> kTails = {
      "from start to finish",     "in every scene",
      "for most of the runtime",  "throughout the second half",
      "by the final act",         "as far as I could tell",
      "in my opinion",            "for a weekend watch",
      "on the big screen",        "compared to the trailer"};
  return kTails;
}

const std::vector<std::string>& NeutralPredicates() {
  static const std::vector<std::string> kPredicates = {
      "was released last spring",
      "runs close to two hours",
      "takes place in a small coastal town",
      "follows a young teacher and her brother",
      "opens with a long shot of the city",
      "was shot on location abroad",
      "features several new faces",
      "includes a short scene after the credits",
      "was adapted from a novel",
      "came out during the holidays"};
  return kPredicates;
}

const std::vector<std::vector<std::string>>& FillerGroups() {
  static const std::vector<std::vector<std::string>> kGroups = {
      {"movie", "film", "picture"},     {"story", "plot", "tale"},
      {"really", "truly", "genuinely"}, {"quite", "rather", "fairly"},
      {"scene", "sequence", "episode"}, {"ending", "finale", "conclusion"},
      {"seemed", "appeared"},           {"start", "beginning", "outset"},
      {"finish", "end"},                {"small", "little"},
      {"young", "youthful"},            {"long", "lengthy"},
      {"mostly", "largely", "chiefly"}, {"simply", "just", "merely"},
      {"script", "screenplay"},         {"novel", "book"}};
  return kGroups;
}

template <typename T>
const T& Pick(const std::vector<T>& items, Rng& rng) {
  return items[rng.UniformIndex(items.size())];
}

std::string PolarSentence(const std::string& adjective, Rng& rng) {
  std::string s = Pick(Subjects(), rng) + " " + Pick(Verbs(), rng);
  if (rng.UniformDouble() < 0.5) s += " " + Pick(Adverbs(), rng);
  s += " " + adjective;
  if (rng.UniformDouble() < 0.5) s += " " + Pick(Tails(), rng);
  return s + ".";
}

std::string NeutralSentence(Rng& rng) {
  std::string s = Pick(Subjects(), rng) + " " + Pick(NeutralPredicates(), rng);
  return s + ".";
}

const SentimentGroup& GroupOf(Label polarity, Rng& rng) {
  const auto& groups = SyntheticSentimentGroups();
  const size_t half = groups.size() / 2;
  const size_t base = polarity == Label::kPositive ? 0 : half;
  return groups[base + rng.UniformIndex(half)];
}

void AddWords(std::map<std::string, uint64_t>& out, const std::string& phrase,
              uint64_t count) {
  std::istringstream in(phrase);
  std::string word;
  while (in >> word) {
    word = ToLowerAscii(word);
    uint64_t& slot = out[word];
    slot = std::max(slot, count);
  }
}

}  // namespace

const std::vector<SentimentGroup>& SyntheticSentimentGroups() {
  // Positive groups first, then the same number of negative groups.
  static const std::vector<SentimentGroup> kGroups = {
      {Label::kPositive, {"great", "terrific", "fantastic"}, "tremendous"},
      {Label::kPositive, {"wonderful", "marvelous", "lovely"}, "fabulous"},
      {Label::kPositive, {"excellent", "superb", "outstanding"}, "splendid"},
      {Label::kPositive, {"enjoyable", "delightful", "charming"}, "pleasant"},
      {Label::kPositive, {"brilliant", "dazzling", "impressive"}, "stunning"},
      {Label::kPositive, {"touching", "moving", "heartfelt"}, "poignant"},
      {Label::kNegative, {"awful", "terrible", "horrible"}, "dreadful"},
      {Label::kNegative, {"boring", "dull", "bland"}, "tedious"},
      {Label::kNegative, {"poor", "lousy", "mediocre"}, "shoddy"},
      {Label::kNegative, {"weak", "feeble", "lame"}, "flimsy"},
      {Label::kNegative, {"sloppy", "messy", "clumsy"}, "chaotic"},
      {Label::kNegative, {"annoying", "irritating", "tiresome"}, "grating"}};
  return kGroups;
}

std::vector<CorpusEntry> GenerateSynthetic(const SyntheticConfig& config) {
  if (config.min_sentences < 1 || config.max_sentences < config.min_sentences) {
    throw std::invalid_argument("invalid sentence range");
  }
  const double rates[] = {config.polar_rate, config.off_rate,
                          config.ironic_rate, config.label_noise};
  for (double r : rates) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw std::invalid_argument("rates must lie in [0, 1]");
    }
  }
  if (config.polar_rate + config.off_rate + config.ironic_rate > 1.0) {
    throw std::invalid_argument("sentence-type rates sum above 1");
  }

  const Rng root(config.seed);
  // Balanced classes; with an odd count the extra review is negative.
  std::vector<Label> labels(config.reviews, Label::kNegative);
  for (size_t i = 0; i < config.reviews / 2; ++i) labels[i] = Label::kPositive;
  Rng label_rng = root.Fork("labels");
  label_rng.Shuffle(labels);

  std::vector<CorpusEntry> out;
  out.reserve(config.reviews);
  for (size_t i = 0; i < config.reviews; ++i) {
    Rng rng = root.Fork(static_cast<uint64_t>(i));
    const Label label = labels[i];
    const size_t n = config.min_sentences +
                     rng.UniformIndex(config.max_sentences -
                                      config.min_sentences + 1);
    std::string text;
    for (size_t s = 0; s < n; ++s) {
      const double u = rng.UniformDouble();
      std::string sentence;
      if (u < config.polar_rate) {
        sentence = PolarSentence(Pick(GroupOf(label, rng).plain, rng), rng);
      } else if (u < config.polar_rate + config.off_rate) {
        sentence =
            PolarSentence(Pick(GroupOf(Opposite(label), rng).plain, rng), rng);
      } else if (u < config.polar_rate + config.off_rate + config.ironic_rate) {
        sentence = PolarSentence(GroupOf(Opposite(label), rng).ironic, rng);
      } else {
        sentence = NeutralSentence(rng);
      }
      if (!text.empty()) text += ' ';
      text += sentence;
    }
    const bool noisy = rng.UniformDouble() < config.label_noise;
    CorpusEntry entry;
    entry.id = config.id_prefix + "-" + std::to_string(i);
    entry.text = std::move(text);
    entry.label = noisy ? Opposite(label) : label;
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<std::vector<std::string>> SyntheticSynonymGroups() {
  std::vector<std::vector<std::string>> groups;
  for (const SentimentGroup& g : SyntheticSentimentGroups()) {
    std::vector<std::string> members = g.plain;
    members.push_back(g.ironic);
    groups.push_back(std::move(members));
  }
  for (const auto& g : FillerGroups()) groups.push_back(g);
  return groups;
}

std::vector<std::pair<std::string, uint64_t>> SyntheticSpellEntries() {
  std::map<std::string, uint64_t> words;
  for (const auto& s : Subjects()) AddWords(words, s, 4000);
  for (const auto& s : Verbs()) AddWords(words, s, 3000);
  for (const auto& s : Adverbs()) AddWords(words, s, 2000);
  for (const auto& s : Tails()) AddWords(words, s, 1500);
  for (const auto& s : NeutralPredicates()) AddWords(words, s, 1000);
  for (const auto& g : SyntheticSentimentGroups()) {
    for (const auto& w : g.plain) AddWords(words, w, 800);
    AddWords(words, g.ironic, 300);
  }
  for (const auto& g : FillerGroups()) {
    for (const auto& w : g) AddWords(words, w, 200);
  }
  return {words.begin(), words.end()};
}

Lexicons SyntheticLexicons() {
  return Lexicons{SpellLexicon::FromEntries(SyntheticSpellEntries(),
                                            "<synthetic>"),
                  SynonymLexicon::FromGroups(SyntheticSynonymGroups())};
}

void WriteSyntheticLexicons(const std::string& spell_path,
                            const std::string& synonym_path) {
  std::ofstream spell(spell_path, std::ios::binary);
  if (!spell) throw DataError("cannot open '" + spell_path + "' for writing");
  for (const auto& [word, count] : SyntheticSpellEntries()) {
    spell << word << ' ' << count << '\n';
  }
  std::ofstream synonyms(synonym_path, std::ios::binary);
  if (!synonyms) {
    throw DataError("cannot open '" + synonym_path + "' for writing");
  }
  synonyms << "# synthetic synonym groups, one per line, TAB-separated\n";
  for (const auto& g : SyntheticSynonymGroups()) {
    for (size_t i = 0; i < g.size(); ++i) {
      if (i > 0) synonyms << '\t';
      synonyms << g[i];
    }
    synonyms << '\n';
  }
  if (!spell || !synonyms) throw DataError("failed writing lexicon files");
}

}  // namespace perturbshield
