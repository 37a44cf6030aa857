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

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "perturbshield/rng.h"
#include "perturbshield/synthetic.h"
#include "perturbshield/text.h"

namespace perturbshield {
namespace {

SpellLexicon MovieSpell() {
  return SpellLexicon::FromEntries({{"movie", 1000}, {"move", 900}});
}

Sentence OneSentence(const std::string& text) {
  auto s = Segment(text);
  EXPECT_EQ(s.size(), 1u);
  return s[0];
}

TEST(SpellCorrectTest, Examples) {
  const SpellLexicon lex = MovieSpell();
  EXPECT_EQ(SpellCorrect(lex, "moive"), "movie");
  EXPECT_EQ(SpellCorrect(lex, "xqzv"), "xqzv");
  EXPECT_EQ(SpellCorrect(lex, "Moive,"), "Movie,");
  EXPECT_EQ(SpellCorrect(lex, "MOIVE"), "MOVIE");
  EXPECT_EQ(SpellCorrect(lex, "move"), "move");
}

TEST(SpellCorrectTest, TiesGoToSmallestWord) {
  const SpellLexicon lex =
      SpellLexicon::FromEntries({{"bat", 5}, {"cat", 5}, {"rat", 4}});
  EXPECT_EQ(SpellCorrect(lex, "xat"), "bat");
}

TEST(SpellCorrectTest, IdempotentAndIdentityOnLexiconWords) {
  const SpellLexicon lex = SpellLexicon::FromEntries(SyntheticSpellEntries());
  Rng rng(2);
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  int checked = 0;
  for (const auto& [word, count] : lex.entries()) {
    EXPECT_EQ(SpellCorrect(lex, word), word);
    ++checked;
  }
  EXPECT_GT(checked, 0);
  // Random lexicon words and garbled forms, 10^3 of each.
  std::vector<std::string> words;
  for (const auto& [word, count] : lex.entries()) words.push_back(word);
  for (int i = 0; i < 1000; ++i) {
    const std::string& w = words[rng.UniformIndex(words.size())];
    ASSERT_EQ(SpellCorrect(lex, w), w);
    std::string garbled = w;
    garbled[rng.UniformIndex(garbled.size())] =
        letters[rng.UniformIndex(letters.size())];
    const std::string once = SpellCorrect(lex, garbled);
    ASSERT_EQ(SpellCorrect(lex, once), once) << garbled;
  }
}

TEST(SynonymSubTest, UniformOverCandidates) {
  const SynonymLexicon lex = SynonymLexicon::FromGroups({{"good", "fine", "great"}});
  Rng rng(4);
  std::map<std::string, int> counts;
  for (int i = 0; i < 10000; ++i) {
    const auto s = SynonymSub(lex, "good", rng);
    ASSERT_TRUE(s.has_value());
    ASSERT_NE(*s, "good");
    ++counts[*s];
  }
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_NEAR(counts["fine"], 5000, 200);
  EXPECT_NEAR(counts["great"], 5000, 200);
}

TEST(SynonymSubTest, KeepsCaseAndPunctuation) {
  const SynonymLexicon lex = SynonymLexicon::FromGroups({{"good", "fine"}});
  Rng rng(1);
  EXPECT_EQ(SynonymSub(lex, "Good!", rng), "Fine!");
  EXPECT_EQ(SynonymSub(lex, "\"GOOD\"", rng), "\"FINE\"");
  EXPECT_FALSE(SynonymSub(lex, "movie", rng).has_value());
}

TEST(DropWordTest, ClearsToken) {
  const Token t = DropWord(MakeToken("great"));
  EXPECT_TRUE(t.surface.empty());
  EXPECT_FALSE(t.eligible);
}

TEST(KindsTest, ParseAndNames) {
  EXPECT_EQ(ParseKinds("drop,spell,drop"),
            (std::vector<CorrectionKind>{CorrectionKind::kDropWord,
                                         CorrectionKind::kSpellCheck}));
  EXPECT_EQ(KindName(CorrectionKind::kSynonymSub), "synonym");
  EXPECT_THROW(ParseKinds(""), std::invalid_argument);
  EXPECT_THROW(ParseKinds("spell,upper"), std::invalid_argument);
}

TEST(PlanReplicateTest, PicksMinOfKAndEligible) {
  Rng rng(5);
  const Sentence ten = OneSentence(
      "alpha bravo charlie delta echo foxtrot golf hotel india juliet");
  const auto plan = PlanReplicate(ten, 5, AllKinds(), rng);
  ASSERT_TRUE(plan.has_value());
  EXPECT_EQ(plan->size(), 5u);
  const Sentence three = OneSentence("alpha bravo charlie");
  EXPECT_EQ(PlanReplicate(three, 5, AllKinds(), rng)->size(), 3u);
  EXPECT_FALSE(PlanReplicate(OneSentence("a 1 !"), 5, AllKinds(), rng));
  EXPECT_THROW(PlanReplicate(ten, 0, AllKinds(), rng), std::invalid_argument);
}

TEST(PlanReplicateTest, DistinctEligibleTokensAndDeterminism) {
  const Sentence s = OneSentence(
      "I really liked the movie , the cast and the quiet ending a lot");
  const auto eligible = s.EligibleIndices();
  const std::set<size_t> eligible_set(eligible.begin(), eligible.end());
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng a(seed), b(seed);
    const auto pa = PlanReplicate(s, 5, AllKinds(), a);
    const auto pb = PlanReplicate(s, 5, AllKinds(), b);
    ASSERT_EQ(pa->size(), pb->size());
    std::set<size_t> seen;
    for (size_t i = 0; i < pa->size(); ++i) {
      EXPECT_EQ((*pa)[i].token_index, (*pb)[i].token_index);
      EXPECT_EQ((*pa)[i].kind, (*pb)[i].kind);
      EXPECT_EQ((*pa)[i].draw_seed, (*pb)[i].draw_seed);
      EXPECT_TRUE(eligible_set.count((*pa)[i].token_index));
      seen.insert((*pa)[i].token_index);
      EXPECT_LE((*pa)[i].fallbacks.size(), 2u);
      for (CorrectionKind f : (*pa)[i].fallbacks) EXPECT_NE(f, (*pa)[i].kind);
    }
    EXPECT_EQ(seen.size(), pa->size());
  }
}

TEST(PlanReplicateTest, TokenSelectionIsUniform) {
  // 8 eligible tokens, 3 picked per plan, 20000 plans: each token expects
  // 7500 picks. Chi-square(7) 99.9% quantile is 24.32.
  const Sentence s = OneSentence("aa bb cc dd ee ff gg hh");
  Rng rng(77);
  std::vector<double> counts(8, 0.0);
  const int plans = 20000;
  for (int i = 0; i < plans; ++i) {
    const auto plan = PlanReplicate(s, 3, AllKinds(), rng);
    for (const auto& step : *plan) counts[step.token_index] += 1;
  }
  const double expected = plans * 3.0 / 8.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 24.32);
}

TEST(PlanReplicateTest, WithReplacementDrawsExactlyK) {
  Rng rng(3);
  const Sentence s = OneSentence("aa bb");
  EXPECT_EQ(PlanReplicate(s, 6, AllKinds(), rng,
                          TokenSampling::kWithReplacement)
                ->size(),
            6u);
}

TEST(ApplyPlanTest, Examples) {
  const Lexicons lex{MovieSpell(),
                     SynonymLexicon::FromGroups({{"great", "terrific"}})};
  const Sentence s = OneSentence("Great moive overall.");
  PlanStep spell{0, 1, CorrectionKind::kSpellCheck, {}, 1};
  PlanStep drop{0, 2, CorrectionKind::kDropWord, {}, 2};
  PlanStep syn{0, 0, CorrectionKind::kSynonymSub, {}, 3};
  const std::vector<PlanStep> steps = {spell, drop, syn};
  const Replicate r = ApplyPlan(s, steps, lex);
  EXPECT_EQ(r.text, "Terrific movie");
  ASSERT_EQ(r.audit.size(), 3u);
  EXPECT_EQ(r.audit[0].before, "moive");
  EXPECT_EQ(r.audit[0].after, "movie");
  EXPECT_EQ(r.audit[1].after, "");
  EXPECT_EQ(r.audit[2].after, "Terrific");
}

TEST(ApplyPlanTest, SynonymFallsBackWhenNoCandidate) {
  const Lexicons lex{MovieSpell(), SynonymLexicon::FromGroups({{"aa", "bb"}})};
  const Sentence s = OneSentence("moive here");
  PlanStep step{0, 0, CorrectionKind::kSynonymSub,
                {CorrectionKind::kSpellCheck}, 9};
  const Replicate r = ApplyPlan(s, std::vector<PlanStep>{step}, lex);
  EXPECT_EQ(r.text, "movie here");
  EXPECT_EQ(r.audit[0].kind, CorrectionKind::kSpellCheck);
  PlanStep stuck{0, 0, CorrectionKind::kSynonymSub, {}, 9};
  EXPECT_EQ(ApplyPlan(s, std::vector<PlanStep>{stuck}, lex).text,
            "moive here");
}

TEST(ApplyPlanTest, PureAndLeavesSentenceUntouched) {
  const Lexicons lex = SyntheticLexicons();
  const Sentence s = OneSentence("The cast was great and the plot felt dull.");
  const std::string before = s.Text();
  Rng rng(10);
  const auto plan = *PlanReplicate(s, 3, AllKinds(), rng);
  const Replicate a = ApplyPlan(s, plan, lex);
  const Replicate b = ApplyPlan(s, plan, lex);
  EXPECT_EQ(a.text, b.text);
  EXPECT_EQ(s.Text(), before);
  EXPECT_THROW(ApplyPlan(s, std::vector<PlanStep>{{0, 99}}, lex),
               std::out_of_range);
}

TEST(ApplyPlanTest, AtMostKTokensChange) {
  const Lexicons lex = SyntheticLexicons();
  const Sentence s =
      OneSentence("The acting was great and the story was touching overall.");
  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const auto plan = *PlanReplicate(s, 2, AllKinds(), rng);
    const Replicate r = ApplyPlan(s, plan, lex);
    size_t changed = 0;
    for (const auto& step : r.audit) changed += step.before != step.after;
    EXPECT_LE(changed, 2u);
  }
}

}  // namespace
}  // namespace perturbshield
