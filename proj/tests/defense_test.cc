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

#include "perturbshield/defense.h"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "perturbshield/errors.h"
#include "perturbshield/rng.h"
#include "perturbshield/synthetic.h"

namespace perturbshield {
namespace {

const Label kPos = Label::kPositive;
const Label kNeg = Label::kNegative;

std::vector<Verdict> Votes(const std::vector<Label>& labels, double score = 1.0) {
  std::vector<Verdict> out;
  for (Label l : labels) out.push_back({l, score});
  return out;
}

Review SyntheticReview(uint64_t seed, size_t sentences) {
  SyntheticConfig cfg;
  cfg.reviews = 1;
  cfg.seed = seed;
  cfg.min_sentences = cfg.max_sentences = sentences;
  const auto entry = GenerateSynthetic(cfg).front();
  return MakeReview(entry.id, entry.text, entry.label);
}

TEST(VoteTest, Examples) {
  EXPECT_EQ(MajorityVote(Votes({kPos, kPos, kNeg})), kPos);
  EXPECT_EQ(MajorityVote(Votes({kNeg})), kNeg);
  const auto tie = TallyVotes(std::vector<Verdict>{{kPos, 0.9}, {kNeg, 0.6}});
  EXPECT_EQ(tie.label, kPos);
  EXPECT_TRUE(tie.tie_broken);
  EXPECT_EQ(MajorityVote(Votes({kPos, kNeg})), kNeg);  // full tie
  EXPECT_THROW(MajorityVote(std::vector<Verdict>{}), EmptyVotesError);
}

TEST(VoteTest, MatchesBruteForceCount) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const size_t n = 1 + rng.UniformIndex(15);
    std::vector<Verdict> votes;
    int pos = 0;
    double pos_score = 0, neg_score = 0;
    for (size_t j = 0; j < n; ++j) {
      const Label l = rng.UniformIndex(2) ? kPos : kNeg;
      const double s = 0.5 + 0.5 * rng.UniformDouble();
      votes.push_back({l, s});
      if (l == kPos) {
        ++pos;
        pos_score += s;
      } else {
        neg_score += s;
      }
    }
    const int neg = static_cast<int>(n) - pos;
    Label expected;
    if (pos != neg) {
      expected = pos > neg ? kPos : kNeg;
    } else {
      expected = pos_score > neg_score ? kPos : kNeg;
    }
    ASSERT_EQ(MajorityVote(votes), expected);
    ASSERT_EQ(TallyVotes(votes).tie_broken, pos == neg);
  }
}

TEST(CertaintyTest, ExamplesAndBounds) {
  EXPECT_DOUBLE_EQ(Certainty(Votes({kPos, kPos, kNeg}), kPos), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(Certainty(Votes({kNeg, kNeg}), kNeg), 1.0);
  EXPECT_THROW(Certainty(std::vector<Verdict>{}, kPos), EmptyVotesError);
  Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Label> labels(1 + rng.UniformIndex(20));
    for (auto& l : labels) l = rng.UniformIndex(2) ? kPos : kNeg;
    const auto votes = Votes(labels);
    const Label winner = MajorityVote(votes);
    const double c = Certainty(votes, winner);
    ASSERT_GE(c, 0.5);
    ASSERT_LE(c, 1.0);
    ASSERT_NEAR(c + Certainty(votes, winner == kPos ? kNeg : kPos), 1.0, 1e-12);
  }
}

TEST(DefenseTest, RpdCallsEqualSentencesTimesL) {
  const Lexicons lex = SyntheticLexicons();
  CountingStub stub(kPos);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Review r = SyntheticReview(seed, 3 + seed % 8);
    RpdConfig cfg;
    cfg.replicates_per_sentence = 1 + seed % 7;
    cfg.seed = seed;
    stub.Reset();
    const auto out = DefendRpd(r, cfg, stub, lex);
    const size_t expected = r.sentences.size() * cfg.replicates_per_sentence;
    EXPECT_EQ(out.replicate_count, expected);
    EXPECT_EQ(out.classifier_calls, expected);
    EXPECT_EQ(stub.calls(), expected);
    EXPECT_EQ(out.votes.size(), expected);
    for (const auto& rep : out.replicates) {
      EXPECT_LE(rep.steps.size(), cfg.corrections);
    }
  }
}

TEST(DefenseTest, IrdCallsEqualK) {
  const Lexicons lex = SyntheticLexicons();
  CountingStub stub(kNeg);
  for (size_t k : {1u, 2u, 41u, 100u}) {
    IrdConfig cfg;
    cfg.replicates = k;
    stub.Reset();
    const auto out = DefendIrd(SyntheticReview(k, 10), cfg, stub, lex);
    EXPECT_EQ(out.classifier_calls, k);
    EXPECT_EQ(stub.calls(), k);
    for (const auto& rep : out.replicates) EXPECT_LE(rep.steps.size(), 1u);
  }
}

TEST(DefenseTest, IrdWithOneReplicateIsThatVerdict) {
  const Lexicons lex = SyntheticLexicons();
  IrdConfig cfg;
  cfg.replicates = 1;
  CountingStub stub(kPos, 0.7);
  const auto out = DefendIrd(SyntheticReview(5, 6), cfg, stub, lex);
  EXPECT_EQ(out.final_label, kPos);
  EXPECT_DOUBLE_EQ(out.certainty, 1.0);
  EXPECT_FALSE(out.tie_broken);
}

TEST(DefenseTest, IrdSentenceChoiceIsUniform) {
  const Lexicons lex = SyntheticLexicons();
  const Review r = SyntheticReview(9, 5);
  IrdConfig cfg;
  cfg.replicates = 20000;
  CountingStub stub(kPos);
  const auto out = DefendIrd(r, cfg, stub, lex);
  std::vector<double> counts(r.sentences.size(), 0.0);
  for (const auto& rep : out.replicates) counts[rep.sentence_index] += 1;
  const double p = 1.0 / r.sentences.size();
  const double sigma = std::sqrt(cfg.replicates * p * (1 - p));
  for (double c : counts) EXPECT_NEAR(c, cfg.replicates * p, 3 * sigma);
}

TEST(DefenseTest, DegenerateReviewClassifiedOnce) {
  const Lexicons lex = SyntheticLexicons();
  const Review r = MakeReview("d", "1 2 3! a ?");
  CountingStub stub(kNeg);
  const auto rpd = DefendRpd(r, RpdConfig{}, stub, lex);
  EXPECT_TRUE(rpd.degenerate);
  EXPECT_EQ(rpd.classifier_calls, 1u);
  const auto ird = DefendIrd(r, IrdConfig{}, stub, lex);
  EXPECT_TRUE(ird.degenerate);
  EXPECT_EQ(stub.calls(), 2u);
}

TEST(DefenseTest, MajorityFollowsClassifier) {
  const Lexicons lex = SyntheticLexicons();
  FunctionClassifier clf([](std::string_view t) {
    return Verdict{t.find("zzz") == std::string_view::npos ? kPos : kNeg, 1.0};
  });
  const auto out = DefendRpd(SyntheticReview(3, 8), RpdConfig{}, clf, lex);
  EXPECT_EQ(out.final_label, kPos);
  EXPECT_DOUBLE_EQ(out.certainty, 1.0);
}

TEST(DefenseTest, DeterministicAcrossJobs) {
  const Lexicons lex = SyntheticLexicons();
  FunctionClassifier clf([](std::string_view t) {
    return Verdict{t.size() % 3 ? kPos : kNeg, 0.6};
  });
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Review r = SyntheticReview(seed, 12);
    RpdConfig rpd;
    rpd.seed = seed;
    IrdConfig ird;
    ird.seed = seed;
    const auto a = DefendRpd(r, rpd, clf, lex, {1, 64});
    const auto b = DefendRpd(r, rpd, clf, lex, {4, 5});
    ASSERT_EQ(a.replicates.size(), b.replicates.size());
    for (size_t i = 0; i < a.replicates.size(); ++i) {
      EXPECT_EQ(a.replicates[i].text, b.replicates[i].text);
    }
    EXPECT_EQ(a.votes, b.votes);
    const auto c = DefendIrd(r, ird, clf, lex, {1, 64});
    const auto d = DefendIrd(r, ird, clf, lex, {3, 2});
    EXPECT_EQ(c.votes, d.votes);
    EXPECT_EQ(c.final_label, d.final_label);
  }
}

TEST(DefenseTest, ConfigValidation) {
  const Lexicons lex = SyntheticLexicons();
  CountingStub stub(kPos);
  const Review r = SyntheticReview(1, 3);
  RpdConfig rpd;
  rpd.corrections = 0;
  EXPECT_THROW(DefendRpd(r, rpd, stub, lex), std::invalid_argument);
  IrdConfig ird;
  ird.replicates = 0;
  EXPECT_THROW(DefendIrd(r, ird, stub, lex), std::invalid_argument);
  ird.replicates = 3;
  ird.kinds.clear();
  EXPECT_THROW(DefendIrd(r, ird, stub, lex), std::invalid_argument);
  EXPECT_THROW(ParseMethod("both"), std::invalid_argument);
}

}  // namespace
}  // namespace perturbshield
