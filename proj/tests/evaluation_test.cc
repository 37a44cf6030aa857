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

#include "perturbshield/evaluation.h"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "perturbshield/attack.h"
#include "perturbshield/corpus_io.h"
#include "perturbshield/errors.h"
#include "perturbshield/naive_bayes.h"
#include "perturbshield/synthetic.h"

namespace perturbshield {
namespace {

std::vector<CorpusEntry> Corpus(size_t n, uint64_t seed, size_t sentences = 0) {
  SyntheticConfig cfg;
  cfg.reviews = n;
  cfg.seed = seed;
  if (sentences > 0) cfg.min_sentences = cfg.max_sentences = sentences;
  return GenerateSynthetic(cfg);
}

// Attacked rows that copy the clean text unchanged.
std::vector<AttackedEntry> Unattacked(const std::vector<CorpusEntry>& corpus,
                                      const std::string& style = "none") {
  std::vector<AttackedEntry> out;
  for (const auto& e : corpus) {
    AttackedEntry a;
    a.id = e.id;
    a.original_text = e.text;
    a.attacked_text = e.text;
    a.label = e.label;
    a.style = style;
    a.budget = 1;
    out.push_back(a);
  }
  return out;
}

NaiveBayesClassifier TrainedTarget() {
  std::vector<LabeledText> train;
  for (const auto& e : Corpus(600, 1000)) train.push_back({e.text, *e.label});
  return NaiveBayesClassifier(NaiveBayesModel::Train(train, 0.01));
}

TEST(EvaluateTest, PerfectStubGivesFullAccuracyAndZeroSpread) {
  auto corpus = Corpus(20, 1);
  for (auto& e : corpus) e.label = Label::kPositive;
  CountingStub stub(Label::kPositive);
  EvaluationConfig cfg;
  cfg.runs = 3;
  const auto report =
      Evaluate(corpus, Unattacked(corpus), cfg, stub, SyntheticLexicons());
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(report.clean_accuracy, 1.0);
  for (const auto& m : report.rows[0].methods) {
    EXPECT_DOUBLE_EQ(m.mean_accuracy, 1.0);
    EXPECT_DOUBLE_EQ(m.std_accuracy, 0.0);
    EXPECT_EQ(m.run_accuracies.size(), 3u);
  }
}

TEST(EvaluateTest, SameSeedEveryRunGivesZeroSpread) {
  const auto corpus = Corpus(30, 2);
  const auto target = TrainedTarget();
  EvaluationConfig cfg;
  cfg.runs = 3;
  cfg.same_seed_every_run = true;
  cfg.ird.replicates = 3;  // few votes so runs would differ otherwise
  const auto report =
      Evaluate(corpus, Unattacked(corpus), cfg, target, SyntheticLexicons());
  for (const auto& m : report.rows[0].methods) {
    EXPECT_DOUBLE_EQ(m.std_accuracy, 0.0);
  }
}

TEST(EvaluateTest, CallTotalsFollowReplicateLaws) {
  const auto corpus = Corpus(12, 3, 10);
  CountingStub stub(Label::kNegative);
  EvaluationConfig cfg;
  cfg.runs = 2;
  const auto report =
      Evaluate(corpus, Unattacked(corpus), cfg, stub, SyntheticLexicons());
  const auto& methods = report.rows[0].methods;
  ASSERT_EQ(methods.size(), 2u);
  EXPECT_EQ(methods[0].method, DefenseMethod::kRpd);
  EXPECT_EQ(methods[0].classifier_calls, 2u * 70u * corpus.size());
  EXPECT_DOUBLE_EQ(methods[0].calls_per_review, 70.0);
  EXPECT_EQ(methods[1].classifier_calls, 2u * 41u * corpus.size());
  EXPECT_DOUBLE_EQ(methods[1].calls_per_review, 41.0);
  EXPECT_DOUBLE_EQ(report.rows[0].mean_sentences, 10.0);
}

TEST(EvaluateTest, AccuracyRecomputedFromSerializedOutcomes) {
  const auto corpus = Corpus(25, 4);
  const auto target = TrainedTarget();
  EvaluationConfig cfg;
  cfg.runs = 2;
  cfg.keep_outcomes = true;
  const auto report =
      Evaluate(corpus, Unattacked(corpus), cfg, target, SyntheticLexicons());
  std::vector<Label> gold;
  for (const auto& e : corpus) gold.push_back(*e.label);
  for (const auto& m : report.rows[0].methods) {
    ASSERT_EQ(m.outcomes.size(), 2u);
    for (size_t run = 0; run < 2; ++run) {
      std::vector<DefenseOutcome> reloaded;
      for (const auto& o : m.outcomes[run]) {
        const Json j = Json::parse(OutcomeToJson(o).dump());
        reloaded.push_back(OutcomeFromJson(j));
      }
      EXPECT_DOUBLE_EQ(OutcomeAccuracy(reloaded, gold), m.run_accuracies[run]);
    }
  }
}

TEST(EvaluateTest, RowsGroupedByStyle) {
  const auto corpus = Corpus(10, 5);
  auto attacked = Unattacked(corpus, "charbug");
  const auto more = Unattacked(corpus, "synswap");
  attacked.insert(attacked.end(), more.begin(), more.end());
  CountingStub stub(Label::kPositive);
  EvaluationConfig cfg;
  cfg.runs = 1;
  cfg.methods = {DefenseMethod::kIrd};
  const auto report = Evaluate(corpus, attacked, cfg, stub, SyntheticLexicons());
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_EQ(report.rows[0].attack, "charbug");
  EXPECT_EQ(report.rows[1].attack, "synswap");
  EXPECT_EQ(report.rows[1].reviews, 10u);
  EXPECT_FALSE(report.rows[0].methods[0].t_test.valid);
  EXPECT_FALSE(FormatReportTable(report).empty());
}

TEST(EvaluateTest, JobsDoNotChangeResults) {
  const auto corpus = Corpus(20, 6);
  const auto target = TrainedTarget();
  EvaluationConfig cfg;
  cfg.runs = 2;
  cfg.jobs = 1;
  const auto a = Evaluate(corpus, Unattacked(corpus), cfg, target, SyntheticLexicons());
  cfg.jobs = 4;
  const auto b = Evaluate(corpus, Unattacked(corpus), cfg, target, SyntheticLexicons());
  EXPECT_EQ(ReportToJson(a).dump(), ReportToJson(b).dump());
}

TEST(EvaluateTest, DataErrors) {
  const auto corpus = Corpus(5, 7);
  CountingStub stub(Label::kPositive);
  const Lexicons lex = SyntheticLexicons();
  EvaluationConfig cfg;
  EXPECT_THROW(Evaluate({}, {}, cfg, stub, lex), DataError);
  auto attacked = Unattacked(corpus);
  attacked[2].id = "stranger";
  EXPECT_THROW(Evaluate(corpus, attacked, cfg, stub, lex), DataError);
  auto unlabeled = corpus;
  unlabeled[0].label.reset();
  EXPECT_THROW(Evaluate(unlabeled, Unattacked(unlabeled), cfg, stub, lex),
               DataError);
}

TEST(CorpusIoTest, CorpusRoundTrip) {
  const auto corpus = Corpus(15, 8);
  std::ostringstream out;
  WriteCorpus(out, corpus);
  std::istringstream in(out.str());
  const auto back = ParseCorpus(in, "mem");
  ASSERT_EQ(back.size(), corpus.size());
  for (size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].id, corpus[i].id);
    EXPECT_EQ(back[i].text, corpus[i].text);
    EXPECT_EQ(back[i].label, corpus[i].label);
  }
}

TEST(CorpusIoTest, MalformedRowsReportLine) {
  std::istringstream bad("{\"id\":\"a\",\"text\":\"x\"}\n\nnot json\n");
  try {
    ParseCorpus(bad, "mem");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream dup("{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n");
  EXPECT_THROW(ParseCorpus(dup, "mem"), DataError);
}

TEST(CorpusIoTest, AttackedRoundTrip) {
  const Review r = MakeReview("r1", "A good fine film. Truly good.", Label::kPositive);
  Rng rng(1);
  const auto attacked = AttackSynonymSwap(
      r, 2, SynonymLexicon::FromGroups({{"good", "great"}, {"fine", "nice"}}), rng);
  const AttackedEntry entry = ToAttackedEntry(attacked, Label::kPositive);
  std::istringstream in(AttackedToJson(entry).dump() + "\n");
  const auto back = ParseAttacked(in, "mem");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].attacked_text, entry.attacked_text);
  EXPECT_EQ(back[0].perturbed_positions, entry.perturbed_positions);
  EXPECT_EQ(back[0].style, "synswap");
  EXPECT_EQ(back[0].budget, 2u);
}

}  // namespace
}  // namespace perturbshield
