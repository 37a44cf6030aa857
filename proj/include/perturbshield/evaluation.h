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

// Repeated-run evaluation of the defenses on an attacked corpus.

#ifndef PERTURBSHIELD_EVALUATION_H_
#define PERTURBSHIELD_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perturbshield/classifier.h"
#include "perturbshield/defense.h"
#include "perturbshield/lexicon.h"
#include "perturbshield/stats.h"
#include "perturbshield/text.h"

namespace perturbshield {

struct CorpusEntry {
  std::string id;
  std::string text;
  std::optional<Label> label;
};

struct AttackedEntry {
  std::string id;
  std::string original_text;
  std::string attacked_text;
  std::optional<Label> label;
  std::vector<std::pair<size_t, size_t>> perturbed_positions;
  bool flipped = false;
  std::string style;
  size_t budget = 0;
};

struct EvaluationConfig {
  std::vector<DefenseMethod> methods = {DefenseMethod::kRpd,
                                        DefenseMethod::kIrd};
  RpdConfig rpd;
  IrdConfig ird;
  size_t runs = 5;
  uint64_t seed = 0;
  // Every run reuses the run-0 streams; used to check that identical runs
  // give zero spread.
  bool same_seed_every_run = false;
  size_t jobs = 1;
  bool keep_outcomes = false;
  bool report_timing = false;
};

struct MethodResult {
  DefenseMethod method = DefenseMethod::kRpd;
  std::vector<double> run_accuracies;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  // Against the clean accuracy of the same reviews.
  TTestResult t_test;
  uint64_t classifier_calls = 0;  // summed over all runs
  double calls_per_review = 0.0;  // per run
  std::optional<double> seconds;
  // [run][review], only with keep_outcomes.
  std::vector<std::vector<DefenseOutcome>> outcomes;
};

struct AttackRow {
  std::string attack;
  size_t reviews = 0;
  double clean_accuracy = 0.0;
  double accuracy_without_defense = 0.0;
  size_t flipped = 0;
  double mean_sentences = 0.0;
  std::vector<MethodResult> methods;
};

struct EvaluationReport {
  uint64_t seed = 0;
  size_t runs = 0;
  size_t corpus_size = 0;
  double clean_accuracy = 0.0;
  EvaluationConfig config;
  std::vector<AttackRow> rows;
};

// Runs `config.methods` on every attacked row, grouped by attack style.
// Gold labels come from the clean corpus, falling back to the attacked row.
// Throws DataError for an empty corpus, an attacked id with no clean
// counterpart, or a review with no label on either side.
EvaluationReport Evaluate(const std::vector<CorpusEntry>& corpus,
                          const std::vector<AttackedEntry>& attacked,
                          const EvaluationConfig& config,
                          const Classifier& classifier,
                          const Lexicons& lexicons);

// The stream used for one review in one run of one method.
Rng EvaluationStream(uint64_t seed, size_t run, DefenseMethod method,
                     const std::string& review_id);

// Defends a single review with whichever method is selected.
DefenseOutcome Defend(const Review& review, DefenseMethod method,
                      const RpdConfig& rpd, const IrdConfig& ird,
                      const Classifier& classifier, const Lexicons& lexicons,
                      Rng& rng, const DefenseOptions& options = {});

// Fraction of outcomes whose final label equals the gold label of the
// same position.
double OutcomeAccuracy(const std::vector<DefenseOutcome>& outcomes,
                       const std::vector<Label>& gold);

// Fixed-width table: attack | reviews | clean | w/o defense | method |
// w/ defense mean+-std | t | p | calls.
std::string FormatReportTable(const EvaluationReport& report);

}  // namespace perturbshield

#endif  // PERTURBSHIELD_EVALUATION_H_
