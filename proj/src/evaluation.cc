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

#include <chrono>
#include <cmath>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "perturbshield/errors.h"
#include "perturbshield/parallel.h"

namespace perturbshield {
namespace {

double Accuracy(const std::vector<Verdict>& verdicts,
                const std::vector<Label>& gold) {
  if (gold.empty()) return 0.0;
  size_t correct = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (verdicts[i].label == gold[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

struct Group {
  std::string style;
  std::vector<size_t> rows;  // indices into the attacked corpus
};

std::string FormatStat(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.3f}", v);
}

}  // namespace

Rng EvaluationStream(uint64_t seed, size_t run, DefenseMethod method,
                     const std::string& review_id) {
  return Rng(seed)
      .Fork(static_cast<uint64_t>(run))
      .Fork(MethodName(method))
      .Fork(review_id);
}

DefenseOutcome Defend(const Review& review, DefenseMethod method,
                      const RpdConfig& rpd, const IrdConfig& ird,
                      const Classifier& classifier, const Lexicons& lexicons,
                      Rng& rng, const DefenseOptions& options) {
  if (method == DefenseMethod::kRpd) {
    return DefendRpd(review, rpd, classifier, lexicons, rng, options);
  }
  return DefendIrd(review, ird, classifier, lexicons, rng, options);
}

double OutcomeAccuracy(const std::vector<DefenseOutcome>& outcomes,
                       const std::vector<Label>& gold) {
  if (outcomes.size() != gold.size()) {
    throw std::invalid_argument("outcome and label counts differ");
  }
  if (gold.empty()) return 0.0;
  size_t correct = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (outcomes[i].final_label == gold[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

EvaluationReport Evaluate(const std::vector<CorpusEntry>& corpus,
                          const std::vector<AttackedEntry>& attacked,
                          const EvaluationConfig& config,
                          const Classifier& classifier,
                          const Lexicons& lexicons) {
  if (corpus.empty()) throw DataError("clean corpus is empty");
  if (attacked.empty()) throw DataError("attacked corpus is empty");
  if (config.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (config.methods.empty()) {
    throw std::invalid_argument("at least one defense method is required");
  }
  config.rpd.Validate();
  config.ird.Validate();
  const size_t jobs = classifier.ConcurrentSafe() ? config.jobs : 1;

  std::unordered_map<std::string, size_t> by_id;
  std::vector<Label> corpus_gold;
  std::vector<std::string> corpus_texts;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (!by_id.emplace(corpus[i].id, i).second) {
      throw DataError("duplicate review id '" + corpus[i].id + "'");
    }
  }

  // Clean accuracy over the labeled part of the corpus.
  std::vector<size_t> labeled;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].label) labeled.push_back(i);
  }
  if (labeled.empty()) throw DataError("clean corpus has no labels");
  std::vector<std::string> all_texts;
  all_texts.reserve(corpus.size());
  for (const auto& e : corpus) all_texts.push_back(e.text);
  const std::vector<Verdict> clean_verdicts =
      ClassifyFanOut(classifier, all_texts, jobs);

  EvaluationReport report;
  report.seed = config.seed;
  report.runs = config.runs;
  report.corpus_size = corpus.size();
  report.config = config;
  {
    size_t correct = 0;
    for (size_t i : labeled) {
      if (clean_verdicts[i].label == *corpus[i].label) ++correct;
    }
    report.clean_accuracy =
        static_cast<double>(correct) / static_cast<double>(labeled.size());
  }

  std::vector<Group> groups;
  std::map<std::string, size_t> group_of;
  std::vector<size_t> clean_index(attacked.size());
  std::vector<Label> gold(attacked.size());
  for (size_t r = 0; r < attacked.size(); ++r) {
    const AttackedEntry& row = attacked[r];
    const auto it = by_id.find(row.id);
    if (it == by_id.end()) {
      throw DataError("attacked review '" + row.id +
                      "' has no counterpart in the clean corpus");
    }
    clean_index[r] = it->second;
    const auto& label = corpus[it->second].label ? corpus[it->second].label
                                                 : row.label;
    if (!label) throw DataError("review '" + row.id + "' has no gold label");
    gold[r] = *label;
    const auto [g, inserted] = group_of.emplace(row.style, groups.size());
    if (inserted) groups.push_back({row.style, {}});
    groups[g->second].rows.push_back(r);
  }

  std::vector<std::string> attacked_texts;
  attacked_texts.reserve(attacked.size());
  for (const auto& row : attacked) attacked_texts.push_back(row.attacked_text);
  const std::vector<Verdict> undefended =
      ClassifyFanOut(classifier, attacked_texts, jobs);

  std::vector<Review> reviews;
  reviews.reserve(attacked.size());
  for (size_t r = 0; r < attacked.size(); ++r) {
    reviews.push_back(
        MakeReview(attacked[r].id, attacked[r].attacked_text, gold[r]));
  }

  for (const Group& group : groups) {
    AttackRow out;
    out.attack = group.style;
    out.reviews = group.rows.size();
    std::vector<Label> row_gold;
    std::vector<Verdict> row_clean, row_undefended;
    double sentence_total = 0.0;
    for (size_t r : group.rows) {
      row_gold.push_back(gold[r]);
      row_clean.push_back(clean_verdicts[clean_index[r]]);
      row_undefended.push_back(undefended[r]);
      if (attacked[r].flipped) ++out.flipped;
      sentence_total += static_cast<double>(reviews[r].sentences.size());
    }
    out.clean_accuracy = Accuracy(row_clean, row_gold);
    out.accuracy_without_defense = Accuracy(row_undefended, row_gold);
    out.mean_sentences = sentence_total / static_cast<double>(out.reviews);

    for (DefenseMethod method : config.methods) {
      MethodResult result;
      result.method = method;
      const auto start = std::chrono::steady_clock::now();
      for (size_t run = 0; run < config.runs; ++run) {
        const size_t stream_run = config.same_seed_every_run ? 0 : run;
        std::vector<DefenseOutcome> outcomes(group.rows.size());
        ParallelFor(group.rows.size(), jobs, [&](size_t i) {
          const size_t r = group.rows[i];
          Rng rng =
              EvaluationStream(config.seed, stream_run, method, attacked[r].id);
          outcomes[i] = Defend(reviews[r], method, config.rpd, config.ird,
                               classifier, lexicons, rng);
        });
        for (const auto& o : outcomes) result.classifier_calls += o.classifier_calls;
        result.run_accuracies.push_back(OutcomeAccuracy(outcomes, row_gold));
        if (config.keep_outcomes) result.outcomes.push_back(std::move(outcomes));
      }
      if (config.report_timing) {
        result.seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      }
      result.mean_accuracy = Mean(result.run_accuracies);
      result.std_accuracy = SampleStdDev(result.run_accuracies);
      result.t_test = OneSampleTTest(result.run_accuracies, out.clean_accuracy);
      result.calls_per_review =
          static_cast<double>(result.classifier_calls) /
          static_cast<double>(config.runs * group.rows.size());
      out.methods.push_back(std::move(result));
    }
    report.rows.push_back(std::move(out));
  }
  return report;
}

std::string FormatReportTable(const EvaluationReport& report) {
  std::string out = fmt::format(
      "clean accuracy {:.4f} over {} reviews, {} runs, seed {}\n",
      report.clean_accuracy, report.corpus_size, report.runs, report.seed);
  out += fmt::format("{:<12} {:>7} {:>7} {:>9} {:>6} {:>17} {:>8} {:>7} {:>10}\n",
                     "attack", "reviews", "clean", "w/o def", "method",
                     "w/ def mean+-std", "t", "p", "calls");
  for (const AttackRow& row : report.rows) {
    for (const MethodResult& m : row.methods) {
      const std::string defended =
          fmt::format("{:.4f}+-{:.4f}", m.mean_accuracy, m.std_accuracy);
      const std::string t = m.t_test.valid ? FormatStat(m.t_test.t) : "n/a";
      const std::string p =
          m.t_test.valid ? fmt::format("{:.4f}", m.t_test.p_value) : "n/a";
      out += fmt::format(
          "{:<12} {:>7} {:>7.4f} {:>9.4f} {:>6} {:>17} {:>8} {:>7} {:>10}\n",
          row.attack, row.reviews, row.clean_accuracy,
          row.accuracy_without_defense, MethodName(m.method), defended, t, p,
          m.classifier_calls);
    }
  }
  return out;
}

}  // namespace perturbshield
