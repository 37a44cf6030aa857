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

#include <stdexcept>

#include "perturbshield/errors.h"
#include "perturbshield/parallel.h"

namespace perturbshield {
namespace {

// A replicate waiting to be materialized. Sentences without an eligible
// token are copied as they are (empty plan).
struct PendingReplicate {
  const Sentence* sentence;
  size_t replicate_index;
  std::vector<PlanStep> steps;
};

DefenseOutcome Degenerate(const Review& review, DefenseMethod method,
                          const Classifier& classifier) {
  DefenseOutcome outcome;
  outcome.review_id = review.id;
  outcome.method = method;
  outcome.degenerate = true;
  std::string text;
  for (const auto& s : review.sentences) {
    if (!text.empty()) text += ' ';
    text += s.Text();
  }
  if (text.empty()) text = NormalizeWhitespace(review.text);
  outcome.votes.push_back(classifier.Classify(text));
  outcome.classifier_calls = 1;
  outcome.replicate_count = 1;
  outcome.final_label = outcome.votes.front().label;
  outcome.certainty = 1.0;
  outcome.replicates.push_back({0, 0, std::move(text), {}});
  return outcome;
}

DefenseOutcome Finish(const Review& review, DefenseMethod method,
                      std::vector<PendingReplicate> pending,
                      const Classifier& classifier, const Lexicons& lexicons,
                      const DefenseOptions& options) {
  DefenseOutcome outcome;
  outcome.review_id = review.id;
  outcome.method = method;
  outcome.replicates.resize(pending.size());
  // Plans are fixed, so materializing them in parallel is safe.
  ParallelFor(pending.size(), options.jobs, [&](size_t i) {
    const PendingReplicate& p = pending[i];
    Replicate r = ApplyPlan(*p.sentence, p.steps, lexicons);
    outcome.replicates[i] = {p.sentence->index, p.replicate_index,
                             std::move(r.text), std::move(r.audit)};
  });
  std::vector<std::string> texts;
  texts.reserve(outcome.replicates.size());
  for (const auto& r : outcome.replicates) texts.push_back(r.text);

  outcome.votes =
      ClassifyFanOut(classifier, texts, options.jobs, options.batch_size);
  outcome.classifier_calls = texts.size();
  outcome.replicate_count = texts.size();
  const VoteResult vote = TallyVotes(outcome.votes);
  outcome.final_label = vote.label;
  outcome.tie_broken = vote.tie_broken;
  outcome.certainty = Certainty(outcome.votes, vote.label);
  return outcome;
}

}  // namespace

std::string_view MethodName(DefenseMethod method) {
  return method == DefenseMethod::kRpd ? "rpd" : "ird";
}

DefenseMethod ParseMethod(std::string_view name) {
  if (name == "rpd") return DefenseMethod::kRpd;
  if (name == "ird") return DefenseMethod::kIrd;
  throw std::invalid_argument("unknown defense method '" + std::string(name) +
                              "' (expected rpd or ird)");
}

void RpdConfig::Validate() const {
  if (replicates_per_sentence < 1) {
    throw std::invalid_argument("RPD needs l >= 1");
  }
  if (corrections < 1) throw std::invalid_argument("RPD needs k >= 1");
  if (kinds.empty()) throw std::invalid_argument("no correction kinds enabled");
}

void IrdConfig::Validate() const {
  if (replicates < 1) throw std::invalid_argument("IRD needs k >= 1");
  if (kinds.empty()) throw std::invalid_argument("no correction kinds enabled");
}

VoteResult TallyVotes(std::span<const Verdict> votes) {
  if (votes.empty()) throw EmptyVotesError();
  size_t count[2] = {0, 0};
  double score[2] = {0.0, 0.0};
  for (const Verdict& v : votes) {
    const auto c = static_cast<size_t>(v.label);
    ++count[c];
    score[c] += v.score;
  }
  if (count[1] != count[0]) {
    return {count[1] > count[0] ? Label::kPositive : Label::kNegative, false};
  }
  if (score[1] > score[0]) return {Label::kPositive, true};
  return {Label::kNegative, true};
}

Label MajorityVote(std::span<const Verdict> votes) {
  return TallyVotes(votes).label;
}

double Certainty(std::span<const Verdict> votes, Label label) {
  if (votes.empty()) throw EmptyVotesError();
  size_t match = 0;
  for (const Verdict& v : votes) {
    if (v.label == label) ++match;
  }
  return static_cast<double>(match) / static_cast<double>(votes.size());
}

DefenseOutcome DefendRpd(const Review& review, const RpdConfig& config,
                         const Classifier& classifier,
                         const Lexicons& lexicons, Rng& rng,
                         const DefenseOptions& options) {
  config.Validate();
  if (review.EligibleCount() == 0) {
    return Degenerate(review, DefenseMethod::kRpd, classifier);
  }
  std::vector<PendingReplicate> pending;
  pending.reserve(review.sentences.size() * config.replicates_per_sentence);
  for (const Sentence& sentence : review.sentences) {
    for (size_t j = 0; j < config.replicates_per_sentence; ++j) {
      auto steps = PlanReplicate(sentence, config.corrections, config.kinds,
                                 rng, config.sampling);
      pending.push_back({&sentence, j, steps ? std::move(*steps)
                                             : std::vector<PlanStep>{}});
    }
  }
  return Finish(review, DefenseMethod::kRpd, std::move(pending), classifier,
                lexicons, options);
}

DefenseOutcome DefendIrd(const Review& review, const IrdConfig& config,
                         const Classifier& classifier,
                         const Lexicons& lexicons, Rng& rng,
                         const DefenseOptions& options) {
  config.Validate();
  if (review.EligibleCount() == 0) {
    return Degenerate(review, DefenseMethod::kIrd, classifier);
  }
  std::vector<PendingReplicate> pending;
  pending.reserve(config.replicates);
  for (size_t j = 0; j < config.replicates; ++j) {
    const Sentence& sentence =
        review.sentences[rng.UniformIndex(review.sentences.size())];
    auto steps = PlanReplicate(sentence, 1, config.kinds, rng);
    pending.push_back(
        {&sentence, j, steps ? std::move(*steps) : std::vector<PlanStep>{}});
  }
  return Finish(review, DefenseMethod::kIrd, std::move(pending), classifier,
                lexicons, options);
}

DefenseOutcome DefendRpd(const Review& review, const RpdConfig& config,
                         const Classifier& classifier,
                         const Lexicons& lexicons,
                         const DefenseOptions& options) {
  Rng rng = Rng(config.seed).Fork(review.id);
  return DefendRpd(review, config, classifier, lexicons, rng, options);
}

DefenseOutcome DefendIrd(const Review& review, const IrdConfig& config,
                         const Classifier& classifier,
                         const Lexicons& lexicons,
                         const DefenseOptions& options) {
  Rng rng = Rng(config.seed).Fork(review.id);
  return DefendIrd(review, config, classifier, lexicons, rng, options);
}

}  // namespace perturbshield
