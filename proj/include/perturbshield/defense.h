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

// Randomized input-perturbation defenses.
//
// Random Perturbations Defense (RPD): every sentence of a review gets `l`
// replicates, each with `k` random corrections; all N*l replicates are
// classified and the majority label wins.
//
// Increased Randomness Defense (IRD): `k` replicates in total; each picks a
// sentence uniformly with replacement and applies a single random
// correction to it.
//
// Certainty is the fraction of votes that agree with the final label.

#ifndef PERTURBSHIELD_DEFENSE_H_
#define PERTURBSHIELD_DEFENSE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perturbshield/classifier.h"
#include "perturbshield/lexicon.h"
#include "perturbshield/perturb.h"
#include "perturbshield/rng.h"
#include "perturbshield/text.h"

namespace perturbshield {

enum class DefenseMethod { kRpd, kIrd };

std::string_view MethodName(DefenseMethod method);  // "rpd" / "ird"
DefenseMethod ParseMethod(std::string_view name);

struct RpdConfig {
  size_t replicates_per_sentence = 7;  // l
  size_t corrections = 5;              // k
  std::vector<CorrectionKind> kinds = AllKinds();
  TokenSampling sampling = TokenSampling::kWithoutReplacement;
  uint64_t seed = 0;

  void Validate() const;
};

struct IrdConfig {
  size_t replicates = 41;  // k
  std::vector<CorrectionKind> kinds = AllKinds();
  uint64_t seed = 0;

  void Validate() const;
};

// Fan-out knobs. They never change results, only how fast they arrive.
struct DefenseOptions {
  size_t jobs = 1;
  size_t batch_size = 64;
};

struct ReplicateRecord {
  size_t sentence_index = 0;
  size_t replicate_index = 0;
  std::string text;
  std::vector<AppliedStep> steps;
};

struct DefenseOutcome {
  std::string review_id;
  DefenseMethod method = DefenseMethod::kRpd;
  Label final_label = Label::kNegative;
  double certainty = 0.0;
  std::vector<Verdict> votes;
  size_t replicate_count = 0;
  size_t classifier_calls = 0;
  // No eligible token anywhere: the raw review was classified once.
  bool degenerate = false;
  // Counts were tied and the tie-break rule decided.
  bool tie_broken = false;
  std::vector<ReplicateRecord> replicates;
};

struct VoteResult {
  Label label = Label::kNegative;
  bool tie_broken = false;
};

// Strict majority by count; an exact count tie goes to the label with the
// larger summed score, and a tie on that too goes to negative. Throws
// EmptyVotesError on no votes.
VoteResult TallyVotes(std::span<const Verdict> votes);
Label MajorityVote(std::span<const Verdict> votes);

// Fraction of votes whose label equals `label`. Throws EmptyVotesError.
double Certainty(std::span<const Verdict> votes, Label label);

// `rng` drives all planning; classification happens after planning.
DefenseOutcome DefendRpd(const Review& review, const RpdConfig& config,
                         const Classifier& classifier,
                         const Lexicons& lexicons, Rng& rng,
                         const DefenseOptions& options = {});
DefenseOutcome DefendIrd(const Review& review, const IrdConfig& config,
                         const Classifier& classifier,
                         const Lexicons& lexicons, Rng& rng,
                         const DefenseOptions& options = {});

// Variants that draw from Rng(config.seed).Fork(review.id), so outcomes do
// not depend on the order reviews are processed in.
DefenseOutcome DefendRpd(const Review& review, const RpdConfig& config,
                         const Classifier& classifier,
                         const Lexicons& lexicons,
                         const DefenseOptions& options = {});
DefenseOutcome DefendIrd(const Review& review, const IrdConfig& config,
                         const Classifier& classifier,
                         const Lexicons& lexicons,
                         const DefenseOptions& options = {});

}  // namespace perturbshield

#endif  // PERTURBSHIELD_DEFENSE_H_
