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

#ifndef PERTURBSHIELD_NAIVE_BAYES_H_
#define PERTURBSHIELD_NAIVE_BAYES_H_

#include <array>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perturbshield/classifier.h"
#include "perturbshield/text.h"

namespace perturbshield {

struct LabeledText {
  std::string text;
  Label label;
};

// Lowercased cores of the whitespace tokens of `text`; tokens without a
// core (pure punctuation) are skipped.
std::vector<std::string> NaiveBayesFeatures(std::string_view text);

// Multinomial naive Bayes with Laplace (add-alpha) smoothing.
//
//   log P(w | c) = log((count(w, c) + alpha) / (total(c) + alpha * |V|))
//   log P(c)     = log(docs(c) / docs)
//
// Words outside the training vocabulary are ignored at prediction time.
class NaiveBayesModel {
 public:
  static constexpr std::string_view kFormatTag = "perturbshield-naive-bayes";
  static constexpr int kFormatVersion = 1;

  // Throws std::invalid_argument for alpha <= 0 and DataError for an empty
  // or single-label corpus.
  static NaiveBayesModel Train(std::span<const LabeledText> corpus,
                               double alpha);

  // Log joint scores per label, indexed by Label.
  std::array<double, 2> LogJoint(std::string_view text) const;

  // Winner is the label with the larger joint score; an exact tie goes to
  // `tie_label`. Score is the winner's posterior probability.
  Verdict Classify(std::string_view text,
                   Label tie_label = Label::kNegative) const;

  // Text format, versioned header first; doubles are written in shortest
  // round-trip form so retraining on the same data is byte-identical.
  void Save(std::ostream& out) const;
  static NaiveBayesModel Load(std::istream& in,
                              const std::string& origin = "<stream>");
  void SaveFile(const std::string& path) const;
  static NaiveBayesModel LoadFile(const std::string& path);

  double alpha() const { return alpha_; }
  double log_prior(Label label) const {
    return log_prior_[static_cast<size_t>(label)];
  }
  size_t vocabulary_size() const { return log_likelihood_.size(); }
  // nullptr for out-of-vocabulary words.
  const std::array<double, 2>* LogLikelihood(std::string_view word) const;

 private:
  NaiveBayesModel() = default;

  double alpha_ = 1.0;
  std::array<double, 2> log_prior_{};
  std::map<std::string, std::array<double, 2>, std::less<>> log_likelihood_;
};

// Classifier backend over an immutable model; safe for concurrent use.
class NaiveBayesClassifier : public Classifier {
 public:
  explicit NaiveBayesClassifier(NaiveBayesModel model,
                                Label tie_label = Label::kNegative)
      : model_(std::move(model)), tie_label_(tie_label) {}

  std::vector<Verdict> ClassifyBatch(
      std::span<const std::string> texts) const override;

  const NaiveBayesModel& model() const { return model_; }

 private:
  NaiveBayesModel model_;
  Label tie_label_;
};

}  // namespace perturbshield

#endif  // PERTURBSHIELD_NAIVE_BAYES_H_
