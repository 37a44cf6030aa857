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

#include "perturbshield/naive_bayes.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "perturbshield/errors.h"

namespace perturbshield {
namespace {

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view s, const std::string& origin,
                   size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(origin, line, "bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> SplitFields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (start <= line.size()) {
    const size_t pos = line.find(sep, start);
    const size_t end = pos == std::string_view::npos ? line.size() : pos;
    out.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

std::vector<std::string> NaiveBayesFeatures(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& t : Tokenize(text)) {
    const std::string_view core = t.core();
    if (!core.empty()) out.push_back(ToLowerAscii(core));
  }
  return out;
}

NaiveBayesModel NaiveBayesModel::Train(std::span<const LabeledText> corpus,
                                       double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("naive Bayes smoothing alpha must be > 0");
  }
  if (corpus.empty()) throw DataError("cannot train on an empty corpus");

  std::array<size_t, 2> docs{};
  std::array<double, 2> totals{};
  std::map<std::string, std::array<double, 2>, std::less<>> counts;
  for (const LabeledText& example : corpus) {
    const auto c = static_cast<size_t>(example.label);
    ++docs[c];
    for (std::string& w : NaiveBayesFeatures(example.text)) {
      counts[std::move(w)][c] += 1.0;
      totals[c] += 1.0;
    }
  }
  if (docs[0] == 0 || docs[1] == 0) {
    throw DataError("training corpus must contain both labels");
  }

  NaiveBayesModel model;
  model.alpha_ = alpha;
  const double n_docs = static_cast<double>(docs[0] + docs[1]);
  const double vocab = static_cast<double>(counts.size());
  for (size_t c = 0; c < 2; ++c) {
    model.log_prior_[c] = std::log(static_cast<double>(docs[c]) / n_docs);
  }
  for (auto& [word, count] : counts) {
    std::array<double, 2> ll{};
    for (size_t c = 0; c < 2; ++c) {
      ll[c] = std::log((count[c] + alpha) / (totals[c] + alpha * vocab));
    }
    model.log_likelihood_.emplace(word, ll);
  }
  return model;
}

const std::array<double, 2>* NaiveBayesModel::LogLikelihood(
    std::string_view word) const {
  const auto it = log_likelihood_.find(word);
  return it == log_likelihood_.end() ? nullptr : &it->second;
}

std::array<double, 2> NaiveBayesModel::LogJoint(std::string_view text) const {
  std::array<double, 2> joint = log_prior_;
  for (const std::string& w : NaiveBayesFeatures(text)) {
    if (const auto* ll = LogLikelihood(w)) {
      joint[0] += (*ll)[0];
      joint[1] += (*ll)[1];
    }
  }
  return joint;
}

Verdict NaiveBayesModel::Classify(std::string_view text,
                                  Label tie_label) const {
  const std::array<double, 2> joint = LogJoint(text);
  const double neg = joint[0];
  const double pos = joint[1];
  Label label = tie_label;
  if (pos > neg) label = Label::kPositive;
  if (neg > pos) label = Label::kNegative;
  const double winner = label == Label::kPositive ? pos : neg;
  const double loser = label == Label::kPositive ? neg : pos;
  return {label, 1.0 / (1.0 + std::exp(loser - winner))};
}

void NaiveBayesModel::Save(std::ostream& out) const {
  out << kFormatTag << ' ' << kFormatVersion << '\n';
  out << "alpha " << FormatDouble(alpha_) << '\n';
  out << "log_prior " << FormatDouble(log_prior_[0]) << ' '
      << FormatDouble(log_prior_[1]) << '\n';
  out << "vocabulary " << log_likelihood_.size() << '\n';
  for (const auto& [word, ll] : log_likelihood_) {
    out << word << '\t' << FormatDouble(ll[0]) << '\t' << FormatDouble(ll[1])
        << '\n';
  }
}

NaiveBayesModel NaiveBayesModel::Load(std::istream& in,
                                      const std::string& origin) {
  std::string line;
  size_t line_no = 0;
  auto next = [&](const char* what) -> std::string_view {
    if (!std::getline(in, line)) {
      throw ParseError(origin, line_no + 1,
                       std::string("unexpected end of file, expected ") + what);
    }
    ++line_no;
    return line;
  };

  {
    const auto f = SplitFields(next("header"), ' ');
    if (f.size() != 2 || f[0] != kFormatTag) {
      throw ParseError(origin, line_no, "not a naive Bayes model file");
    }
    if (f[1] != std::to_string(kFormatVersion)) {
      throw ParseError(origin, line_no,
                       "unsupported model version " + std::string(f[1]));
    }
  }
  NaiveBayesModel model;
  {
    const auto f = SplitFields(next("alpha"), ' ');
    if (f.size() != 2 || f[0] != "alpha") {
      throw ParseError(origin, line_no, "expected 'alpha <value>'");
    }
    model.alpha_ = ParseDouble(f[1], origin, line_no);
  }
  {
    const auto f = SplitFields(next("log_prior"), ' ');
    if (f.size() != 3 || f[0] != "log_prior") {
      throw ParseError(origin, line_no, "expected 'log_prior <neg> <pos>'");
    }
    model.log_prior_[0] = ParseDouble(f[1], origin, line_no);
    model.log_prior_[1] = ParseDouble(f[2], origin, line_no);
  }
  size_t vocab = 0;
  {
    const auto f = SplitFields(next("vocabulary"), ' ');
    if (f.size() != 2 || f[0] != "vocabulary") {
      throw ParseError(origin, line_no, "expected 'vocabulary <size>'");
    }
    const auto res =
        std::from_chars(f[1].data(), f[1].data() + f[1].size(), vocab);
    if (res.ec != std::errc()) {
      throw ParseError(origin, line_no, "bad vocabulary size");
    }
  }
  for (size_t i = 0; i < vocab; ++i) {
    const auto f = SplitFields(next("vocabulary entry"), '\t');
    if (f.size() != 3 || f[0].empty()) {
      throw ParseError(origin, line_no, "expected 'word<TAB>neg<TAB>pos'");
    }
    model.log_likelihood_.emplace(
        std::string(f[0]),
        std::array<double, 2>{ParseDouble(f[1], origin, line_no),
                              ParseDouble(f[2], origin, line_no)});
  }
  return model;
}

void NaiveBayesModel::SaveFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  Save(out);
  if (!out) throw DataError("write failed for " + path);
}

NaiveBayesModel NaiveBayesModel::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return Load(in, path);
}

std::vector<Verdict> NaiveBayesClassifier::ClassifyBatch(
    std::span<const std::string> texts) const {
  std::vector<Verdict> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(model_.Classify(t, tie_label_));
  return out;
}

}  // namespace perturbshield
