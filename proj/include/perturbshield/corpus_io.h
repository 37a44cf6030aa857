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

// JSON Lines readers and writers for corpora, attacked corpora, defense
// outcomes, replicate audits and evaluation reports. Keys are written in a
// fixed order so output bytes depend only on content.

#ifndef PERTURBSHIELD_CORPUS_IO_H_
#define PERTURBSHIELD_CORPUS_IO_H_

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "perturbshield/attack.h"
#include "perturbshield/defense.h"
#include "perturbshield/evaluation.h"

namespace perturbshield {

using Json = nlohmann::ordered_json;

// {"id", "text", "label"?}. Blank lines are skipped. Throws ParseError
// (with line number) on malformed rows, DataError on duplicate ids.
std::vector<CorpusEntry> ParseCorpus(std::istream& in,
                                     const std::string& origin);
std::vector<CorpusEntry> ReadCorpus(const std::string& path);
void WriteCorpus(std::ostream& out, const std::vector<CorpusEntry>& corpus);

// Reviews to defend: attacked rows use "attacked_text", plain corpus rows
// use "text".
std::vector<CorpusEntry> ReadDefenseInput(const std::string& path);

AttackedEntry ToAttackedEntry(const AttackedReview& attacked,
                              std::optional<Label> label);
Json AttackedToJson(const AttackedEntry& entry);
std::vector<AttackedEntry> ParseAttacked(std::istream& in,
                                         const std::string& origin);
std::vector<AttackedEntry> ReadAttacked(const std::string& path);

// {"review_id", "method", "final_label", "certainty", "replicate_count",
//  "classifier_calls", "votes": [{"label", "score"}...]} plus "degenerate"
// and "tie_broken".
Json OutcomeToJson(const DefenseOutcome& outcome);
DefenseOutcome OutcomeFromJson(const Json& j);

// One row per replicate: {"review_id", "sentence_index", "replicate_index",
// "steps": [{"token_index", "kind", "before", "after"}]}.
Json AuditToJson(const std::string& review_id, const ReplicateRecord& record);

Json ReportToJson(const EvaluationReport& report);

// Opens `path` for writing, or returns stdout for "-" / empty.
class OutputFile {
 public:
  explicit OutputFile(const std::string& path);
  ~OutputFile();
  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;
  std::ostream& stream() { return *out_; }
  // Flushes and throws DataError if anything failed to write.
  void Close();

 private:
  std::string path_;
  std::ostream* out_;
  std::unique_ptr<std::ostream> owned_;
};

}  // namespace perturbshield

#endif  // PERTURBSHIELD_CORPUS_IO_H_
