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

#include "perturbshield/corpus_io.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include "perturbshield/errors.h"

namespace perturbshield {
namespace {

template <typename Fn>
void ForEachJsonLine(std::istream& in, const std::string& origin, Fn&& fn) {
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(origin, number, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(origin, number, "expected an object");
    try {
      fn(j, number);
    } catch (const ParseError&) {
      throw;
    } catch (const Json::exception& e) {
      throw ParseError(origin, number, e.what());
    } catch (const DataError& e) {
      throw ParseError(origin, number, e.what());
    }
  }
}

std::string RequireString(const Json& j, const char* key,
                          const std::string& origin, size_t line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ParseError(origin, line,
                     std::string("missing or non-string \"") + key + "\"");
  }
  return it->get<std::string>();
}

std::optional<Label> OptionalLabel(const Json& j) {
  const auto it = j.find("label");
  if (it == j.end() || it->is_null()) return std::nullopt;
  return ParseLabel(it->get<std::string>());
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

Json VerdictToJson(const Verdict& v) {
  Json j;
  j["label"] = LabelName(v.label);
  j["score"] = v.score;
  return j;
}

Json TTestToJson(const TTestResult& t) {
  Json j;
  if (!t.valid) return nullptr;
  // JSON has no infinities; the sign survives as a string.
  if (std::isinf(t.t)) {
    j["t"] = t.t > 0 ? "inf" : "-inf";
  } else {
    j["t"] = t.t;
  }
  j["df"] = t.degrees_of_freedom;
  j["p_value"] = t.p_value;
  return j;
}

}  // namespace

std::vector<CorpusEntry> ParseCorpus(std::istream& in,
                                     const std::string& origin) {
  std::vector<CorpusEntry> out;
  std::set<std::string> seen;
  ForEachJsonLine(in, origin, [&](const Json& j, size_t line) {
    CorpusEntry e;
    e.id = RequireString(j, "id", origin, line);
    e.text = RequireString(j, "text", origin, line);
    e.label = OptionalLabel(j);
    if (!seen.insert(e.id).second) {
      throw ParseError(origin, line, "duplicate id '" + e.id + "'");
    }
    out.push_back(std::move(e));
  });
  return out;
}

std::vector<CorpusEntry> ReadCorpus(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ParseCorpus(in, path);
}

std::vector<CorpusEntry> ReadDefenseInput(const std::string& path) {
  std::ifstream in = OpenInput(path);
  std::vector<CorpusEntry> out;
  std::set<std::string> seen;
  ForEachJsonLine(in, path, [&](const Json& j, size_t line) {
    CorpusEntry e;
    e.id = RequireString(j, "id", path, line);
    e.text = RequireString(j, j.contains("attacked_text") ? "attacked_text" : "text",
                           path, line);
    e.label = OptionalLabel(j);
    if (!seen.insert(e.id).second) {
      throw ParseError(path, line, "duplicate id '" + e.id + "'");
    }
    out.push_back(std::move(e));
  });
  return out;
}

void WriteCorpus(std::ostream& out, const std::vector<CorpusEntry>& corpus) {
  for (const auto& e : corpus) {
    Json j;
    j["id"] = e.id;
    j["text"] = e.text;
    if (e.label) j["label"] = LabelName(*e.label);
    out << j.dump() << '\n';
  }
}

AttackedEntry ToAttackedEntry(const AttackedReview& attacked,
                              std::optional<Label> label) {
  AttackedEntry e;
  e.id = attacked.original.id;
  e.original_text = attacked.original.text;
  e.attacked_text = attacked.attacked_text;
  e.label = label ? label : attacked.original.gold_label;
  for (const Position& p : attacked.perturbed_positions) {
    e.perturbed_positions.emplace_back(p.sentence_index, p.token_index);
  }
  e.flipped = attacked.flipped;
  e.style = std::string(AttackStyleName(attacked.style));
  e.budget = attacked.budget;
  return e;
}

Json AttackedToJson(const AttackedEntry& e) {
  Json j;
  j["id"] = e.id;
  j["original_text"] = e.original_text;
  j["attacked_text"] = e.attacked_text;
  j["label"] = e.label ? Json(LabelName(*e.label)) : Json(nullptr);
  Json positions = Json::array();
  for (const auto& [s, t] : e.perturbed_positions) {
    positions.push_back(Json::array({s, t}));
  }
  j["perturbed_positions"] = std::move(positions);
  j["flipped"] = e.flipped;
  j["style"] = e.style;
  j["budget"] = e.budget;
  return j;
}

std::vector<AttackedEntry> ParseAttacked(std::istream& in,
                                         const std::string& origin) {
  std::vector<AttackedEntry> out;
  std::set<std::string> seen;
  ForEachJsonLine(in, origin, [&](const Json& j, size_t line) {
    AttackedEntry e;
    e.id = RequireString(j, "id", origin, line);
    e.original_text = RequireString(j, "original_text", origin, line);
    e.attacked_text = RequireString(j, "attacked_text", origin, line);
    e.label = OptionalLabel(j);
    if (j.contains("perturbed_positions")) {
      for (const auto& p : j.at("perturbed_positions")) {
        e.perturbed_positions.emplace_back(p.at(0).get<size_t>(),
                                           p.at(1).get<size_t>());
      }
    }
    e.flipped = j.value("flipped", false);
    e.style = j.value("style", std::string("unknown"));
    e.budget = j.value("budget", size_t{0});
    if (!seen.insert(e.id).second) {
      throw ParseError(origin, line, "duplicate id '" + e.id + "'");
    }
    out.push_back(std::move(e));
  });
  return out;
}

std::vector<AttackedEntry> ReadAttacked(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ParseAttacked(in, path);
}

Json OutcomeToJson(const DefenseOutcome& o) {
  Json j;
  j["review_id"] = o.review_id;
  j["method"] = MethodName(o.method);
  j["final_label"] = LabelName(o.final_label);
  j["certainty"] = o.certainty;
  j["replicate_count"] = o.replicate_count;
  j["classifier_calls"] = o.classifier_calls;
  Json votes = Json::array();
  for (const Verdict& v : o.votes) votes.push_back(VerdictToJson(v));
  j["votes"] = std::move(votes);
  j["degenerate"] = o.degenerate;
  j["tie_broken"] = o.tie_broken;
  return j;
}

DefenseOutcome OutcomeFromJson(const Json& j) {
  DefenseOutcome o;
  o.review_id = j.at("review_id").get<std::string>();
  o.method = ParseMethod(j.at("method").get<std::string>());
  o.final_label = ParseLabel(j.at("final_label").get<std::string>());
  o.certainty = j.at("certainty").get<double>();
  o.replicate_count = j.at("replicate_count").get<size_t>();
  o.classifier_calls = j.at("classifier_calls").get<size_t>();
  for (const auto& v : j.at("votes")) {
    o.votes.push_back({ParseLabel(v.at("label").get<std::string>()),
                       v.at("score").get<double>()});
  }
  o.degenerate = j.value("degenerate", false);
  o.tie_broken = j.value("tie_broken", false);
  return o;
}

Json AuditToJson(const std::string& review_id, const ReplicateRecord& record) {
  Json j;
  j["review_id"] = review_id;
  j["sentence_index"] = record.sentence_index;
  j["replicate_index"] = record.replicate_index;
  Json steps = Json::array();
  for (const AppliedStep& s : record.steps) {
    Json step;
    step["token_index"] = s.token_index;
    step["kind"] = KindName(s.kind);
    step["before"] = s.before;
    step["after"] = s.after;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

Json ReportToJson(const EvaluationReport& report) {
  const EvaluationConfig& c = report.config;
  Json config;
  Json methods = Json::array();
  for (DefenseMethod m : c.methods) methods.push_back(MethodName(m));
  config["methods"] = std::move(methods);
  Json kinds_rpd = Json::array();
  for (CorrectionKind k : c.rpd.kinds) kinds_rpd.push_back(KindName(k));
  Json kinds_ird = Json::array();
  for (CorrectionKind k : c.ird.kinds) kinds_ird.push_back(KindName(k));
  config["rpd"] = {{"l", c.rpd.replicates_per_sentence},
                   {"k", c.rpd.corrections},
                   {"kinds", kinds_rpd},
                   {"sampling", c.rpd.sampling == TokenSampling::kWithReplacement
                                    ? "with_replacement"
                                    : "without_replacement"}};
  config["ird"] = {{"k", c.ird.replicates}, {"kinds", kinds_ird}};
  config["runs"] = c.runs;
  config["same_seed_every_run"] = c.same_seed_every_run;

  Json j;
  j["seed"] = report.seed;
  j["runs"] = report.runs;
  j["corpus_size"] = report.corpus_size;
  j["clean_accuracy"] = report.clean_accuracy;
  j["config"] = std::move(config);
  Json rows = Json::array();
  for (const AttackRow& row : report.rows) {
    Json r;
    r["attack"] = row.attack;
    r["reviews"] = row.reviews;
    r["clean_accuracy"] = row.clean_accuracy;
    r["accuracy_without_defense"] = row.accuracy_without_defense;
    r["flipped"] = row.flipped;
    r["mean_sentences"] = row.mean_sentences;
    Json ms = Json::array();
    for (const MethodResult& m : row.methods) {
      Json mj;
      mj["method"] = MethodName(m.method);
      mj["run_accuracies"] = m.run_accuracies;
      mj["mean_accuracy"] = m.mean_accuracy;
      mj["std_accuracy"] = m.std_accuracy;
      mj["t_test"] = TTestToJson(m.t_test);
      mj["classifier_calls"] = m.classifier_calls;
      mj["calls_per_review"] = m.calls_per_review;
      if (m.seconds) mj["seconds"] = *m.seconds;
      ms.push_back(std::move(mj));
    }
    r["methods"] = std::move(ms);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

OutputFile::OutputFile(const std::string& path) : path_(path), out_(&std::cout) {
  if (path.empty() || path == "-") return;
  auto file = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*file) throw DataError("cannot open '" + path + "' for writing");
  out_ = file.get();
  owned_ = std::move(file);
}

OutputFile::~OutputFile() = default;

void OutputFile::Close() {
  out_->flush();
  if (!*out_) throw DataError("failed writing '" + path_ + "'");
}

}  // namespace perturbshield
