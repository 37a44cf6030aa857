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

// perturbshield: train, attack, defend, evaluate, prob, synth.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 backend error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "perturbshield/analysis.h"
#include "perturbshield/attack.h"
#include "perturbshield/backend.h"
#include "perturbshield/corpus_io.h"
#include "perturbshield/defense.h"
#include "perturbshield/errors.h"
#include "perturbshield/evaluation.h"
#include "perturbshield/naive_bayes.h"
#include "perturbshield/parallel.h"
#include "perturbshield/synthetic.h"

namespace ps = perturbshield;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBackend = 3;

struct CommonFlags {
  uint64_t seed = 0;
  size_t jobs = 1;
  std::string backend;
  std::string spell_lexicon;
  std::string synonym_lexicon;
  size_t batch_size = 32;
  size_t max_in_flight = 4;
  int timeout_ms = 10000;
  int retries = 3;
};

void AddSeedJobs(CLI::App* app, CommonFlags& f) {
  app->add_option("--seed", f.seed, "Master seed")->capture_default_str();
  app->add_option("--jobs", f.jobs, "Parallelism cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void AddBackend(CLI::App* app, CommonFlags& f) {
  app->add_option("--backend", f.backend,
                  "builtin:<model>, remote:<url> or stub:<label>");
  app->add_option("--batch-size", f.batch_size, "Remote batch size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--max-in-flight", f.max_in_flight,
                  "Remote concurrent request cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--timeout-ms", f.timeout_ms, "Remote per-request timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--retries", f.retries, "Remote retries after a failure")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

void AddLexicons(CLI::App* app, CommonFlags& f) {
  app->add_option("--spell-lexicon", f.spell_lexicon, "word<SPACE>count file");
  app->add_option("--synonym-lexicon", f.synonym_lexicon,
                  "TAB-separated synonym groups");
}

void AddConfig(CLI::App* app) {
  // Expanded by ExpandConfig before parsing; registered for --help.
  app->add_option("--config", "key=value file mirroring the flags");
}

// Rewrites `<sub> ... --config FILE ...` into `<sub> <file flags> ...` so
// command-line flags, parsed later, take precedence. Keys outside a
// section, or in a [<sub>] section, apply.
std::vector<std::string> ExpandConfig(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) return args;
  std::string path;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;
  std::ifstream probe(path);
  if (!probe) throw ps::DataError("cannot open config file '" + path + "'");
  const std::vector<CLI::ConfigItem> items = CLI::ConfigTOML().from_file(path);
  std::vector<std::string> injected;
  for (const CLI::ConfigItem& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() &&
        !(item.parents.size() == 1 && item.parents[0] == args[0])) {
      continue;
    }
    std::string value;
    for (size_t v = 0; v < item.inputs.size(); ++v) {
      if (v > 0) value += ',';
      value += item.inputs[v];
    }
    injected.push_back("--" + item.name + "=" + value);
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

std::unique_ptr<ps::Classifier> OpenBackend(const CommonFlags& f) {
  if (f.backend.empty()) throw std::invalid_argument("--backend is required");
  ps::RemoteClassifierOptions remote;
  remote.batch_size = f.batch_size;
  remote.max_in_flight = f.max_in_flight;
  remote.timeout = std::chrono::milliseconds(f.timeout_ms);
  remote.max_retries = f.retries;
  return ps::MakeBackend(ps::ParseBackendSelector(f.backend), remote);
}

ps::Lexicons OpenLexicons(const CommonFlags& f) {
  if (f.spell_lexicon.empty() || f.synonym_lexicon.empty()) {
    throw std::invalid_argument(
        "--spell-lexicon and --synonym-lexicon are required");
  }
  return ps::Lexicons{ps::SpellLexicon::Load(f.spell_lexicon),
                      ps::SynonymLexicon::Load(f.synonym_lexicon)};
}

void RequireNonEmpty(size_t n, const std::string& path) {
  if (n == 0) throw ps::DataError("'" + path + "' contains no reviews");
}

size_t Jobs(const ps::Classifier& c, size_t jobs) {
  return c.ConcurrentSafe() ? jobs : 1;
}

// ---- train ----------------------------------------------------------------

struct TrainFlags {
  std::string input;
  std::string output;
  double alpha = 1.0;
};

int RunTrain(const TrainFlags& t) {
  const auto corpus = ps::ReadCorpus(t.input);
  RequireNonEmpty(corpus.size(), t.input);
  std::vector<ps::LabeledText> labeled;
  labeled.reserve(corpus.size());
  for (const auto& e : corpus) {
    if (!e.label) throw ps::DataError("review '" + e.id + "' has no label");
    labeled.push_back({e.text, *e.label});
  }
  const auto model = ps::NaiveBayesModel::Train(labeled, t.alpha);
  model.SaveFile(t.output);
  spdlog::info("trained on {} reviews, vocabulary {}", labeled.size(),
               model.vocabulary_size());
  return 0;
}

// ---- attack ---------------------------------------------------------------

struct AttackFlags {
  std::string input;
  std::string output = "-";
  std::string style = "greedyflip";
  std::optional<size_t> budget;
  std::optional<double> fraction;
};

int RunAttack(const AttackFlags& a, const CommonFlags& f) {
  ps::AttackSpec spec;
  spec.style = ps::ParseAttackStyle(a.style);
  if (a.budget) spec.budget = *a.budget;
  spec.fraction = a.fraction;
  if (!a.budget && !a.fraction) spec.fraction = 0.1;
  spec.seed = f.seed;

  std::unique_ptr<ps::Classifier> target;
  if (!f.backend.empty()) target = OpenBackend(f);
  if (spec.style == ps::AttackStyle::kGreedyFlip && !target) {
    throw std::invalid_argument("greedyflip needs --backend");
  }
  std::optional<ps::SynonymLexicon> synonyms;
  if (spec.style != ps::AttackStyle::kCharBug) {
    if (f.synonym_lexicon.empty()) {
      throw std::invalid_argument(a.style + " needs --synonym-lexicon");
    }
    synonyms = ps::SynonymLexicon::Load(f.synonym_lexicon);
  } else {
    synonyms = ps::SynonymLexicon::FromGroups({});
  }

  const auto corpus = ps::ReadCorpus(a.input);
  RequireNonEmpty(corpus.size(), a.input);
  std::vector<ps::AttackedEntry> rows(corpus.size());
  const ps::Rng root(f.seed);
  const size_t jobs = target ? Jobs(*target, f.jobs) : f.jobs;
  ps::ParallelFor(corpus.size(), jobs, [&](size_t i) {
    const auto& e = corpus[i];
    const ps::Review review = ps::MakeReview(e.id, e.text, e.label);
    ps::Rng rng = root.Fork(e.id);
    rows[i] = ps::ToAttackedEntry(
        ps::RunAttack(review, spec, *synonyms, target.get(), rng), e.label);
  });

  ps::OutputFile out(a.output);
  size_t flipped = 0;
  for (const auto& row : rows) {
    out.stream() << ps::AttackedToJson(row).dump() << '\n';
    if (row.flipped) ++flipped;
  }
  out.Close();
  spdlog::info("attacked {} reviews with {}, {} flipped", rows.size(),
               a.style, flipped);
  return 0;
}

// ---- defend ---------------------------------------------------------------

struct DefenseFlags {
  std::string method = "rpd";
  size_t l = 7;
  std::optional<size_t> k;
  std::optional<size_t> rpd_k;
  std::optional<size_t> ird_k;
  std::string kinds = "spell,synonym,drop";
  std::string sampling = "without";
};

void AddDefenseFlags(CLI::App* app, DefenseFlags& d, bool allow_both) {
  app->add_option("--method", d.method,
                  allow_both ? "rpd, ird or both" : "rpd or ird")
      ->check(allow_both ? CLI::IsMember({"rpd", "ird", "both"})
                         : CLI::IsMember({"rpd", "ird"}))
      ->capture_default_str();
  app->add_option("--l", d.l, "RPD replicates per sentence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--k", d.k,
                  "RPD corrections per replicate (default 5) or IRD "
                  "replicates (default 41)")
      ->check(CLI::PositiveNumber);
  app->add_option("--rpd-k", d.rpd_k, "RPD corrections per replicate")
      ->check(CLI::PositiveNumber);
  app->add_option("--ird-k", d.ird_k, "IRD replicates")
      ->check(CLI::PositiveNumber);
  app->add_option("--kinds", d.kinds, "Enabled corrections")
      ->capture_default_str();
  app->add_option("--sampling", d.sampling,
                  "RPD token sampling within a replicate")
      ->check(CLI::IsMember({"without", "with"}))
      ->capture_default_str();
}

std::vector<ps::DefenseMethod> Methods(const DefenseFlags& d) {
  if (d.method == "both") return {ps::DefenseMethod::kRpd, ps::DefenseMethod::kIrd};
  return {ps::ParseMethod(d.method)};
}

void BuildConfigs(const DefenseFlags& d, uint64_t seed, ps::RpdConfig& rpd,
                  ps::IrdConfig& ird) {
  if (d.k && d.method == "both") {
    throw std::invalid_argument(
        "--k is ambiguous with --method both; use --rpd-k and --ird-k");
  }
  const auto kinds = ps::ParseKinds(d.kinds);
  rpd.replicates_per_sentence = d.l;
  rpd.corrections = d.rpd_k.value_or(5);
  rpd.kinds = kinds;
  rpd.sampling = d.sampling == "with" ? ps::TokenSampling::kWithReplacement
                                      : ps::TokenSampling::kWithoutReplacement;
  rpd.seed = seed;
  ird.replicates = d.ird_k.value_or(41);
  ird.kinds = kinds;
  ird.seed = seed;
  if (d.k) {
    if (d.method == "rpd") rpd.corrections = *d.k;
    if (d.method == "ird") ird.replicates = *d.k;
  }
  rpd.Validate();
  ird.Validate();
}

struct DefendFlags {
  std::string input;
  std::string output = "-";
  std::string audit;
};

int RunDefend(const DefendFlags& df, const DefenseFlags& d,
              const CommonFlags& f) {
  ps::RpdConfig rpd;
  ps::IrdConfig ird;
  BuildConfigs(d, f.seed, rpd, ird);
  const ps::DefenseMethod method = ps::ParseMethod(d.method);
  const auto backend = OpenBackend(f);
  const ps::Lexicons lexicons = OpenLexicons(f);
  const auto reviews = ps::ReadDefenseInput(df.input);
  RequireNonEmpty(reviews.size(), df.input);

  std::vector<ps::DefenseOutcome> outcomes(reviews.size());
  ps::ParallelFor(reviews.size(), Jobs(*backend, f.jobs), [&](size_t i) {
    const ps::Review review =
        ps::MakeReview(reviews[i].id, reviews[i].text, reviews[i].label);
    outcomes[i] = method == ps::DefenseMethod::kRpd
                      ? ps::DefendRpd(review, rpd, *backend, lexicons)
                      : ps::DefendIrd(review, ird, *backend, lexicons);
  });

  ps::OutputFile out(df.output);
  for (const auto& o : outcomes) out.stream() << ps::OutcomeToJson(o).dump() << '\n';
  out.Close();
  if (!df.audit.empty()) {
    ps::OutputFile audit(df.audit);
    for (const auto& o : outcomes) {
      for (const auto& r : o.replicates) {
        audit.stream() << ps::AuditToJson(o.review_id, r).dump() << '\n';
      }
    }
    audit.Close();
  }
  size_t calls = 0;
  for (const auto& o : outcomes) calls += o.classifier_calls;
  spdlog::info("defended {} reviews with {}, {} classifier calls",
               outcomes.size(), d.method, calls);
  return 0;
}

// ---- evaluate -------------------------------------------------------------

struct EvaluateFlags {
  std::string corpus;
  std::string input;
  std::string output;
  std::string table = "-";
  std::string outcomes;
  size_t runs = 5;
  bool report_timing = false;
  bool same_seed = false;
};

int RunEvaluate(const EvaluateFlags& ef, const DefenseFlags& d,
                const CommonFlags& f) {
  ps::EvaluationConfig config;
  BuildConfigs(d, f.seed, config.rpd, config.ird);
  config.methods = Methods(d);
  config.runs = ef.runs;
  config.seed = f.seed;
  config.jobs = f.jobs;
  config.same_seed_every_run = ef.same_seed;
  config.keep_outcomes = !ef.outcomes.empty();
  config.report_timing = ef.report_timing;

  const auto backend = OpenBackend(f);
  const ps::Lexicons lexicons = OpenLexicons(f);
  const auto corpus = ps::ReadCorpus(ef.corpus);
  RequireNonEmpty(corpus.size(), ef.corpus);
  const auto attacked = ps::ReadAttacked(ef.input);
  RequireNonEmpty(attacked.size(), ef.input);

  const ps::EvaluationReport report =
      ps::Evaluate(corpus, attacked, config, *backend, lexicons);

  if (!ef.output.empty()) {
    ps::OutputFile out(ef.output);
    out.stream() << ps::ReportToJson(report).dump(2) << '\n';
    out.Close();
  }
  if (!ef.table.empty()) {
    ps::OutputFile table(ef.table);
    table.stream() << ps::FormatReportTable(report);
    for (const auto& row : report.rows) {
      for (const auto& m : row.methods) {
        if (m.seconds) {
          table.stream() << fmt::format("{} {} wall-clock {:.3f}s\n", row.attack,
                                        ps::MethodName(m.method), *m.seconds);
        }
      }
    }
    table.Close();
  }
  if (!ef.outcomes.empty()) {
    ps::OutputFile out(ef.outcomes);
    for (const auto& row : report.rows) {
      for (const auto& m : row.methods) {
        for (size_t run = 0; run < m.outcomes.size(); ++run) {
          for (const auto& o : m.outcomes[run]) {
            ps::Json j;
            j["attack"] = row.attack;
            j["run"] = run;
            j.update(ps::OutcomeToJson(o));
            out.stream() << j.dump() << '\n';
          }
        }
      }
    }
    out.Close();
  }
  return 0;
}

// ---- prob -----------------------------------------------------------------

struct ProbFlags {
  double sentences = 0;
  double mean_length = 0;
  double attack = 0;
  double k = 41;
  double l = 7;
  double rpd_k = 5;
  uint64_t mc_trials = 0;
  bool json = false;
};

bool Whole(double x) { return std::floor(x) == x && x >= 0 && x < 1e15; }

int RunProb(const ProbFlags& p, const CommonFlags& f) {
  ps::ProbInputs in;
  in.sentences = p.sentences;
  in.mean_length = p.mean_length;
  in.attack = p.attack;
  in.l = p.l;
  in.k = p.k;
  ps::ProbInputs rpd_in = in;
  rpd_in.k = p.rpd_k;

  const double p_attack = ps::PAttack(in);
  const double p_ird = ps::PIrd(in);
  const double p_rpd = ps::PRpd(rpd_in);
  const double p_rpd_rearranged = ps::PRpdRearranged(rpd_in);
  const bool holds = ps::IrdBeatsAttack(in);
  const bool exact = Whole(in.sentences) && Whole(in.mean_length) &&
                     Whole(in.attack) && Whole(in.k);
  std::optional<ps::Rational> attack_exact, ird_exact;
  if (exact) {
    const auto n = static_cast<uint64_t>(in.sentences);
    const auto m = static_cast<uint64_t>(in.mean_length);
    attack_exact = ps::PAttackExact(static_cast<uint64_t>(in.attack), n * m);
    ird_exact = ps::PIrdExact(static_cast<uint64_t>(in.k), n, m);
  }
  std::optional<ps::McEstimate> mc;
  if (p.mc_trials > 0) {
    if (!exact) {
      throw std::invalid_argument("--mc-trials needs integer N, m and k");
    }
    mc = ps::McHitEstimate(static_cast<uint64_t>(in.sentences),
                           static_cast<uint64_t>(in.mean_length),
                           static_cast<uint64_t>(in.k), p.mc_trials,
                           ps::Rng(f.seed), f.jobs);
  }

  if (p.json) {
    ps::Json j;
    j["N"] = in.sentences;
    j["m"] = in.mean_length;
    j["W"] = in.words();
    j["a"] = in.attack;
    j["l"] = in.l;
    j["k"] = in.k;
    j["rpd_k"] = rpd_in.k;
    j["p_attack"] = p_attack;
    if (attack_exact) j["p_attack_exact"] = attack_exact->ToString();
    j["p_rpd"] = p_rpd;
    j["p_rpd_unnormalized"] = true;
    j["p_rpd_rearranged"] = p_rpd_rearranged;
    j["p_ird"] = p_ird;
    if (ird_exact) j["p_ird_exact"] = ird_exact->ToString();
    j["ird_beats_attack"] = holds;
    if (mc) {
      j["mc"] = {{"trials", p.mc_trials},
                 {"mean", mc->mean},
                 {"standard_error", mc->standard_error},
                 {"exact", mc->exact}};
    }
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << fmt::format("N={} m={} W={} a={} l={} k={} rpd_k={}\n",
                           in.sentences, in.mean_length, in.words(), in.attack,
                           in.l, in.k, rpd_in.k);
  std::cout << fmt::format("p_attack          {:.6g}{}\n", p_attack,
                           attack_exact ? " (" + attack_exact->ToString() + ")"
                                        : "");
  std::cout << fmt::format("p_rpd             {:.6g} (unnormalized)\n", p_rpd);
  std::cout << fmt::format("p_rpd_rearranged  {:.6g} (compare with a={})\n",
                           p_rpd_rearranged, in.attack);
  std::cout << fmt::format("p_ird             {:.6g}{}\n", p_ird,
                           ird_exact ? " (" + ird_exact->ToString() + ")" : "");
  std::cout << fmt::format("p_ird > p_attack  {}\n", holds ? "holds" : "fails");
  if (mc) {
    std::cout << fmt::format(
        "mc hits           {:.6g} +- {:.3g} over {} trials (exact {:.6g})\n",
        mc->mean, mc->standard_error, p.mc_trials, mc->exact);
  }
  return 0;
}

// ---- synth ----------------------------------------------------------------

struct SynthFlags {
  std::string output = "-";
  std::string spell_out;
  std::string synonyms_out;
  ps::SyntheticConfig config;
};

int RunSynth(SynthFlags s, const CommonFlags& f) {
  s.config.seed = f.seed;
  const auto corpus = ps::GenerateSynthetic(s.config);
  ps::OutputFile out(s.output);
  ps::WriteCorpus(out.stream(), corpus);
  out.Close();
  if (!s.spell_out.empty() || !s.synonyms_out.empty()) {
    if (s.spell_out.empty() || s.synonyms_out.empty()) {
      throw std::invalid_argument(
          "--spell-out and --synonyms-out must be given together");
    }
    ps::WriteSyntheticLexicons(s.spell_out, s.synonyms_out);
  }
  return 0;
}

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("perturbshield");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("PERTURBSHIELD_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only honor real names.
    if (level != spdlog::level::off || std::string(env) == "off") {
      spdlog::set_level(level);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App app{"Randomized input-perturbation defenses for sentiment "
               "classifiers"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CommonFlags common;

  TrainFlags train;
  auto* train_cmd = app.add_subcommand("train", "Train the naive-Bayes model");
  train_cmd->add_option("--input", train.input, "Labeled corpus (JSONL)")
      ->required();
  train_cmd->add_option("--output", train.output, "Model file")->required();
  train_cmd->add_option("--alpha", train.alpha, "Laplace smoothing (> 0)")
      ->capture_default_str();
  AddSeedJobs(train_cmd, common);
  AddConfig(train_cmd);

  AttackFlags attack;
  auto* attack_cmd = app.add_subcommand("attack", "Generate an attacked corpus");
  attack_cmd->add_option("--input", attack.input, "Corpus (JSONL)")->required();
  attack_cmd->add_option("--output", attack.output, "Attacked corpus (JSONL)")
      ->capture_default_str();
  attack_cmd->add_option("--style", attack.style, "charbug, synswap or greedyflip")
      ->check(CLI::IsMember({"charbug", "synswap", "greedyflip"}))
      ->capture_default_str();
  auto* budget_opt = attack_cmd->add_option("--budget", attack.budget,
                                            "Tokens per review (a)")
                         ->check(CLI::PositiveNumber);
  attack_cmd->add_option("--fraction", attack.fraction,
                         "Budget as a fraction of words (default 0.1)")
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(budget_opt);
  AddSeedJobs(attack_cmd, common);
  AddBackend(attack_cmd, common);
  AddLexicons(attack_cmd, common);
  AddConfig(attack_cmd);

  DefenseFlags defend_defense;
  DefendFlags defend;
  auto* defend_cmd = app.add_subcommand("defend", "Run RPD or IRD per review");
  defend_cmd->add_option("--input", defend.input,
                         "Attacked corpus or plain corpus (JSONL)")
      ->required();
  defend_cmd->add_option("--output", defend.output, "Outcomes (JSONL)")
      ->capture_default_str();
  defend_cmd->add_option("--audit", defend.audit,
                         "Replicate audit records (JSONL)");
  AddDefenseFlags(defend_cmd, defend_defense, false);
  AddSeedJobs(defend_cmd, common);
  AddBackend(defend_cmd, common);
  AddLexicons(defend_cmd, common);
  AddConfig(defend_cmd);

  EvaluateFlags evaluate;
  auto* eval_cmd = app.add_subcommand("evaluate", "Repeated-run evaluation");
  eval_cmd->add_option("--corpus", evaluate.corpus, "Clean labeled corpus")
      ->required();
  eval_cmd->add_option("--input", evaluate.input, "Attacked corpus")->required();
  eval_cmd->add_option("--output", evaluate.output, "Report (JSON)");
  eval_cmd->add_option("--table", evaluate.table, "Text table ('-' = stdout)")
      ->capture_default_str();
  eval_cmd->add_option("--outcomes", evaluate.outcomes,
                       "Per-run outcomes (JSONL)");
  eval_cmd->add_option("--runs", evaluate.runs, "Repeated runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval_cmd->add_flag("--report-timing", evaluate.report_timing,
                     "Add wall-clock seconds (not reproducible)");
  eval_cmd->add_flag("--same-seed-every-run", evaluate.same_seed,
                     "Reuse the first run's streams in every run");
  DefenseFlags eval_defense;
  eval_defense.method = "both";
  AddDefenseFlags(eval_cmd, eval_defense, true);
  AddSeedJobs(eval_cmd, common);
  AddBackend(eval_cmd, common);
  AddLexicons(eval_cmd, common);
  AddConfig(eval_cmd);

  ProbFlags prob;
  auto* prob_cmd = app.add_subcommand("prob", "Print the probability model");
  prob_cmd->add_option("--N,--sentences", prob.sentences, "Sentences")
      ->required();
  prob_cmd->add_option("--m,--mean-length", prob.mean_length,
                       "Mean sentence length")
      ->required();
  prob_cmd->add_option("--a,--attack", prob.attack, "Attack perturbations")
      ->required();
  prob_cmd->add_option("--k", prob.k, "IRD replicates")->capture_default_str();
  prob_cmd->add_option("--l", prob.l, "RPD replicates per sentence")
      ->capture_default_str();
  prob_cmd->add_option("--rpd-k", prob.rpd_k, "RPD corrections per replicate")
      ->capture_default_str();
  prob_cmd->add_option("--mc-trials", prob.mc_trials,
                       "Monte-Carlo trials for the IRD hit count (0 = skip)")
      ->capture_default_str();
  prob_cmd->add_flag("--json", prob.json, "Print JSON");
  AddSeedJobs(prob_cmd, common);
  AddConfig(prob_cmd);

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--output", synth.output, "Corpus (JSONL)")
      ->capture_default_str();
  synth_cmd->add_option("--reviews", synth.config.reviews)->capture_default_str();
  synth_cmd->add_option("--min-sentences", synth.config.min_sentences)
      ->capture_default_str();
  synth_cmd->add_option("--max-sentences", synth.config.max_sentences)
      ->capture_default_str();
  synth_cmd->add_option("--polar-rate", synth.config.polar_rate)
      ->capture_default_str();
  synth_cmd->add_option("--off-rate", synth.config.off_rate)
      ->capture_default_str();
  synth_cmd->add_option("--ironic-rate", synth.config.ironic_rate)
      ->capture_default_str();
  synth_cmd->add_option("--label-noise", synth.config.label_noise)
      ->capture_default_str();
  synth_cmd->add_option("--id-prefix", synth.config.id_prefix)
      ->capture_default_str();
  synth_cmd->add_option("--spell-out", synth.spell_out, "Write spell lexicon");
  synth_cmd->add_option("--synonyms-out", synth.synonyms_out,
                        "Write synonym lexicon");
  AddSeedJobs(synth_cmd, common);
  AddConfig(synth_cmd);

  try {
    std::vector<std::string> args = ExpandConfig(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitData;
  }

  try {
    if (*train_cmd) return RunTrain(train);
    if (*attack_cmd) return RunAttack(attack, common);
    if (*defend_cmd) return RunDefend(defend, defend_defense, common);
    if (*eval_cmd) return RunEvaluate(evaluate, eval_defense, common);
    if (*prob_cmd) return RunProb(prob, common);
    if (*synth_cmd) return RunSynth(synth, common);
  } catch (const ps::BackendError& e) {
    spdlog::error("{}", e.what());
    return kExitBackend;
  } catch (const ps::DataError& e) {
    spdlog::error("{}", e.what());
    return kExitData;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitData;
  }
  return kExitUsage;
}
