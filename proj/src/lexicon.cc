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

#include "perturbshield/lexicon.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <unordered_set>

#include "perturbshield/errors.h"
#include "perturbshield/text.h"

namespace perturbshield {
namespace {

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

bool ValidSpellKey(std::string_view w) {
  if (w.empty() || w.front() == '-' || w.back() == '-') return false;
  return std::all_of(w.begin(), w.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return (u >= 'a' && u <= 'z') || u >= 0x80 || c == '-';
  });
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' ||
                        s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

// All strings obtained from `word` by deleting up to `depth` characters,
// including `word` itself.
void CollectDeletes(const std::string& word, int depth,
                    std::unordered_set<std::string>& out) {
  if (!out.insert(word).second || depth == 0 || word.empty()) return;
  for (size_t i = 0; i < word.size(); ++i) {
    std::string shorter = word;
    shorter.erase(i, 1);
    CollectDeletes(shorter, depth - 1, out);
  }
}

}  // namespace

int OsaDistance(std::string_view a, std::string_view b) {
  const size_t n = a.size();
  const size_t m = b.size();
  // Three rolling rows: i-2, i-1, i.
  std::vector<int> prev2(m + 1), prev(m + 1), cur(m + 1);
  for (size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= m; ++j) {
      const int cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        cur[j] = std::min(cur[j], prev2[j - 2] + 1);
      }
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

SpellLexicon SpellLexicon::Load(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  std::vector<std::pair<std::string, uint64_t>> entries;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = Trim(line);
    if (body.empty()) continue;
    const size_t space = body.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw ParseError(path, line_no, "expected 'word count'");
    }
    const std::string word = ToLowerAscii(body.substr(0, space));
    const std::string_view count_text = Trim(body.substr(space + 1));
    uint64_t count = 0;
    const auto [ptr, ec] = std::from_chars(
        count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || ptr != count_text.data() + count_text.size() ||
        count == 0) {
      throw ParseError(path, line_no, "count must be a positive integer");
    }
    if (!ValidSpellKey(word)) {
      throw ParseError(path, line_no, "word '" + word + "' is not alphabetic");
    }
    entries.emplace_back(word, count);
  }
  return FromEntries(entries, path);
}

SpellLexicon SpellLexicon::FromEntries(
    const std::vector<std::pair<std::string, uint64_t>>& entries,
    const std::string& origin) {
  SpellLexicon lex;
  for (const auto& [raw, count] : entries) {
    const std::string word = ToLowerAscii(raw);
    if (!ValidSpellKey(word) || count == 0) {
      throw ParseError(origin, 0, "invalid entry '" + raw + "'");
    }
    auto [it, inserted] = lex.words_.emplace(word, count);
    if (!inserted) it->second = std::max(it->second, count);
  }
  if (lex.words_.empty()) throw ParseError(origin, 0, "empty spell lexicon");
  lex.BuildIndex();
  return lex;
}

void SpellLexicon::BuildIndex() {
  by_id_.clear();
  deletes_.clear();
  for (const auto& [word, count] : words_) {
    const auto id = static_cast<uint32_t>(by_id_.size());
    by_id_.push_back(word);
    std::unordered_set<std::string> variants;
    CollectDeletes(word, kMaxIndexedDistance, variants);
    for (const auto& v : variants) deletes_[v].push_back(id);
  }
}

bool SpellLexicon::Contains(std::string_view lower_word) const {
  return words_.find(lower_word) != words_.end();
}

uint64_t SpellLexicon::Frequency(std::string_view lower_word) const {
  const auto it = words_.find(lower_word);
  return it == words_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string_view, int>> SpellLexicon::Neighbors(
    std::string_view lower_word, int max_distance) const {
  max_distance = std::clamp(max_distance, 0, kMaxIndexedDistance);
  std::unordered_set<std::string> variants;
  CollectDeletes(std::string(lower_word), max_distance, variants);
  std::set<uint32_t> ids;
  for (const auto& v : variants) {
    const auto it = deletes_.find(v);
    if (it == deletes_.end()) continue;
    ids.insert(it->second.begin(), it->second.end());
  }
  std::vector<std::pair<std::string_view, int>> out;
  for (uint32_t id : ids) {
    const std::string& word = by_id_[id];
    const int d = OsaDistance(lower_word, word);
    if (d <= max_distance) out.emplace_back(word, d);
  }
  return out;
}

SynonymLexicon SynonymLexicon::Load(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  SynonymLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<std::string> members;
    size_t start = 0;
    while (start <= body.size()) {
      const size_t tab = body.find('\t', start);
      const size_t end = tab == std::string_view::npos ? body.size() : tab;
      members.emplace_back(body.substr(start, end - start));
      start = end + 1;
    }
    lex.AddGroup(members);
  }
  return lex;
}

SynonymLexicon SynonymLexicon::FromGroups(
    const std::vector<std::vector<std::string>>& groups) {
  SynonymLexicon lex;
  for (const auto& g : groups) lex.AddGroup(g);
  return lex;
}

void SynonymLexicon::AddGroup(const std::vector<std::string>& members) {
  std::vector<std::string> group;
  for (const auto& raw : members) {
    std::string word = ToLowerAscii(NormalizeWhitespace(raw));
    if (word.empty()) continue;
    if (std::find(group.begin(), group.end(), word) == group.end()) {
      group.push_back(std::move(word));
    }
  }
  if (group.size() < 2) return;
  const size_t id = groups_.size();
  for (const auto& w : group) index_[w].push_back(id);
  groups_.push_back(std::move(group));
}

std::vector<std::string> SynonymLexicon::Candidates(
    std::string_view word) const {
  const std::string key = ToLowerAscii(word);
  const auto it = index_.find(key);
  if (it == index_.end()) return {};
  std::set<std::string> pool;
  for (size_t id : it->second) {
    for (const auto& member : groups_[id]) {
      if (member != key) pool.insert(member);
    }
  }
  return {pool.begin(), pool.end()};
}

}  // namespace perturbshield
