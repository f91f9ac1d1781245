// Copyright 2026 The SWLM Authors.
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

#ifndef SWLM_LEXICON_H_
#define SWLM_LEXICON_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace swlm {

enum class LexiconKind {
  kMorfessor,  // "^want s$": morphs, boundary markers on first/last
  kAnalysis,   // "want+VB +3rd +SG +Pres": lemma+POS then one unit per feature
};

std::string_view lexicon_kind_name(LexiconKind kind);
LexiconKind parse_lexicon_kind(std::string_view name);

// Word -> unit sequence, loaded from "word<TAB>unit1 unit2 ..." lines.
class MorphLexicon {
 public:
  MorphLexicon() = default;
  explicit MorphLexicon(LexiconKind kind) : kind_(kind) {}

  // Malformed lines raise kMalformed naming the line number. A word listed
  // twice with different units keeps its first entry and records a warning.
  static MorphLexicon parse(std::string_view text, LexiconKind kind);
  static MorphLexicon load(const std::string& path, LexiconKind kind);

  LexiconKind kind() const { return kind_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<std::string>* find(std::string_view word) const;
  const std::map<std::string, std::vector<std::string>, std::less<>>& entries()
      const {
    return entries_;
  }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Adds an entry, normalising Morfessor markers. Returns false (and keeps
  // the existing units) if `word` is already present.
  bool add(const std::string& word, std::vector<std::string> units);

  std::string to_file_string() const;
  void save(const std::string& path) const;

 private:
  LexiconKind kind_ = LexiconKind::kMorfessor;
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
  std::vector<std::string> warnings_;
};

}  // namespace swlm

#endif  // SWLM_LEXICON_H_
