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

#include "swlm/lexicon.h"

#include <sstream>

#include "swlm/corpus.h"
#include "swlm/error.h"
#include "swlm/utf8.h"

namespace swlm {

std::string_view lexicon_kind_name(LexiconKind kind) {
  return kind == LexiconKind::kAnalysis ? "analysis" : "morfessor";
}

LexiconKind parse_lexicon_kind(std::string_view name) {
  if (name == "analysis") return LexiconKind::kAnalysis;
  if (name == "morfessor" || name == "morfessor-style") {
    return LexiconKind::kMorfessor;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown lexicon kind '" + std::string(name) + "'");
}

const std::vector<std::string>* MorphLexicon::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

bool MorphLexicon::add(const std::string& word, std::vector<std::string> units) {
  if (kind_ == LexiconKind::kMorfessor && !units.empty()) {
    if (!units.front().starts_with('^')) units.front().insert(0, "^");
    if (!units.back().ends_with('$')) units.back().push_back('$');
  }
  return entries_.emplace(word, std::move(units)).second;
}

MorphLexicon MorphLexicon::parse(std::string_view text, LexiconKind kind) {
  if (!utf8::is_valid(text)) {
    throw Error(ErrorKind::kInvalidUtf8, "lexicon is not valid UTF-8");
  }
  MorphLexicon lex(kind);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    auto malformed = [&](const std::string& why) {
      return Error(ErrorKind::kMalformed,
                   "lexicon line " + std::to_string(line_no) + ": " + why);
    };
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw malformed("missing TAB");
    std::string word(line.substr(0, tab));
    if (word.empty() || word.find(' ') != std::string::npos) {
      throw malformed("bad word field");
    }
    std::vector<std::string> units;
    std::istringstream fields{std::string(line.substr(tab + 1))};
    for (std::string u; fields >> u;) units.push_back(u);
    if (units.empty()) throw malformed("no units");
    if (kind == LexiconKind::kAnalysis) {
      for (std::size_t i = 1; i < units.size(); ++i) {
        if (!units[i].starts_with('+') || units[i].size() < 2) {
          throw malformed("feature unit '" + units[i] + "' lacks '+' prefix");
        }
      }
    }
    const std::vector<std::string> copy = units;
    if (!lex.add(word, std::move(units))) {
      MorphLexicon probe(kind);
      probe.add(word, copy);
      if (*probe.find(word) != *lex.find(word)) {
        lex.warnings_.push_back("lexicon line " + std::to_string(line_no) +
                                ": conflicting duplicate '" + word +
                                "', keeping first entry");
      }
    }
  }
  return lex;
}

MorphLexicon MorphLexicon::load(const std::string& path, LexiconKind kind) {
  return parse(read_file(path), kind);
}

std::string MorphLexicon::to_file_string() const {
  std::string out;
  for (const auto& [word, units] : entries_) {
    out += word;
    out += '\t';
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (i) out += ' ';
      out += units[i];
    }
    out += '\n';
  }
  return out;
}

void MorphLexicon::save(const std::string& path) const {
  write_file(path, to_file_string());
}

}  // namespace swlm
