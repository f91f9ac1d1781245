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

#include "swlm/segmenters.h"

#include "swlm/corpus.h"
#include "swlm/error.h"
#include "swlm/utf8.h"

namespace swlm {

std::string join_units(const std::vector<std::string>& units) {
  std::string s;
  for (const auto& u : units) s += u;
  if (s.starts_with('^')) s.erase(0, 1);
  if (s.ends_with('$')) s.pop_back();
  return s;
}

std::string join_trigrams(const std::vector<std::string>& units) {
  std::vector<char32_t> cps;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const std::vector<char32_t> u = utf8::decode(units[i]);
    if (i == 0) {
      cps = u;
    } else if (!u.empty()) {
      cps.push_back(u.back());
    }
  }
  if (!cps.empty() && cps.front() == U'^') cps.erase(cps.begin());
  if (!cps.empty() && cps.back() == U'$') cps.pop_back();
  return utf8::encode(cps);
}

namespace {

std::vector<char32_t> checked_chars(std::string_view word) {
  if (word.empty()) throw Error(ErrorKind::kEmptyWord, "cannot segment ''");
  std::vector<char32_t> cps = utf8::decode(word);
  for (char32_t c : cps) {
    if (utf8::is_space(c)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "word contains whitespace: '" + std::string(word) + "'");
    }
  }
  return cps;
}

}  // namespace

Segmentation segment_chars(std::string_view word) {
  Segmentation seg{std::string(word), {"^"}};
  for (char32_t c : checked_chars(word)) {
    std::string u;
    utf8::append(u, c);
    seg.units.push_back(std::move(u));
  }
  seg.units.emplace_back("$");
  return seg;
}

Segmentation segment_char_trigrams(std::string_view word) {
  std::vector<char32_t> padded{U'^'};
  for (char32_t c : checked_chars(word)) padded.push_back(c);
  padded.push_back(U'$');
  Segmentation seg{std::string(word), {}};
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    seg.units.push_back(utf8::encode({padded[i], padded[i + 1], padded[i + 2]}));
  }
  return seg;
}

Segmentation apply_bpe(std::string_view word, const MergeTable& merges) {
  checked_chars(word);
  return Segmentation{std::string(word), apply_bpe_units(word, merges)};
}

Segmentation segment_with_lexicon(std::string_view word,
                                  const MorphLexicon& lexicon) {
  checked_chars(word);
  if (const auto* units = lexicon.find(word)) {
    return Segmentation{std::string(word), *units};
  }
  return Segmentation{std::string(word), {"^" + std::string(word) + "$"}};
}

std::string_view unit_kind_name(UnitKind kind) {
  switch (kind) {
    case UnitKind::kWord: return "word";
    case UnitKind::kChar: return "char";
    case UnitKind::kCharTrigram: return "char-trigram";
    case UnitKind::kBpe: return "bpe";
    case UnitKind::kMorfessor: return "morfessor";
    case UnitKind::kAnalysis: return "analysis";
  }
  return "word";
}

UnitKind parse_unit_kind(std::string_view name) {
  for (UnitKind k : {UnitKind::kWord, UnitKind::kChar, UnitKind::kCharTrigram,
                     UnitKind::kBpe, UnitKind::kMorfessor, UnitKind::kAnalysis}) {
    if (unit_kind_name(k) == name) return k;
  }
  if (name == "character") return UnitKind::kChar;
  if (name == "trigram") return UnitKind::kCharTrigram;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown unit kind '" + std::string(name) + "'");
}

Segmenter::Segmenter(UnitKind kind, MergeTable merges)
    : kind_(kind), merges_(std::move(merges)) {}

Segmenter::Segmenter(UnitKind kind, MorphLexicon lexicon)
    : kind_(kind), lexicon_(std::move(lexicon)) {}

Segmentation Segmenter::segment(std::string_view word) const {
  if (word == kUnkToken) return Segmentation{std::string(word), {std::string(word)}};
  switch (kind_) {
    case UnitKind::kWord:
      checked_chars(word);
      return Segmentation{std::string(word), {std::string(word)}};
    case UnitKind::kChar:
      return segment_chars(word);
    case UnitKind::kCharTrigram:
      return segment_char_trigrams(word);
    case UnitKind::kBpe:
      return apply_bpe(word, merges_);
    case UnitKind::kMorfessor:
    case UnitKind::kAnalysis:
      return segment_with_lexicon(word, lexicon_);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown unit kind");
}

}  // namespace swlm
