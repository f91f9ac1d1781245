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

#ifndef SWLM_SEGMENTERS_H_
#define SWLM_SEGMENTERS_H_

#include <string>
#include <string_view>
#include <vector>

#include "swlm/bpe.h"
#include "swlm/lexicon.h"

namespace swlm {

// A word and the ordered subword units a segmenter produced for it. Units
// are surfaces; ids are assigned by the model's unit table.
struct Segmentation {
  std::string word;
  std::vector<std::string> units;
};

// Concatenates the units and removes the leading "^" and trailing "$"
// boundary markers; the inverse of the char and BPE segmenters.
std::string join_units(const std::vector<std::string>& units);

// Inverse of segment_char_trigrams(): windows overlap in two characters, so
// every unit after the first adds only its last character.
std::string join_trigrams(const std::vector<std::string>& units);

// ["^", c1, ..., cL, "$"] over Unicode scalar values.
Segmentation segment_chars(std::string_view word);

// Every width-3 window of "^" + word + "$"; L units for a word of length L.
Segmentation segment_char_trigrams(std::string_view word);

Segmentation apply_bpe(std::string_view word, const MergeTable& merges);

// Lexicon units for `word`, or the single unit "^word$" if it is absent.
Segmentation segment_with_lexicon(std::string_view word,
                                  const MorphLexicon& lexicon);

enum class UnitKind { kWord, kChar, kCharTrigram, kBpe, kMorfessor, kAnalysis };

std::string_view unit_kind_name(UnitKind kind);
UnitKind parse_unit_kind(std::string_view name);

// The configured segmentation function. The unknown-word token always maps
// to the single unit "<unk>" so it never decomposes into characters.
class Segmenter {
 public:
  Segmenter() = default;
  explicit Segmenter(UnitKind kind) : kind_(kind) {}
  Segmenter(UnitKind kind, MergeTable merges);
  Segmenter(UnitKind kind, MorphLexicon lexicon);

  UnitKind kind() const { return kind_; }
  const MergeTable& merges() const { return merges_; }
  const MorphLexicon& lexicon() const { return lexicon_; }

  Segmentation segment(std::string_view word) const;

 private:
  UnitKind kind_ = UnitKind::kWord;
  MergeTable merges_;
  MorphLexicon lexicon_;
};

}  // namespace swlm

#endif  // SWLM_SEGMENTERS_H_
