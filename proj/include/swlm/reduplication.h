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

#ifndef SWLM_REDUPLICATION_H_
#define SWLM_REDUPLICATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "swlm/corpus.h"

namespace swlm {

enum class Reduplication { kNone, kPartial, kFull };

std::string_view reduplication_name(Reduplication r);

// Affixes stripped from either half when testing for partial reduplication
// (e.g. "buah-buahan").
inline const std::vector<std::string> kDefaultRedupSuffixes = {"an", "nya"};

// Classifies a token "X-Y" with exactly one internal hyphen: full when
// X == Y, partial when one half is a proper prefix of the other or equals it
// once a listed suffix is removed, none otherwise.
Reduplication detect_reduplication(
    std::string_view token,
    const std::vector<std::string>& suffixes = kDefaultRedupSuffixes);

// The partial-reduplication test on the two halves. Equal halves also pass;
// detect_reduplication() gives full precedence.
bool partial_match(std::string_view left, std::string_view right,
                   const std::vector<std::string>& suffixes = kDefaultRedupSuffixes);

struct RedupStats {
  double type_percent = 0.0;
  double token_percent = 0.0;
  std::size_t full_types = 0;
  std::size_t types = 0;
  std::size_t full_tokens = 0;
  std::size_t tokens = 0;
};

// Share of types and tokens that are full reduplications, in percent.
RedupStats redup_stats(const Corpus& corpus);

}  // namespace swlm

#endif  // SWLM_REDUPLICATION_H_
