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

#ifndef SWLM_SYNTH_H_
#define SWLM_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "swlm/corpus.h"
#include "swlm/lexicon.h"

namespace swlm {

enum class Typology { kAgglutinative, kFusional, kReduplicative };

std::string_view typology_name(Typology t);
Typology parse_typology(std::string_view name);

struct SynthSpec {
  Typology typology = Typology::kAgglutinative;
  int num_roots = 2000;
  // Agglutinative: affixes spread over `num_slots` slots, one optional
  // affix per slot. Fusional: portmanteau suffixes, each shared by several
  // feature bundles. Reduplicative: optional suffixes.
  int num_affixes = 12;
  int num_slots = 3;
  // Particles whose choice depends on the outermost affix of the preceding
  // content word.
  int num_function_words = 20;
  double function_word_prob = 0.4;
  // Chance that a content word copies the previous content word's features.
  double agreement_prob = 0.5;
  // Reduplicative only: chance that a content word is written "w-w".
  double doubling_prob = 0.0;
  double zipf_exponent = 1.0;
  int min_sentence_length = 5;
  int max_sentence_length = 15;
  std::size_t train_tokens = 100000;
  std::size_t valid_tokens = 10000;
  std::size_t test_tokens = 10000;
  // Share of test content words whose root is drawn uniformly rather than
  // by rank, which over-samples rare forms.
  double test_rare_share = 0.5;
  // Draw affixes from the root alphabet instead of a disjoint one.
  bool overlap_alphabets = false;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SynthData {
  Corpus train;
  Corpus valid;
  Corpus test;
  // Morfessor-style gold segmentation of every generated type.
  MorphLexicon gold;
};

// Throws kInventoryTooSmall when the alphabets cannot supply the requested
// number of distinct roots, affixes or particles.
SynthData generate(const SynthSpec& spec);

// Writes train.txt, valid.txt, test.txt and gold.lex into `dir`.
void write_synth(const SynthData& data, const std::string& dir);

}  // namespace swlm

#endif  // SWLM_SYNTH_H_
