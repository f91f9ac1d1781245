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

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "swlm/corpus.h"
#include "swlm/error.h"
#include "swlm/lexicon.h"
#include "swlm/reduplication.h"
#include "swlm/rng.h"
#include "swlm/segmenters.h"
#include "swlm/utf8.h"

namespace swlm {
namespace {

using Units = std::vector<std::string>;

TEST(SegmentersTest, WantsTable) {
  EXPECT_EQ(segment_chars("wants").units, (Units{"^", "w", "a", "n", "t", "s", "$"}));
  EXPECT_EQ(segment_char_trigrams("wants").units,
            (Units{"^wa", "wan", "ant", "nts", "ts$"}));
}

TEST(SegmentersTest, ShortWords) {
  EXPECT_EQ(segment_chars("a").units, (Units{"^", "a", "$"}));
  EXPECT_EQ(segment_char_trigrams("a").units, (Units{"^a$"}));
  EXPECT_EQ(segment_char_trigrams("ab").units, (Units{"^ab", "ab$"}));
}

TEST(SegmentersTest, EmptyWord) {
  for (auto fn : {&segment_chars, &segment_char_trigrams}) {
    try {
      fn("");
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kEmptyWord);
    }
  }
  EXPECT_THROW(segment_chars("a b"), Error);
}

TEST(SegmentersTest, UnicodeScalars) {
  EXPECT_EQ(segment_chars("čaj").units, (Units{"^", "č", "a", "j", "$"}));
  EXPECT_EQ(segment_char_trigrams("мир").units, (Units{"^ми", "мир", "ир$"}));
}

std::string random_word(Rng& rng) {
  const std::size_t len = 1 + rng.below(12);
  std::vector<char32_t> cps;
  while (cps.size() < len) {
    char32_t c;
    switch (rng.below(4)) {
      case 0: c = static_cast<char32_t>(0x21 + rng.below(0x5e)); break;
      case 1: c = static_cast<char32_t>(0xa1 + rng.below(0x24f - 0xa1)); break;
      case 2: c = static_cast<char32_t>(0x400 + rng.below(0x100)); break;
      default: c = static_cast<char32_t>(0x1f300 + rng.below(0x100)); break;
    }
    if (!utf8::is_space(c)) cps.push_back(c);
  }
  return utf8::encode(cps);
}

TEST(SegmentersTest, FuzzedInvariants) {
  Rng rng(2024, "fuzz-words");
  for (int i = 0; i < 10000; ++i) {
    const std::string w = random_word(rng);
    const std::size_t L = utf8::length(w);
    const Units chars = segment_chars(w).units;
    const Units tris = segment_char_trigrams(w).units;
    ASSERT_EQ(chars.size(), L + 2) << w;
    ASSERT_EQ(tris.size(), L) << w;
    ASSERT_EQ(join_units(chars), w);
    ASSERT_EQ(join_trigrams(tris), w);
    for (const auto& t : tris) ASSERT_EQ(utf8::length(t), 3u);
  }
}

TEST(SegmenterTest, DispatchAndUnk) {
  const Segmenter chars(UnitKind::kChar);
  EXPECT_EQ(chars.segment("ab").units, (Units{"^", "a", "b", "$"}));
  EXPECT_EQ(chars.segment("<unk>").units, (Units{"<unk>"}));
  const Segmenter word(UnitKind::kWord);
  EXPECT_EQ(word.segment("ab").units, (Units{"ab"}));
  for (UnitKind k : {UnitKind::kWord, UnitKind::kChar, UnitKind::kCharTrigram, UnitKind::kBpe,
                     UnitKind::kMorfessor, UnitKind::kAnalysis}) {
    EXPECT_EQ(parse_unit_kind(unit_kind_name(k)), k);
  }
  EXPECT_THROW(parse_unit_kind("bytes"), Error);
}

TEST(LexiconTest, AnalysisLine) {
  const MorphLexicon lex =
      MorphLexicon::parse("wants\twant+VB +3rd +SG +Pres\n", LexiconKind::kAnalysis);
  ASSERT_NE(lex.find("wants"), nullptr);
  EXPECT_EQ(*lex.find("wants"), (Units{"want+VB", "+3rd", "+SG", "+Pres"}));
  EXPECT_EQ(segment_with_lexicon("wants", lex).units,
            (Units{"want+VB", "+3rd", "+SG", "+Pres"}));
}

TEST(LexiconTest, MorfessorLine) {
  const MorphLexicon lex = MorphLexicon::parse("wants\t^want s$\n", LexiconKind::kMorfessor);
  EXPECT_EQ(*lex.find("wants"), (Units{"^want", "s$"}));
  EXPECT_EQ(join_units(*lex.find("wants")), "wants");
}

TEST(LexiconTest, AbsentWordFallsBack) {
  const MorphLexicon lex = MorphLexicon::parse("wants\t^want s$\n", LexiconKind::kMorfessor);
  EXPECT_EQ(segment_with_lexicon("cats", lex).units, (Units{"^cats$"}));
}

TEST(LexiconTest, MalformedLineNumber) {
  try {
    MorphLexicon::parse("a\t^a$\nno-tab-here\n", LexiconKind::kMorfessor);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformed);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(MorphLexicon::parse("wants\twant+VB 3rd\n", LexiconKind::kAnalysis), Error);
  EXPECT_THROW(MorphLexicon::parse("wants\t\n", LexiconKind::kAnalysis), Error);
}

TEST(LexiconTest, ConflictingDuplicateKeepsFirst) {
  const MorphLexicon lex =
      MorphLexicon::parse("ab\t^a b$\nab\t^ab$\n", LexiconKind::kMorfessor);
  EXPECT_EQ(*lex.find("ab"), (Units{"^a", "b$"}));
  EXPECT_EQ(lex.warnings().size(), 1u);
}

TEST(LexiconTest, FileRoundTrip) {
  MorphLexicon lex(LexiconKind::kMorfessor);
  lex.add("cats", {"cat", "s"});
  lex.add("dog", {"dog"});
  const MorphLexicon back = MorphLexicon::parse(lex.to_file_string(), LexiconKind::kMorfessor);
  EXPECT_EQ(*back.find("cats"), (Units{"^cat", "s$"}));
  EXPECT_EQ(*back.find("dog"), (Units{"^dog$"}));
}

TEST(ReduplicationTest, PaperExamples) {
  EXPECT_EQ(detect_reduplication("anak-anak"), Reduplication::kFull);
  EXPECT_EQ(detect_reduplication("buah-buahan"), Reduplication::kPartial);
  EXPECT_EQ(detect_reduplication("kota"), Reduplication::kNone);
}

TEST(ReduplicationTest, Boundaries) {
  EXPECT_EQ(detect_reduplication("sayur-sayuran"), Reduplication::kPartial);
  EXPECT_EQ(detect_reduplication("rumahnya-rumah"), Reduplication::kPartial);
  EXPECT_EQ(detect_reduplication("ibu-kota"), Reduplication::kNone);
  EXPECT_EQ(detect_reduplication("-anak"), Reduplication::kNone);
  EXPECT_EQ(detect_reduplication("anak-"), Reduplication::kNone);
  EXPECT_EQ(detect_reduplication("a-a-a"), Reduplication::kNone);
}

TEST(ReduplicationTest, FullImpliesPartial) {
  for (const char* x : {"anak", "a", "buah", "rumah"}) {
    EXPECT_TRUE(partial_match(x, x));
    EXPECT_EQ(detect_reduplication(std::string(x) + "-" + x), Reduplication::kFull);
  }
}

TEST(ReduplicationTest, Stats) {
  RedupStats s = redup_stats(parse_corpus("anak-anak anak", false));
  EXPECT_DOUBLE_EQ(s.type_percent, 50.0);
  EXPECT_DOUBLE_EQ(s.token_percent, 50.0);
  s = redup_stats(parse_corpus("the cat sat", false));
  EXPECT_DOUBLE_EQ(s.type_percent, 0.0);
  EXPECT_DOUBLE_EQ(s.token_percent, 0.0);
  s = redup_stats(parse_corpus("anak-anak anak-anak buah-buahan x", false));
  EXPECT_DOUBLE_EQ(s.token_percent, 50.0);
  EXPECT_NEAR(s.type_percent, 100.0 / 3.0, 1e-12);
}

}  // namespace
}  // namespace swlm
