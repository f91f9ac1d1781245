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

#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "swlm/bpe.h"
#include "swlm/corpus.h"
#include "swlm/error.h"
#include "swlm/rng.h"
#include "swlm/segmenters.h"

namespace swlm {
namespace {

using Units = std::vector<std::string>;

std::vector<SymbolPair> as_pairs(const MergeTable& t) { return t.merges(); }

TEST(BpeTest, FirstMergeByCount) {
  const MergeTable t = train_bpe(parse_corpus("ab ab ac", false), 1);
  EXPECT_EQ(as_pairs(t), (std::vector<SymbolPair>{{"^", "a"}}));
}

TEST(BpeTest, ZeroMerges) {
  const MergeTable t = train_bpe(parse_corpus("ab ab ac", false), 0);
  EXPECT_TRUE(t.empty());
  EXPECT_EQ(t.to_file_string(), "#bpe-v1 merges=0\n");
}

TEST(BpeTest, StopsWhenNoPairRepeats) {
  const MergeTable t = train_bpe(parse_corpus("abc", false), 100);
  EXPECT_TRUE(t.empty());
}

TEST(BpeTest, UnkIsNotTrainingData) {
  const MergeTable t = train_bpe(parse_corpus("<unk> x", false), 100);
  for (const auto& [l, r] : t.merges()) {
    EXPECT_EQ(l.find('<'), std::string::npos);
    EXPECT_EQ(r.find('<'), std::string::npos);
  }
}

TEST(BpeApplyTest, Examples) {
  const MergeTable t(std::vector<SymbolPair>{{"^", "a"}});
  EXPECT_EQ(apply_bpe("ab", t).units, (Units{"^a", "b", "$"}));
  EXPECT_EQ(apply_bpe("aaa", MergeTable(std::vector<SymbolPair>{{"a", "a"}})).units, (Units{"^", "aa", "a", "$"}));
  EXPECT_EQ(apply_bpe("wants", MergeTable()).units, segment_chars("wants").units);
}

TEST(BpeApplyTest, PriorityOrder) {
  // (b,c) outranks (a,b): "abc" must become a, bc rather than ab, c.
  const MergeTable t({{"b", "c"}, {"a", "b"}});
  EXPECT_EQ(apply_bpe("abc", t).units, (Units{"^", "a", "bc", "$"}));
}

TEST(MergeTableTest, FileFormat) {
  const MergeTable t({{"^", "a"}, {"^a", "b"}});
  const std::string text = t.to_file_string();
  EXPECT_EQ(text, "#bpe-v1 merges=2\n^ a\n^a b\n");
  EXPECT_EQ(MergeTable::parse(text).merges(), t.merges());
  auto kind_of = [](const std::string& s) {
    try {
      MergeTable::parse(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kInvalidArgument;
  };
  EXPECT_EQ(kind_of("^ a\n"), ErrorKind::kVersion);
  EXPECT_EQ(kind_of("#bpe-v1 merges=3\n^ a\n"), ErrorKind::kTruncated);
  EXPECT_EQ(kind_of("#bpe-v1 merges=1\nab\n"), ErrorKind::kMalformed);
  EXPECT_EQ(kind_of("#bpe-v1 merges=2\na b\na b\n"), ErrorKind::kMalformed);
}

std::map<std::string, std::int64_t> random_counts(Rng& rng) {
  std::map<std::string, std::int64_t> counts;
  const std::size_t types = 1 + rng.below(50);
  const std::string alphabet = "abcd";
  while (counts.size() < types) {
    std::string w;
    const std::size_t len = 1 + rng.below(7);
    for (std::size_t i = 0; i < len; ++i) w += alphabet[rng.below(alphabet.size())];
    counts[w] = static_cast<std::int64_t>(1 + rng.below(9));
  }
  return counts;
}

TEST(BpeOracleTest, RandomCorporaMatchBruteForce) {
  Rng rng(99, "bpe-oracle");
  for (int trial = 0; trial < 100; ++trial) {
    const auto counts = random_counts(rng);
    const std::size_t merges = rng.below(21);
    Counts c(counts.begin(), counts.end());
    const auto expected = swlm_test::bpe_oracle(counts, merges);
    ASSERT_EQ(train_bpe(c, merges).merges(), expected) << "trial " << trial;
  }
}

TEST(BpeOracleTest, EveryPrefixLength) {
  Rng rng(5, "bpe-prefix");
  const auto counts = random_counts(rng);
  Counts c(counts.begin(), counts.end());
  for (std::size_t k = 0; k <= 20; ++k) {
    EXPECT_EQ(train_bpe(c, k).merges(), swlm_test::bpe_oracle(counts, k));
  }
}

TEST(BpePropertyTest, MonotoneUnitCount) {
  Rng rng(17, "bpe-mono");
  const auto counts = random_counts(rng);
  Counts c(counts.begin(), counts.end());
  std::size_t prev = SIZE_MAX;
  for (std::size_t k = 0; k <= 30; ++k) {
    const MergeTable t = train_bpe(c, k);
    std::size_t total = 0;
    for (const auto& [w, n] : counts) total += apply_bpe(w, t).units.size() * n;
    EXPECT_LE(total, prev) << k;
    prev = total;
  }
}

TEST(BpePropertyTest, LosslessAndIdempotent) {
  Rng rng(23, "bpe-lossless");
  const auto counts = random_counts(rng);
  Counts c(counts.begin(), counts.end());
  const MergeTable t = train_bpe(c, 15);
  for (const auto& [w, n] : counts) {
    const Units units = apply_bpe(w, t).units;
    EXPECT_EQ(join_units(units), w);
    EXPECT_EQ(apply_bpe(join_units(units), t).units, units);
  }
}

}  // namespace
}  // namespace swlm
