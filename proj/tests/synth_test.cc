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

#include <cmath>
#include <set>
#include <utility>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "swlm/bpe.h"
#include "swlm/error.h"
#include "swlm/reduplication.h"
#include "swlm/segmenters.h"
#include "swlm/synth.h"
#include "swlm/vocab.h"

namespace swlm {
namespace {

SynthSpec small(Typology t) {
  SynthSpec s;
  s.typology = t;
  s.num_roots = 200;
  s.train_tokens = 5000;
  s.valid_tokens = 500;
  s.test_tokens = 500;
  return s;
}

// Character span [begin, end) of every unit within the unmarked word.
std::vector<std::pair<std::size_t, std::size_t>> spans(const std::vector<std::string>& units) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t pos = 0;
  for (std::string u : units) {
    if (!u.empty() && u.front() == '^') u.erase(0, 1);
    if (!u.empty() && u.back() == '$') u.pop_back();
    out.emplace_back(pos, pos + u.size());
    pos += u.size();
  }
  return out;
}

TEST(SynthTest, Deterministic) {
  for (Typology t : {Typology::kAgglutinative, Typology::kFusional, Typology::kReduplicative}) {
    SynthSpec s = small(t);
    s.doubling_prob = 0.05;
    const SynthData a = generate(s);
    const SynthData b = generate(s);
    EXPECT_EQ(a.train.tokens, b.train.tokens);
    EXPECT_EQ(a.test.tokens, b.test.tokens);
    EXPECT_EQ(a.gold.to_file_string(), b.gold.to_file_string());
    s.seed = 2;
    EXPECT_NE(generate(s).train.tokens, a.train.tokens);
  }
}

TEST(SynthTest, OneRootOneAffix) {
  SynthSpec s = small(Typology::kAgglutinative);
  s.num_roots = 1;
  s.num_affixes = 1;
  s.num_slots = 1;
  s.num_function_words = 0;
  const SynthData d = generate(s);
  const Counts c = count_tokens(d.train);
  EXPECT_EQ(c.size(), 2u);
}

TEST(SynthTest, TokenBudgetWithinOneSentence) {
  for (Typology t : {Typology::kAgglutinative, Typology::kFusional, Typology::kReduplicative}) {
    const SynthSpec s = small(t);
    const SynthData d = generate(s);
    EXPECT_GE(d.train.size(), s.train_tokens);
    EXPECT_LT(d.train.size(), s.train_tokens + static_cast<std::size_t>(s.max_sentence_length));
    EXPECT_GE(d.test.size(), s.test_tokens);
    EXPECT_LT(d.test.size(), s.test_tokens + static_cast<std::size_t>(s.max_sentence_length));
  }
}

TEST(SynthTest, GoldConcatenatesToSurface) {
  for (Typology t : {Typology::kAgglutinative, Typology::kFusional, Typology::kReduplicative}) {
    SynthSpec s = small(t);
    s.doubling_prob = 0.2;
    const SynthData d = generate(s);
    for (const Corpus* c : {&d.train, &d.valid, &d.test}) {
      for (const auto& w : c->tokens) {
        const auto* units = d.gold.find(w);
        ASSERT_NE(units, nullptr) << w;
        EXPECT_EQ(join_units(*units), w);
      }
    }
  }
}

TEST(SynthTest, FullDoubling) {
  SynthSpec s = small(Typology::kReduplicative);
  s.doubling_prob = 1.0;
  s.num_function_words = 0;
  const SynthData d = generate(s);
  for (const auto& w : d.train.tokens) {
    EXPECT_EQ(detect_reduplication(w), Reduplication::kFull) << w;
  }
}

TEST(SynthTest, InventoryTooSmall) {
  SynthSpec s = small(Typology::kAgglutinative);
  s.num_roots = 10000000;
  try {
    generate(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInventoryTooSmall);
  }
  SynthSpec slots = small(Typology::kAgglutinative);
  slots.num_affixes = 2;
  slots.num_slots = 3;
  EXPECT_THROW(generate(slots), Error);
}

TEST(SynthTest, BpeRecoversAffixes) {
  // Fifty merges suffice to build every affix; an affix occurrence counts
  // when BPE returns it as exactly one unit at its gold position.
  SynthSpec s = small(Typology::kAgglutinative);
  s.train_tokens = 20000;
  const SynthData d = generate(s);
  const MergeTable merges = train_bpe(d.train, 50);
  std::int64_t total = 0;
  std::int64_t found = 0;
  for (const auto& [word, count] : count_tokens(d.train)) {
    const auto* units = d.gold.find(word);
    ASSERT_NE(units, nullptr);
    const auto gold = spans(*units);
    const auto bpe = spans(apply_bpe(word, merges).units);
    const std::set<std::pair<std::size_t, std::size_t>> got(bpe.begin(), bpe.end());
    for (std::size_t i = 1; i < gold.size(); ++i) {
      total += count;
      if (got.count(gold[i]) > 0) found += count;
    }
  }
  ASSERT_GT(total, 0);
  const double recovered = static_cast<double>(found) / static_cast<double>(total);
  EXPECT_GE(recovered, 0.8) << recovered;
}

}  // namespace
}  // namespace swlm
