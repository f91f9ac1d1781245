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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "swlm/corpus.h"
#include "swlm/error.h"
#include "swlm/experiment.h"
#include "swlm/synth.h"
#include "swlm/vocab.h"

namespace swlm {
namespace {

namespace fs = std::filesystem;

SynthData tiny_synth() {
  SynthSpec s;
  s.num_roots = 60;
  s.num_function_words = 4;
  s.train_tokens = 1500;
  s.valid_tokens = 300;
  s.test_tokens = 300;
  return generate(s);
}

ExperimentConfig tiny_config() {
  ExperimentConfig c;
  c.vocab_size = 100;
  c.bpe_merges = 50;
  c.lm.composer.dim = 8;
  c.lm.composer.birnn_hidden = 8;
  c.lm.hidden = 8;
  c.lm.batch_size = 4;
  c.lm.eval_batch_size = 4;
  c.lm.unroll = 5;
  c.lm.max_epochs = 1;
  return c;
}

TEST(ShuffledPrefixTest, ExactSizeAndDeterministic) {
  const Corpus train = parse_corpus("a b c\nd e\nf g h i\nj\n", false);
  const Corpus p = shuffled_prefix(train, 6, 3);
  EXPECT_EQ(p.size(), 6u);
  EXPECT_EQ(shuffled_prefix(train, 6, 3).tokens, p.tokens);
  const std::map<std::string, std::int64_t, std::less<>> all = count_tokens(train);
  for (const auto& [w, n] : count_tokens(p)) EXPECT_LE(n, all.at(w));
  EXPECT_EQ(shuffled_prefix(train, 10, 3).size(), 10u);
  try {
    shuffled_prefix(train, 11, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
}

TEST(SweepVariantTest, Parse) {
  const SweepVariant w = parse_sweep_variant("word");
  EXPECT_EQ(w.unit, UnitKind::kWord);
  EXPECT_EQ(w.composer, ComposerKind::kLookup);
  const SweepVariant t = parse_sweep_variant("char-trigram:birnn");
  EXPECT_EQ(t.unit, UnitKind::kCharTrigram);
  EXPECT_EQ(t.composer, ComposerKind::kBiRnn);
  EXPECT_EQ(t.name, "char-trigram:birnn");
  EXPECT_THROW(parse_sweep_variant("char:add"), Error);
  EXPECT_THROW(parse_sweep_variant("nope"), Error);
}

TEST(RunModelTest, EveryUnitTrains) {
  const SynthData d = tiny_synth();
  const Vocabulary vocab = Vocabulary::build(d.train, 100);
  for (const char* spec : {"word", "char:birnn", "char-trigram:add", "bpe:birnn",
                           "morfessor:add", "char:cnn"}) {
    const SweepVariant v = parse_sweep_variant(spec);
    ExperimentConfig c = tiny_config();
    const int epochs = c.lm.max_epochs;
    const int dim = c.lm.composer.dim;
    c.lm = LMConfig::for_model(v.unit, v.composer);
    c.lm.composer.dim = dim;
    c.lm.composer.birnn_hidden = dim;
    c.lm.composer.filters_per_width = 2;
    c.lm.composer.conv_widths = {1, 2, 3};
    c.lm.hidden = 8;
    c.lm.batch_size = 4;
    c.lm.eval_batch_size = 4;
    c.lm.unroll = 5;
    c.lm.max_epochs = epochs;
    const RunResult r = run_model(c, d.train, d.valid, &d.test, vocab, &d.gold);
    ASSERT_TRUE(r.test_ppl.has_value()) << spec;
    EXPECT_TRUE(std::isfinite(*r.test_ppl)) << spec;
    EXPECT_GT(*r.test_ppl, 1.0) << spec;
    EXPECT_LT(r.valid_ppl, 2.0 * static_cast<double>(vocab.size())) << spec;
  }
}

TEST(SweepTest, DeterministicCsv) {
  const SynthData d = tiny_synth();
  const ExperimentConfig c = tiny_config();
  const std::vector<SweepVariant> variants{parse_sweep_variant("word"),
                                           parse_sweep_variant("char-trigram:birnn")};
  const auto a = size_sweep(c, d.train, d.valid, d.test, {500, 1000}, variants);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a[0].size, 500u);
  EXPECT_EQ(a[0].model, "word");
  EXPECT_EQ(a[1].model, "char-trigram:birnn");
  EXPECT_EQ(a[3].size, 1000u);
  const auto b = size_sweep(c, d.train, d.valid, d.test, {500, 1000}, variants);
  EXPECT_EQ(sweep_csv(a), sweep_csv(b));
  EXPECT_EQ(sweep_csv(a).rfind("size,model,test_ppl\n500,word,", 0), 0u);
  EXPECT_THROW(size_sweep(c, d.train, d.valid, d.test, {1000000}, variants), Error);
}

TEST(RunExperimentTest, WritesLogAndModel) {
  const SynthData d = tiny_synth();
  const fs::path dir = fs::temp_directory_path() / "swlm_experiment_test";
  fs::create_directories(dir);
  write_synth(d, dir.string());
  ExperimentConfig c = tiny_config();
  c.train_path = (dir / "train.txt").string();
  c.valid_path = (dir / "valid.txt").string();
  c.test_path = (dir / "test.txt").string();
  c.model_out = (dir / "m.swlm").string();
  c.log_out = (dir / "log.csv").string();
  c.lm.max_epochs = 2;
  int epochs = 0;
  const RunResult r = run_experiment(c, [&](const EpochLog&) { ++epochs; });
  EXPECT_EQ(epochs, 2);
  EXPECT_TRUE(fs::exists(c.model_out));
  const std::string log = read_file(c.log_out);
  EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 3);
  EXPECT_TRUE(r.test_ppl.has_value());
  fs::remove_all(dir);
}

}  // namespace
}  // namespace swlm
