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

#ifndef SWLM_EXPERIMENT_H_
#define SWLM_EXPERIMENT_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swlm/config.h"
#include "swlm/lstm_lm.h"
#include "swlm/trainer.h"

namespace swlm {

// Segmenter for the configured unit: BPE is trained on `train`, lexicon
// units come from `lexicon` or else the configured lexicon file.
Segmenter make_segmenter(const ExperimentConfig& config, const Corpus& train,
                         const MorphLexicon* lexicon = nullptr);

struct RunResult {
  LanguageModel model;
  TrainResult training;
  double valid_ppl = 0.0;
  std::optional<double> test_ppl;
};

// Applies the unknown-word policy to `train`, builds and trains a model
// with the fixed `output_vocab`, and evaluates on `test` when given.
RunResult run_model(const ExperimentConfig& config, const Corpus& train, const Corpus& valid,
                    const Corpus* test, const Vocabulary& output_vocab,
                    const MorphLexicon* lexicon = nullptr,
                    std::function<void(const EpochLog&)> on_epoch = {});

// Loads the configured corpora and runs one experiment end to end. The
// model and training log are written when model_out / log_out are set.
RunResult run_experiment(const ExperimentConfig& config,
                         std::function<void(const EpochLog&)> on_epoch = {});

struct SweepVariant {
  std::string name;
  UnitKind unit = UnitKind::kWord;
  ComposerKind composer = ComposerKind::kLookup;
};

// "unit:composer", e.g. "char-trigram:birnn". A bare unit picks its usual
// composer.
SweepVariant parse_sweep_variant(const std::string& text);

struct SweepRow {
  std::size_t size = 0;
  std::string model;
  double test_ppl = 0.0;
};

// Lines of `train` in a seeded random order, cut to the first `size`
// tokens. Throws kInsufficientData when `train` is shorter.
Corpus shuffled_prefix(const Corpus& train, std::size_t size, std::uint64_t seed);

// One model per (size, variant), each on a prefix of the document-shuffled
// training data, all sharing the output vocabulary of the full training
// corpus. Runs in parallel on up to SWLM_THREADS workers; row order is
// size-major and independent of scheduling.
std::vector<SweepRow> size_sweep(const ExperimentConfig& base, const Corpus& train,
                                 const Corpus& valid, const Corpus& test,
                                 const std::vector<std::size_t>& sizes,
                                 const std::vector<SweepVariant>& variants,
                                 const MorphLexicon* lexicon = nullptr);

std::string sweep_csv(const std::vector<SweepRow>& rows);

// SWLM_THREADS if set and positive, else the hardware concurrency.
unsigned worker_limit();

}  // namespace swlm

#endif  // SWLM_EXPERIMENT_H_
