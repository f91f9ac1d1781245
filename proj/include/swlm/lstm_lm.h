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

#ifndef SWLM_LSTM_LM_H_
#define SWLM_LSTM_LM_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swlm/batch.h"
#include "swlm/composers.h"
#include "swlm/corpus.h"
#include "swlm/parameters.h"
#include "swlm/segmenters.h"
#include "swlm/vocab.h"

namespace swlm {

class Rng;

enum class ScheduleKind { kHalving, kConstantEarlyStop };

std::string_view schedule_kind_name(ScheduleKind kind);
ScheduleKind parse_schedule_kind(std::string_view name);

struct LMConfig {
  UnitKind unit = UnitKind::kWord;
  ComposerConfig composer;
  int layers = 2;
  int hidden = 200;
  double dropout = 0.5;
  int batch_size = 32;
  int unroll = 20;
  int eval_batch_size = 32;
  int max_epochs = 50;
  ScheduleKind schedule = ScheduleKind::kHalving;
  double learning_rate = 1.0;
  // Joint gradient norm bound per update; 0 disables clipping.
  double max_grad_norm = 5.0;
  // Halving: lr /= 2 after `patience` epochs whose validation perplexity
  // is not at least `halving_threshold` below the best so far.
  double halving_threshold = 0.1;
  // Constant schedule: stop after `patience` epochs without an improvement
  // larger than `stop_threshold`.
  double stop_threshold = 0.0;
  int patience = 3;
  std::uint64_t seed = 1;

  // Paper protocol for a unit/composer pair: bi-RNN composition trains at a
  // constant 0.2 with early stopping, everything else halves from 1.0.
  static LMConfig for_model(UnitKind unit, ComposerKind composer);

  void validate() const;
};

// Subword (or word) inventory of the input side. Id 0 is the fallback for
// anything not seen in training.
class UnitTable {
 public:
  UnitTable() = default;
  explicit UnitTable(std::vector<std::string> units);

  int id(std::string_view unit) const;
  std::size_t size() const { return units_.size(); }
  const std::vector<std::string>& units() const { return units_; }

 private:
  std::vector<std::string> units_;
  std::unordered_map<std::string, int> ids_;
};

inline constexpr std::string_view kUnkUnit = "<unk-unit>";

// Hidden and cell state of every layer, one row per batch stream.
struct LMState {
  std::vector<ad::Matrix> h;
  std::vector<ad::Matrix> c;
};

// Token ids of a corpus as the model consumes them: every token points at a
// word type (whose unit ids are precomputed) and at its output-vocabulary id.
struct PreparedCorpus {
  std::vector<std::vector<int>> type_units;
  std::vector<int> inputs;
  std::vector<int> targets;
};

struct WindowOutput {
  ad::Var loss;            // summed negative log-likelihood
  ad::Matrix log_probs;    // B x width, log p(target)
};

// Two-layer LSTM language model over composed word representations with a
// softmax over a closed output vocabulary.
class LanguageModel {
 public:
  LanguageModel(LMConfig config, Vocabulary output_vocab, Vocabulary input_vocab,
                Segmenter segmenter, UnitTable units);

  // Builds unit tables from `train` (after the unknown-word policy, so the
  // "<unk>" input gets trained) and registers freshly initialised weights.
  static LanguageModel create(const LMConfig& config, const Corpus& train,
                              Vocabulary output_vocab, Segmenter segmenter);

  LanguageModel(LanguageModel&&) = default;
  LanguageModel& operator=(LanguageModel&&) = default;

  const LMConfig& config() const { return config_; }
  const Vocabulary& output_vocab() const { return output_vocab_; }
  const Vocabulary& input_vocab() const { return input_vocab_; }
  const Segmenter& segmenter() const { return segmenter_; }
  const UnitTable& units() const { return units_; }
  const Composer& composer() const { return *composer_; }
  ad::ParameterStore& params() { return *params_; }
  const ad::ParameterStore& params() const { return *params_; }
  int output_size() const { return static_cast<int>(output_vocab_.size()); }

  std::vector<int> unit_ids(std::string_view word) const;
  // False only for word-lookup models asked about a word outside the
  // training vocabulary.
  bool can_represent(std::string_view word) const;

  PreparedCorpus prepare(const Corpus& corpus) const;

  LMState initial_state(std::size_t batch) const;

  // One truncated-BPTT window. `inputs` holds type indices into
  // `data.type_units`, `targets` output ids. `state` is read as the carried
  // state and overwritten with the final one (detached from the tape).
  WindowOutput forward_window(ad::Tape& tape, const PreparedCorpus& data,
                              const Batch& inputs, const Batch& targets,
                              LMState& state, Rng* rng, bool train) const;

  // One step in evaluation mode: representations (B x d) in, next-word
  // distributions (B x |V|) out.
  ad::Matrix lm_step(const ad::Matrix& reps, LMState& state) const;

  // Log-probability of each token given its history, or NaN where the
  // token is not predicted (stream starts and the dropped tail).
  std::vector<double> position_log_probs(const Corpus& corpus) const;

  double perplexity(const Corpus& corpus) const;

  // Word representations in evaluation mode, one row per word.
  ad::Matrix represent(const std::vector<std::string>& words) const;

 private:
  std::size_t eval_batch(std::size_t tokens) const;

  LMConfig config_;
  Vocabulary output_vocab_;
  Vocabulary input_vocab_;
  Segmenter segmenter_;
  UnitTable units_;
  std::unique_ptr<ad::ParameterStore> params_;
  std::unique_ptr<Composer> composer_;
};

// exp(-mean log p) over the non-NaN entries; throws kEmptyEvaluation when
// there are none.
double perplexity_from_log_probs(const std::vector<double>& log_probs);

}  // namespace swlm

#endif  // SWLM_LSTM_LM_H_
