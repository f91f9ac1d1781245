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

#ifndef SWLM_TRAINER_H_
#define SWLM_TRAINER_H_

#include <functional>
#include <string>
#include <vector>

#include "swlm/lstm_lm.h"

namespace swlm {

struct EpochLog {
  int epoch = 0;
  double lr = 0.0;
  double train_ppl = 0.0;
  double valid_ppl = 0.0;
  double seconds = 0.0;
};

inline constexpr const char* kTrainLogHeader = "epoch,lr,train_ppl,valid_ppl,seconds";
std::string to_csv_row(const EpochLog& e);

struct TrainOptions {
  // When set, the unknown-word policy is re-drawn from this raw corpus at
  // the start of every epoch after the first (off by default).
  const Corpus* resample_source = nullptr;
  double unk_prob = 0.5;
  std::function<void(const EpochLog&)> on_epoch;
};

struct TrainResult {
  std::vector<EpochLog> log;
  double best_valid_ppl = 0.0;
  int best_epoch = 0;
  bool early_stopped = false;
};

// Plain SGD over truncated-BPTT windows. The loss of a window is its summed
// negative log-likelihood divided by the batch size, and the joint gradient
// norm is bounded by `max_grad_norm` before each step. Hidden state is
// zeroed at each epoch start and carried (without gradient) across windows.
// The parameters left in `model` are those of the best validation epoch.
TrainResult train(LanguageModel& model, const Corpus& train_corpus,
                  const Corpus& valid_corpus, const TrainOptions& options = {});

}  // namespace swlm

#endif  // SWLM_TRAINER_H_
