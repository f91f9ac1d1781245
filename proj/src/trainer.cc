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

#include "swlm/trainer.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "swlm/error.h"
#include "swlm/rng.h"
#include "swlm/schedule.h"

namespace swlm {

std::string to_csv_row(const EpochLog& e) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d,%.6g,%.6f,%.6f,%.3f", e.epoch, e.lr,
                e.train_ppl, e.valid_ppl, e.seconds);
  return buf;
}

TrainResult train(LanguageModel& model, const Corpus& train_corpus,
                  const Corpus& valid_corpus, const TrainOptions& options) {
  const LMConfig& cfg = model.config();
  const auto batch = static_cast<std::size_t>(cfg.batch_size);
  const auto unroll = static_cast<std::size_t>(cfg.unroll);
  auto schedule = make_schedule(cfg);
  Rng dropout_rng(cfg.seed, "dropout");

  TrainResult result;
  result.best_valid_ppl = std::numeric_limits<double>::infinity();
  std::map<std::string, ad::Matrix> best_params = model.params().snapshot();

  PreparedCorpus data = model.prepare(train_corpus);
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    if (options.resample_source && epoch > 1) {
      const Corpus resampled = apply_unk_policy(
          *options.resample_source, count_tokens(*options.resample_source),
          options.unk_prob, cfg.seed + static_cast<std::uint64_t>(epoch));
      data = model.prepare(resampled);
    }
    BatchStream inputs(data.inputs, batch, unroll);
    BatchStream targets(data.targets, batch, unroll);
    LMState state = model.initial_state(batch);
    const double lr = schedule->learning_rate();

    double nll = 0.0;
    std::size_t predicted = 0;
    std::size_t step = 0;
    Batch in, tg;
    while (inputs.next(in)) {
      targets.next(tg);
      ++step;
      try {
        ad::Tape tape;
        WindowOutput out =
            model.forward_window(tape, data, in, tg, state, &dropout_rng, true);
        const double window_nll = out.loss.scalar();
        model.params().zero_grad();
        tape.backward(ad::scale(out.loss, 1.0 / static_cast<double>(batch)));
        if (cfg.max_grad_norm > 0.0) model.params().clip_grad_norm(cfg.max_grad_norm);
        model.params().sgd_step(lr);
        nll += window_nll;
        predicted += batch * in.width;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNonFinite) throw;
        throw Error(ErrorKind::kDivergence, "epoch " + std::to_string(epoch) +
                                                " step " + std::to_string(step) +
                                                ": " + e.what());
      }
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.lr = lr;
    entry.train_ppl = std::exp(nll / static_cast<double>(predicted));
    entry.valid_ppl = model.perplexity(valid_corpus);
    if (!std::isfinite(entry.train_ppl) || !std::isfinite(entry.valid_ppl)) {
      throw Error(ErrorKind::kDivergence,
                  "epoch " + std::to_string(epoch) + ": non-finite perplexity");
    }
    entry.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    result.log.push_back(entry);
    if (entry.valid_ppl < result.best_valid_ppl) {
      result.best_valid_ppl = entry.valid_ppl;
      result.best_epoch = epoch;
      best_params = model.params().snapshot();
    }
    if (options.on_epoch) options.on_epoch(entry);
    if (schedule->observe(entry.valid_ppl)) {
      result.early_stopped = true;
      break;
    }
  }
  model.params().restore(best_params);
  return result;
}

}  // namespace swlm
