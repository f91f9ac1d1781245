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

#include "swlm/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>

#include "swlm/bpe.h"
#include "swlm/error.h"
#include "swlm/model_io.h"
#include "swlm/rng.h"
#include "swlm/vocab.h"

namespace swlm {

Segmenter make_segmenter(const ExperimentConfig& config, const Corpus& train,
                         const MorphLexicon* lexicon) {
  const UnitKind unit = config.lm.unit;
  switch (unit) {
    case UnitKind::kBpe:
      return Segmenter(unit, train_bpe(train, config.bpe_merges));
    case UnitKind::kMorfessor:
    case UnitKind::kAnalysis: {
      if (lexicon) return Segmenter(unit, *lexicon);
      if (config.lexicon_path.empty()) {
        throw Error(ErrorKind::kInvalidConfig,
                    std::string(unit_kind_name(unit)) + " units need a lexicon");
      }
      const LexiconKind kind =
          unit == UnitKind::kAnalysis ? LexiconKind::kAnalysis : config.lexicon_kind;
      return Segmenter(unit, MorphLexicon::load(config.lexicon_path, kind));
    }
    default:
      return Segmenter(unit);
  }
}

RunResult run_model(const ExperimentConfig& config, const Corpus& train, const Corpus& valid,
                    const Corpus* test, const Vocabulary& output_vocab,
                    const MorphLexicon* lexicon,
                    std::function<void(const EpochLog&)> on_epoch) {
  Segmenter segmenter = make_segmenter(config, train, lexicon);
  const Corpus policy_train =
      apply_unk_policy(train, count_tokens(train), config.unk_prob, config.lm.seed);
  LanguageModel model =
      LanguageModel::create(config.lm, policy_train, output_vocab, std::move(segmenter));
  TrainOptions options;
  options.unk_prob = config.unk_prob;
  options.resample_source = config.unk_resample ? &train : nullptr;
  options.on_epoch = std::move(on_epoch);
  TrainResult training = swlm::train(model, policy_train, valid, options);
  const double valid_ppl = model.perplexity(valid);
  std::optional<double> test_ppl;
  if (test) test_ppl = model.perplexity(*test);
  return RunResult{std::move(model), std::move(training), valid_ppl, test_ppl};
}

RunResult run_experiment(const ExperimentConfig& config,
                         std::function<void(const EpochLog&)> on_epoch) {
  if (config.train_path.empty() || config.valid_path.empty()) {
    throw Error(ErrorKind::kInvalidConfig, "train and valid paths are required");
  }
  const bool lower = config.resolved_lowercase();
  const Corpus train = load_corpus(config.train_path, lower);
  const Corpus valid = load_corpus(config.valid_path, lower);
  std::optional<Corpus> test;
  if (!config.test_path.empty()) test = load_corpus(config.test_path, lower);
  const Vocabulary output_vocab = Vocabulary::build(train, config.vocab_size);

  std::string log = std::string(kTrainLogHeader) + "\n";
  auto logger = [&](const EpochLog& e) {
    log += to_csv_row(e) + "\n";
    if (!config.log_out.empty()) write_file(config.log_out, log);
    if (on_epoch) on_epoch(e);
  };
  RunResult result = run_model(config, train, valid, test ? &*test : nullptr, output_vocab,
                               nullptr, logger);
  if (!config.model_out.empty()) save_model(result.model, config.model_out);
  return result;
}

SweepVariant parse_sweep_variant(const std::string& text) {
  SweepVariant v;
  v.name = text;
  const std::size_t colon = text.find(':');
  v.unit = parse_unit_kind(text.substr(0, colon));
  if (colon == std::string::npos) {
    v.composer = v.unit == UnitKind::kWord ? ComposerKind::kLookup : ComposerKind::kBiRnn;
  } else {
    v.composer = parse_composer_kind(text.substr(colon + 1));
  }
  LMConfig::for_model(v.unit, v.composer).composer.validate(v.unit);
  return v;
}

Corpus shuffled_prefix(const Corpus& train, std::size_t size, std::uint64_t seed) {
  if (train.size() < size) {
    throw Error(ErrorKind::kInsufficientData,
                "training corpus has " + std::to_string(train.size()) + " tokens, " +
                    std::to_string(size) + " requested");
  }
  const std::size_t lines = std::max<std::size_t>(train.line_starts.size(), 1);
  std::vector<std::size_t> order(lines);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed, "sweep-shuffle");
  for (std::size_t i = lines; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  Corpus out;
  out.source_path = train.source_path;
  out.lowercased = train.lowercased;
  for (std::size_t line : order) {
    if (out.tokens.size() >= size) break;
    std::size_t begin = 0;
    std::size_t end = train.size();
    if (!train.line_starts.empty()) std::tie(begin, end) = train.line_range(line);
    out.line_starts.push_back(out.tokens.size());
    for (std::size_t i = begin; i < end && out.tokens.size() < size; ++i) {
      out.tokens.push_back(train.tokens[i]);
    }
  }
  return out;
}

unsigned worker_limit() {
  if (const char* env = std::getenv("SWLM_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> size_sweep(const ExperimentConfig& base, const Corpus& train,
                                 const Corpus& valid, const Corpus& test,
                                 const std::vector<std::size_t>& sizes,
                                 const std::vector<SweepVariant>& variants,
                                 const MorphLexicon* lexicon) {
  if (sizes.empty() || variants.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "sweep needs at least one size and variant");
  }
  const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
  if (train.size() < largest) {
    throw Error(ErrorKind::kInsufficientData,
                "training corpus has " + std::to_string(train.size()) +
                    " tokens, sweep needs " + std::to_string(largest));
  }
  const Vocabulary output_vocab = Vocabulary::build(train, base.vocab_size);
  std::vector<Corpus> prefixes;
  for (std::size_t s : sizes) prefixes.push_back(shuffled_prefix(train, s, base.lm.seed));

  const std::size_t jobs = sizes.size() * variants.size();
  std::vector<SweepRow> rows(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t si = j / variants.size();
      const SweepVariant& v = variants[j % variants.size()];
      try {
        ExperimentConfig cfg = base;
        const LMConfig protocol = LMConfig::for_model(v.unit, v.composer);
        cfg.lm.unit = v.unit;
        cfg.lm.composer.kind = v.composer;
        cfg.lm.schedule = protocol.schedule;
        cfg.lm.learning_rate = protocol.learning_rate;
        RunResult r = run_model(cfg, prefixes[si], valid, &test, output_vocab, lexicon);
        rows[j] = SweepRow{sizes[si], v.name, *r.test_ppl};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n = std::min<std::size_t>(worker_limit(), jobs);
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "size,model,test_ppl\n";
  for (const auto& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", r.test_ppl);
    out += std::to_string(r.size) + "," + r.model + "," + buf + "\n";
  }
  return out;
}

}  // namespace swlm
