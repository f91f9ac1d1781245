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

#include "swlm/lstm_lm.h"

#include <cmath>
#include <limits>
#include <set>

#include "swlm/error.h"
#include "swlm/rng.h"

namespace swlm {

using ad::Index;
using ad::Matrix;
using ad::Tape;
using ad::Var;

std::string_view schedule_kind_name(ScheduleKind kind) {
  return kind == ScheduleKind::kHalving ? "halving" : "constant-early-stop";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "halving") return ScheduleKind::kHalving;
  if (name == "constant-early-stop" || name == "constant") {
    return ScheduleKind::kConstantEarlyStop;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown schedule '" + std::string(name) + "'");
}

LMConfig LMConfig::for_model(UnitKind unit, ComposerKind composer) {
  LMConfig c;
  c.unit = unit;
  c.composer.kind = composer;
  if (composer == ComposerKind::kBiRnn) {
    c.schedule = ScheduleKind::kConstantEarlyStop;
    c.learning_rate = 0.2;
  } else {
    c.schedule = ScheduleKind::kHalving;
    c.learning_rate = 1.0;
  }
  return c;
}

void LMConfig::validate() const {
  composer.validate(unit);
  if (layers < 1 || hidden <= 0 || batch_size <= 0 || unroll <= 0 ||
      eval_batch_size <= 0 || max_epochs < 0 || patience < 1) {
    throw Error(ErrorKind::kInvalidConfig, "LM sizes must be positive");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "dropout must be in [0, 1)");
  }
  if (!(learning_rate > 0.0)) {
    throw Error(ErrorKind::kInvalidConfig, "learning rate must be positive");
  }
  if (!(max_grad_norm >= 0.0)) {
    throw Error(ErrorKind::kInvalidConfig, "max_grad_norm must be >= 0");
  }
  const bool birnn = composer.kind == ComposerKind::kBiRnn;
  if (birnn != (schedule == ScheduleKind::kConstantEarlyStop)) {
    throw Error(ErrorKind::kInvalidConfig,
                "the constant-early-stop schedule goes with bi-RNN composition "
                "and only with it");
  }
}

UnitTable::UnitTable(std::vector<std::string> units) : units_(std::move(units)) {
  if (units_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "unit table needs a fallback entry");
  }
  for (std::size_t i = 0; i < units_.size(); ++i) {
    if (!ids_.emplace(units_[i], static_cast<int>(i)).second) {
      throw Error(ErrorKind::kMalformed, "duplicate unit '" + units_[i] + "'");
    }
  }
}

int UnitTable::id(std::string_view unit) const {
  auto it = ids_.find(std::string(unit));
  return it == ids_.end() ? 0 : it->second;
}

LanguageModel::LanguageModel(LMConfig config, Vocabulary output_vocab,
                             Vocabulary input_vocab, Segmenter segmenter,
                             UnitTable units)
    : config_(std::move(config)),
      output_vocab_(std::move(output_vocab)),
      input_vocab_(std::move(input_vocab)),
      segmenter_(std::move(segmenter)),
      units_(std::move(units)),
      params_(std::make_unique<ad::ParameterStore>(config_.seed)) {
  config_.validate();
  if (segmenter_.kind() != config_.unit) {
    throw Error(ErrorKind::kInvalidConfig, "segmenter does not match unit kind");
  }
  composer_ = std::make_unique<Composer>(config_.composer, config_.unit,
                                         static_cast<int>(units_.size()), *params_);
  const Index h = config_.hidden;
  for (int l = 0; l < config_.layers; ++l) {
    const Index in = l == 0 ? config_.composer.dim : h;
    const std::string base = "lm.layer" + std::to_string(l);
    params_->add(base + ".W", in + h, 4 * h);
    params_->add(base + ".b", 1, 4 * h);
  }
  params_->add("lm.V", h, static_cast<Index>(output_vocab_.size()));
}

LanguageModel LanguageModel::create(const LMConfig& config, const Corpus& train,
                                    Vocabulary output_vocab, Segmenter segmenter) {
  if (train.empty()) throw Error(ErrorKind::kEmptyCorpus, "training corpus");
  Vocabulary input_vocab =
      Vocabulary::from_counts(count_tokens(train), std::numeric_limits<std::size_t>::max());
  std::vector<std::string> units;
  if (config.unit == UnitKind::kWord) {
    units = input_vocab.words();
  } else {
    std::set<std::string> seen;
    for (const auto& [word, _] : input_vocab.frequencies()) {
      for (auto& u : segmenter.segment(word).units) seen.insert(std::move(u));
    }
    units.emplace_back(kUnkUnit);
    units.insert(units.end(), seen.begin(), seen.end());
  }
  return LanguageModel(config, std::move(output_vocab), std::move(input_vocab),
                       std::move(segmenter), UnitTable(std::move(units)));
}

std::vector<int> LanguageModel::unit_ids(std::string_view word) const {
  std::vector<int> ids;
  for (const auto& u : segmenter_.segment(word).units) ids.push_back(units_.id(u));
  return ids;
}

bool LanguageModel::can_represent(std::string_view word) const {
  if (config_.unit != UnitKind::kWord) return !word.empty();
  return input_vocab_.contains(word);
}

PreparedCorpus LanguageModel::prepare(const Corpus& corpus) const {
  PreparedCorpus data;
  std::unordered_map<std::string_view, int> types;
  data.inputs.reserve(corpus.size());
  data.targets.reserve(corpus.size());
  for (const auto& token : corpus.tokens) {
    auto [it, inserted] =
        types.emplace(token, static_cast<int>(data.type_units.size()));
    if (inserted) data.type_units.push_back(unit_ids(token));
    data.inputs.push_back(it->second);
    data.targets.push_back(output_vocab_.id(token));
  }
  return data;
}

LMState LanguageModel::initial_state(std::size_t batch) const {
  LMState s;
  for (int l = 0; l < config_.layers; ++l) {
    s.h.push_back(Matrix::Zero(static_cast<Index>(batch), config_.hidden));
    s.c.push_back(Matrix::Zero(static_cast<Index>(batch), config_.hidden));
  }
  return s;
}

WindowOutput LanguageModel::forward_window(Tape& tape, const PreparedCorpus& data,
                                           const Batch& inputs, const Batch& targets,
                                           LMState& state, Rng* rng,
                                           bool train) const {
  const std::size_t batch = inputs.inputs.size();
  const std::size_t width = inputs.width;
  const double p = train ? config_.dropout : 0.0;
  if (train && p > 0.0 && rng == nullptr) {
    throw Error(ErrorKind::kInvalidArgument, "training with dropout needs an RNG");
  }

  // Compose each distinct word type of the window once; occurrences share
  // the row (and its gradient).
  std::unordered_map<int, int> local;
  std::vector<std::vector<int>> window_units;
  std::vector<std::vector<int>> rows(width, std::vector<int>(batch));
  for (std::size_t t = 0; t < width; ++t) {
    for (std::size_t b = 0; b < batch; ++b) {
      const int type = inputs.inputs[b][t];
      auto [it, inserted] = local.emplace(type, static_cast<int>(window_units.size()));
      if (inserted) window_units.push_back(data.type_units[static_cast<std::size_t>(type)]);
      rows[t][b] = it->second;
    }
  }
  Var reps = composer_->compose(tape, window_units, rng, p, train);

  std::vector<Var> w, bias, h, c;
  for (int l = 0; l < config_.layers; ++l) {
    const std::string base = "lm.layer" + std::to_string(l);
    w.push_back(tape.parameter(params_->get(base + ".W")));
    bias.push_back(tape.parameter(params_->get(base + ".b")));
    h.push_back(tape.constant(state.h[static_cast<std::size_t>(l)]));
    c.push_back(tape.constant(state.c[static_cast<std::size_t>(l)]));
  }

  std::vector<Var> tops;
  std::vector<int> flat_targets;
  for (std::size_t t = 0; t < width; ++t) {
    Var x = ad::dropout(ad::pick_rows(reps, rows[t]), p, rng, train);
    for (std::size_t l = 0; l < w.size(); ++l) {
      LstmOutput out = lstm_cell(x, h[l], c[l], w[l], bias[l]);
      h[l] = out.h;
      c[l] = out.c;
      x = ad::dropout(out.h, p, rng, train);
    }
    tops.push_back(x);
    for (std::size_t b = 0; b < batch; ++b) flat_targets.push_back(targets.targets[b][t]);
  }
  Var logits = ad::matmul(ad::concat_rows(tops), tape.parameter(params_->get("lm.V")));
  Matrix logp;
  WindowOutput out;
  out.loss = ad::softmax_cross_entropy(logits, flat_targets, &logp);
  out.log_probs.resize(static_cast<Index>(batch), static_cast<Index>(width));
  for (std::size_t t = 0; t < width; ++t) {
    for (std::size_t b = 0; b < batch; ++b) {
      const Index row = static_cast<Index>(t * batch + b);
      out.log_probs(static_cast<Index>(b), static_cast<Index>(t)) =
          logp(row, flat_targets[static_cast<std::size_t>(row)]);
    }
  }
  for (std::size_t l = 0; l < w.size(); ++l) {
    state.h[l] = h[l].value();
    state.c[l] = c[l].value();
  }
  return out;
}

Matrix LanguageModel::lm_step(const Matrix& reps, LMState& state) const {
  if (reps.cols() != config_.composer.dim) {
    throw Error(ErrorKind::kShapeMismatch, "lm_step: representation width");
  }
  Tape tape;
  Var x = tape.constant(reps);
  for (int l = 0; l < config_.layers; ++l) {
    const std::string base = "lm.layer" + std::to_string(l);
    const auto li = static_cast<std::size_t>(l);
    LstmOutput out = lstm_cell(x, tape.constant(state.h[li]), tape.constant(state.c[li]),
                               tape.constant(params_->get(base + ".W").value),
                               tape.constant(params_->get(base + ".b").value));
    state.h[li] = out.h.value();
    state.c[li] = out.c.value();
    x = out.h;
  }
  return ad::softmax_rows(x.value() * params_->get("lm.V").value);
}

std::size_t LanguageModel::eval_batch(std::size_t tokens) const {
  if (tokens < 2) {
    throw Error(ErrorKind::kEmptyEvaluation, "need at least two tokens to evaluate");
  }
  return std::min<std::size_t>(static_cast<std::size_t>(config_.eval_batch_size),
                               tokens / 2);
}

std::vector<double> LanguageModel::position_log_probs(const Corpus& corpus) const {
  const std::size_t batch = eval_batch(corpus.size());
  const PreparedCorpus data = prepare(corpus);
  BatchStream in_stream(data.inputs, batch, static_cast<std::size_t>(config_.unroll));
  BatchStream tg_stream(data.targets, batch, static_cast<std::size_t>(config_.unroll));
  std::vector<double> result(corpus.size(), std::numeric_limits<double>::quiet_NaN());
  LMState state = initial_state(batch);
  Batch in, tg;
  while (in_stream.next(in)) {
    tg_stream.next(tg);
    Tape tape;
    WindowOutput out = forward_window(tape, data, in, tg, state, nullptr, false);
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t t = 0; t < in.width; ++t) {
        result[in_stream.source_index(b, in.offset + t + 1)] =
            out.log_probs(static_cast<Index>(b), static_cast<Index>(t));
      }
    }
  }
  return result;
}

double perplexity_from_log_probs(const std::vector<double>& log_probs) {
  double total = 0.0;
  std::size_t n = 0;
  for (double lp : log_probs) {
    if (std::isnan(lp)) continue;
    total += lp;
    ++n;
  }
  if (n == 0) throw Error(ErrorKind::kEmptyEvaluation, "no predicted tokens");
  return std::exp(-total / static_cast<double>(n));
}

double LanguageModel::perplexity(const Corpus& corpus) const {
  return perplexity_from_log_probs(position_log_probs(corpus));
}

Matrix LanguageModel::represent(const std::vector<std::string>& words) const {
  Matrix out(static_cast<Index>(words.size()), config_.composer.dim);
  constexpr std::size_t kChunk = 256;
  for (std::size_t start = 0; start < words.size(); start += kChunk) {
    const std::size_t end = std::min(words.size(), start + kChunk);
    std::vector<std::vector<int>> units;
    for (std::size_t i = start; i < end; ++i) units.push_back(unit_ids(words[i]));
    Tape tape;
    Var reps = composer_->compose(tape, units, nullptr, 0.0, false);
    out.middleRows(static_cast<Index>(start), static_cast<Index>(end - start)) =
        reps.value();
  }
  return out;
}

}  // namespace swlm
