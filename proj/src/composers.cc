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

#include "swlm/composers.h"

#include <algorithm>

#include "swlm/error.h"
#include "swlm/rng.h"

namespace swlm {

using ad::Index;
using ad::Matrix;
using ad::Parameter;
using ad::Tape;
using ad::Var;

std::string_view composer_kind_name(ComposerKind kind) {
  switch (kind) {
    case ComposerKind::kLookup: return "lookup";
    case ComposerKind::kAddition: return "add";
    case ComposerKind::kBiRnn: return "birnn";
    case ComposerKind::kConvHighway: return "conv-highway";
  }
  return "lookup";
}

ComposerKind parse_composer_kind(std::string_view name) {
  if (name == "lookup" || name == "word") return ComposerKind::kLookup;
  if (name == "add" || name == "addition") return ComposerKind::kAddition;
  if (name == "birnn" || name == "bi-lstm" || name == "bilstm") {
    return ComposerKind::kBiRnn;
  }
  if (name == "conv-highway" || name == "cnn") return ComposerKind::kConvHighway;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown composer '" + std::string(name) + "'");
}

int ComposerConfig::conv_output_width() const {
  int total = 0;
  for (int w : conv_widths) total += filters_per_width * w;
  return total;
}

void ComposerConfig::validate(UnitKind units) const {
  if (dim <= 0 || birnn_hidden <= 0 || char_dim <= 0 || filters_per_width <= 0) {
    throw Error(ErrorKind::kInvalidConfig, "composer widths must be positive");
  }
  switch (kind) {
    case ComposerKind::kLookup:
      if (units != UnitKind::kWord) {
        throw Error(ErrorKind::kInvalidConfig,
                    "lookup composition needs word units, got " +
                        std::string(unit_kind_name(units)));
      }
      break;
    case ComposerKind::kAddition:
      if (units == UnitKind::kChar) {
        throw Error(ErrorKind::kCharAdditionForbidden,
                    "addition over single characters conflates many words");
      }
      [[fallthrough]];
    case ComposerKind::kBiRnn:
      if (units == UnitKind::kWord) {
        throw Error(ErrorKind::kInvalidConfig,
                    "word units use lookup composition");
      }
      break;
    case ComposerKind::kConvHighway:
      if (units != UnitKind::kChar) {
        throw Error(ErrorKind::kInvalidConfig,
                    "conv-highway composition takes character units only");
      }
      if (conv_widths.empty()) {
        throw Error(ErrorKind::kInvalidConfig, "conv-highway needs filter widths");
      }
      for (int w : conv_widths) {
        if (w <= 0) throw Error(ErrorKind::kInvalidConfig, "bad filter width");
      }
      break;
  }
}

LstmOutput lstm_cell(Var x, Var h, Var c, Var w, Var b) {
  const Index hidden = h.cols();
  Var gates = ad::add_row(ad::matmul(ad::concat_cols({x, h}), w), b);
  Var in = ad::sigmoid(ad::slice_cols(gates, 0, hidden));
  Var forget = ad::sigmoid(ad::slice_cols(gates, hidden, hidden));
  Var out = ad::sigmoid(ad::slice_cols(gates, 2 * hidden, hidden));
  Var cand = ad::tanh(ad::slice_cols(gates, 3 * hidden, hidden));
  Var c_next = ad::add(ad::mul(forget, c), ad::mul(in, cand));
  Var h_next = ad::mul(out, ad::tanh(c_next));
  return {h_next, c_next};
}

Var compose_add(Tape& tape, Parameter& table,
                const std::vector<std::vector<int>>& units) {
  std::vector<int> flat;
  std::vector<int> group;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (units[i].empty()) {
      throw Error(ErrorKind::kInvalidArgument, "compose_add: empty segmentation");
    }
    for (int u : units[i]) {
      flat.push_back(u);
      group.push_back(static_cast<int>(i));
    }
  }
  return ad::group_sum(tape.embedding(table, flat), group,
                       static_cast<Index>(units.size()));
}

namespace {

// Runs one LSTM direction over `sequences` (already in processing order)
// and returns the state after each row's last unit.
Var run_masked_lstm(Tape& tape, Parameter& table, Var w, Var b, Index hidden,
                    const std::vector<std::vector<int>>& sequences) {
  const Index n = static_cast<Index>(sequences.size());
  std::size_t longest = 0;
  for (const auto& s : sequences) longest = std::max(longest, s.size());
  Var h = tape.constant(Matrix::Zero(n, hidden));
  Var c = tape.constant(Matrix::Zero(n, hidden));
  std::vector<int> ids(static_cast<std::size_t>(n));
  std::vector<double> mask(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < longest; ++t) {
    bool all_active = true;
    for (std::size_t i = 0; i < sequences.size(); ++i) {
      const bool active = t < sequences[i].size();
      ids[i] = active ? sequences[i][t] : sequences[i].back();
      mask[i] = active ? 1.0 : 0.0;
      all_active = all_active && active;
    }
    Var x = tape.embedding(table, ids);
    LstmOutput next = lstm_cell(x, h, c, w, b);
    if (all_active) {
      h = next.h;
      c = next.c;
    } else {
      h = ad::blend(mask, next.h, h);
      c = ad::blend(mask, next.c, c);
    }
  }
  return h;
}

}  // namespace

Var compose_birnn(Tape& tape, Parameter& table, const BiRnnWeights& weights,
                  const std::vector<std::vector<int>>& units, Rng* rng,
                  double dropout, bool train) {
  for (const auto& u : units) {
    if (u.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "compose_birnn: empty segmentation");
    }
  }
  const Index hidden = weights.out_fw->value.rows();
  std::vector<std::vector<int>> reversed = units;
  for (auto& r : reversed) std::reverse(r.begin(), r.end());

  Var h_fw = run_masked_lstm(tape, table, tape.parameter(*weights.fw_w),
                             tape.parameter(*weights.fw_b), hidden, units);
  Var h_bw = run_masked_lstm(tape, table, tape.parameter(*weights.bw_w),
                             tape.parameter(*weights.bw_b), hidden, reversed);
  if (train && dropout > 0.0) {
    h_fw = ad::dropout(h_fw, dropout, rng, true);
    h_bw = ad::dropout(h_bw, dropout, rng, true);
  }
  Var out = ad::add(ad::matmul(h_fw, tape.parameter(*weights.out_fw)),
                    ad::matmul(h_bw, tape.parameter(*weights.out_bw)));
  return ad::add_row(out, tape.parameter(*weights.out_b));
}

Var compose_conv_highway(Tape& tape, const ConvHighwayWeights& weights,
                         const std::vector<std::vector<int>>& units) {
  const int max_width = *std::max_element(weights.widths.begin(), weights.widths.end());
  std::vector<int> flat;
  for (const auto& u : units) {
    if (u.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "compose_conv_highway: empty word");
    }
    flat.insert(flat.end(), u.begin(), u.end());
  }
  const int pad_row = static_cast<int>(flat.size());
  Var table = ad::concat_rows({tape.embedding(*weights.chars, flat),
                               tape.parameter(*weights.pad)});

  // Row layout of the padded character matrix, word by word.
  std::vector<int> rows;
  std::vector<int> word_start;
  std::vector<int> padded_len;
  int cursor = 0;
  for (const auto& u : units) {
    const int k = static_cast<int>(u.size());
    const int len = std::max(k, max_width);
    word_start.push_back(static_cast<int>(rows.size()));
    padded_len.push_back(len);
    for (int j = 0; j < len; ++j) rows.push_back(j < k ? cursor + j : pad_row);
    cursor += k;
  }
  Var chars = ad::pick_rows(table, rows);

  std::vector<Var> pooled;
  for (std::size_t f = 0; f < weights.widths.size(); ++f) {
    const int n = weights.widths[f];
    std::vector<int> starts;
    std::vector<int> group;
    for (std::size_t w = 0; w < units.size(); ++w) {
      const int positions = conv_feature_map_length(padded_len[w], n);
      for (int j = 0; j < positions; ++j) {
        starts.push_back(word_start[w] + j);
        group.push_back(static_cast<int>(w));
      }
    }
    Var windows = ad::gather_windows(chars, starts, n);
    Var fmap = ad::tanh(ad::add_row(ad::matmul(windows, tape.parameter(*weights.filters[f])),
                                    tape.parameter(*weights.biases[f])));
    pooled.push_back(ad::group_max(fmap, group, static_cast<Index>(units.size())));
  }
  Var y = pooled.size() == 1 ? pooled[0] : ad::concat_cols(pooled);

  Var gate = ad::sigmoid(ad::add_row(ad::matmul(y, tape.parameter(*weights.gate_w)),
                                     tape.parameter(*weights.gate_b)));
  Var transform = ad::tanh(ad::add_row(
      ad::matmul(y, tape.parameter(*weights.transform_w)),
      tape.parameter(*weights.transform_b)));
  Var z = ad::add(ad::mul(gate, transform), ad::mul(ad::one_minus(gate), y));
  return ad::add_row(ad::matmul(z, tape.parameter(*weights.proj_w)),
                     tape.parameter(*weights.proj_b));
}

Var lookup_word(Tape& tape, Parameter& table, const std::vector<int>& word_ids) {
  return tape.embedding(table, word_ids);
}

Composer::Composer(const ComposerConfig& config, UnitKind units, int num_units,
                   ad::ParameterStore& params)
    : config_(config), params_(&params) {
  config_.validate(units);
  if (num_units <= 0) {
    throw Error(ErrorKind::kInvalidConfig, "composer needs a non-empty unit table");
  }
  const Index d = config_.dim;
  switch (config_.kind) {
    case ComposerKind::kLookup:
    case ComposerKind::kAddition:
      params.add("compose.embedding", num_units, d);
      break;
    case ComposerKind::kBiRnn: {
      const Index h = config_.birnn_hidden;
      params.add("compose.embedding", num_units, d);
      params.add("compose.fw.W", d + h, 4 * h);
      params.add("compose.fw.b", 1, 4 * h);
      params.add("compose.bw.W", d + h, 4 * h);
      params.add("compose.bw.b", 1, 4 * h);
      params.add("compose.out_fw", h, d);
      params.add("compose.out_bw", h, d);
      params.add("compose.out_b", 1, d);
      break;
    }
    case ComposerKind::kConvHighway: {
      const Index e = config_.char_dim;
      const Index y = config_.conv_output_width();
      params.add("compose.chars", num_units, e);
      params.add("compose.pad", 1, e, ad::Init::kZero);
      for (int w : config_.conv_widths) {
        const std::string base = "compose.conv" + std::to_string(w);
        params.add(base + ".F", w * e, config_.filters_per_width * w);
        params.add(base + ".b", 1, config_.filters_per_width * w);
      }
      params.add("compose.highway.gate_w", y, y);
      params.add("compose.highway.gate_b", 1, y);
      params.add("compose.highway.transform_w", y, y);
      params.add("compose.highway.transform_b", 1, y);
      params.add("compose.proj.W", y, d);
      params.add("compose.proj.b", 1, d);
      break;
    }
  }
}

Var Composer::compose(Tape& tape, const std::vector<std::vector<int>>& units,
                      Rng* rng, double dropout, bool train) const {
  ad::ParameterStore& p = *params_;
  switch (config_.kind) {
    case ComposerKind::kLookup: {
      std::vector<int> ids;
      ids.reserve(units.size());
      for (const auto& u : units) {
        if (u.size() != 1) {
          throw Error(ErrorKind::kInvalidArgument, "lookup expects one id per word");
        }
        ids.push_back(u[0]);
      }
      return lookup_word(tape, p.get("compose.embedding"), ids);
    }
    case ComposerKind::kAddition:
      return compose_add(tape, p.get("compose.embedding"), units);
    case ComposerKind::kBiRnn: {
      BiRnnWeights w{&p.get("compose.fw.W"),   &p.get("compose.fw.b"),
                     &p.get("compose.bw.W"),   &p.get("compose.bw.b"),
                     &p.get("compose.out_fw"), &p.get("compose.out_bw"),
                     &p.get("compose.out_b")};
      return compose_birnn(tape, p.get("compose.embedding"), w, units, rng,
                           dropout, train);
    }
    case ComposerKind::kConvHighway: {
      ConvHighwayWeights w;
      w.chars = &p.get("compose.chars");
      w.pad = &p.get("compose.pad");
      w.widths = config_.conv_widths;
      for (int width : config_.conv_widths) {
        const std::string base = "compose.conv" + std::to_string(width);
        w.filters.push_back(&p.get(base + ".F"));
        w.biases.push_back(&p.get(base + ".b"));
      }
      w.gate_w = &p.get("compose.highway.gate_w");
      w.gate_b = &p.get("compose.highway.gate_b");
      w.transform_w = &p.get("compose.highway.transform_w");
      w.transform_b = &p.get("compose.highway.transform_b");
      w.proj_w = &p.get("compose.proj.W");
      w.proj_b = &p.get("compose.proj.b");
      return compose_conv_highway(tape, w, units);
    }
  }
  throw Error(ErrorKind::kInvalidConfig, "unknown composer kind");
}

}  // namespace swlm
