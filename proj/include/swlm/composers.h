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

#ifndef SWLM_COMPOSERS_H_
#define SWLM_COMPOSERS_H_

#include <string>
#include <string_view>
#include <vector>

#include "swlm/parameters.h"
#include "swlm/segmenters.h"
#include "swlm/tensor.h"

namespace swlm {

class Rng;

enum class ComposerKind { kLookup, kAddition, kBiRnn, kConvHighway };

std::string_view composer_kind_name(ComposerKind kind);
ComposerKind parse_composer_kind(std::string_view name);

struct ComposerConfig {
  ComposerKind kind = ComposerKind::kLookup;
  int dim = 200;            // word representation width d
  int birnn_hidden = 200;   // per direction
  int char_dim = 15;        // conv-highway character embedding width
  std::vector<int> conv_widths = {1, 2, 3, 4, 5, 6};
  int filters_per_width = 25;  // width w gets filters_per_width * w filters

  int conv_output_width() const;
  // Rejects unit/composer pairings the model family does not define:
  // addition over characters, conv-highway over non-characters, lookup over
  // anything but words.
  void validate(UnitKind units) const;
};

// One LSTM step over a batch of rows. `w` is (in + hidden) x 4*hidden with
// gate blocks [input, forget, output, candidate]; `b` is 1 x 4*hidden.
struct LstmOutput {
  ad::Var h;
  ad::Var c;
};
LstmOutput lstm_cell(ad::Var x, ad::Var h, ad::Var c, ad::Var w, ad::Var b);

// Sum of the unit embeddings of each word (n x d).
ad::Var compose_add(ad::Tape& tape, ad::Parameter& table,
                    const std::vector<std::vector<int>>& units);

struct BiRnnWeights {
  ad::Parameter* fw_w;
  ad::Parameter* fw_b;
  ad::Parameter* bw_w;
  ad::Parameter* bw_b;
  ad::Parameter* out_fw;  // W_f: hidden x d
  ad::Parameter* out_bw;  // W_b: hidden x d
  ad::Parameter* out_b;   // b:   1 x d
};

// Forward and backward LSTMs over the unit embeddings; the word vector is
// W_f h_n(fw) + W_b h_0(bw) + b. Words of different lengths run together
// with per-row masking so each keeps its own final state. Dropout with
// probability `dropout` hits both final states when `train` is set.
ad::Var compose_birnn(ad::Tape& tape, ad::Parameter& table,
                      const BiRnnWeights& weights,
                      const std::vector<std::vector<int>>& units, Rng* rng,
                      double dropout, bool train);

struct ConvHighwayWeights {
  ad::Parameter* chars;  // character embeddings, one row per unit id
  ad::Parameter* pad;    // 1 x char_dim PAD embedding
  std::vector<int> widths;
  std::vector<ad::Parameter*> filters;  // (width * char_dim) x count
  std::vector<ad::Parameter*> biases;   // 1 x count
  ad::Parameter* gate_w;
  ad::Parameter* gate_b;
  ad::Parameter* transform_w;
  ad::Parameter* transform_b;
  ad::Parameter* proj_w;
  ad::Parameter* proj_b;
};

// Length of a narrow-convolution feature map: k - n + 1.
inline int conv_feature_map_length(int k, int n) { return k - n + 1; }

// Character CNN: per filter width, tanh(<window, F> + b) over every
// position, max over time; concatenation goes through one highway layer
// z = t*tanh(W_H y + b_H) + (1 - t)*y with t = sigmoid(W_T y + b_T), then a
// linear projection to d. Words shorter than the widest filter are padded
// on the right with the PAD embedding.
ad::Var compose_conv_highway(ad::Tape& tape, const ConvHighwayWeights& weights,
                             const std::vector<std::vector<int>>& units);

ad::Var lookup_word(ad::Tape& tape, ad::Parameter& table,
                    const std::vector<int>& word_ids);

// Owns nothing: registers its parameters in the model's store under
// "compose." names and dispatches to the function for its kind. For lookup,
// each word's unit list is its single word id.
class Composer {
 public:
  Composer(const ComposerConfig& config, UnitKind units, int num_units,
           ad::ParameterStore& params);

  const ComposerConfig& config() const { return config_; }
  int dim() const { return config_.dim; }

  ad::Var compose(ad::Tape& tape, const std::vector<std::vector<int>>& units,
                  Rng* rng, double dropout, bool train) const;

 private:
  ComposerConfig config_;
  ad::ParameterStore* params_;
};

}  // namespace swlm

#endif  // SWLM_COMPOSERS_H_
