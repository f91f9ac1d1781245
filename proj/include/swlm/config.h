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

#ifndef SWLM_CONFIG_H_
#define SWLM_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "swlm/lexicon.h"
#include "swlm/lstm_lm.h"

namespace swlm {

// Ordered "key = value" pairs. Blank lines and "#" comments are skipped;
// anything else without '=' or with a repeated key is kMalformed.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::string_view text, const std::string& source);

// The LM section of a config. Keys absent from `kv` keep defaults; the
// schedule and learning rate default to the protocol for the composer.
// Unknown keys are left in `kv` for the caller to reject.
LMConfig take_lm_config(KeyValues& kv);
std::string lm_config_to_text(const LMConfig& config);
LMConfig lm_config_from_text(std::string_view text);

struct ExperimentConfig {
  std::string train_path;
  std::string valid_path;
  std::string test_path;
  std::size_t vocab_size = 5000;
  double unk_prob = 0.5;
  bool unk_resample = false;
  std::size_t bpe_merges = 10000;
  std::string lexicon_path;
  LexiconKind lexicon_kind = LexiconKind::kMorfessor;
  // Unset: lowercase for word, BPE and lexicon units; keep case for
  // character and character-trigram units.
  std::optional<bool> lowercase;
  std::string model_out;
  std::string log_out;
  LMConfig lm;

  bool resolved_lowercase() const;
};

// Parses a config file body; unknown keys raise kInvalidConfig.
ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::string& source = "<config>");
ExperimentConfig load_experiment_config(const std::string& path);
// Every field, resolved, in "key = value" form.
std::string to_text(const ExperimentConfig& config);

}  // namespace swlm

#endif  // SWLM_CONFIG_H_
