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

#ifndef SWLM_MODEL_IO_H_
#define SWLM_MODEL_IO_H_

#include <string>

#include "swlm/lstm_lm.h"

namespace swlm {

inline constexpr char kModelMagic[] = "SWLM1";

// Layout: the 5-byte magic, a u32 section count, then for each section a
// u32 name length, the name, a u64 payload length and the payload, and
// finally a u32 CRC-32 over every preceding byte. Integers are
// little-endian; parameters are stored in name order as raw doubles.
std::string serialize_model(const LanguageModel& model);
LanguageModel deserialize_model(const std::string& bytes);

void save_model(const LanguageModel& model, const std::string& path);
LanguageModel load_model(const std::string& path);

// Copies the parameters stored in `path` into `model`. Every stored name
// must exist in `model` with the same shape, else kShapeMismatch naming it.
void load_parameters(LanguageModel& model, const std::string& path);

}  // namespace swlm

#endif  // SWLM_MODEL_IO_H_
