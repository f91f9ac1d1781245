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

#include "swlm/schedule.h"

namespace swlm {

namespace {
// Absorbs representation error in differences like 100.0 - 99.9.
constexpr double kSlack = 1e-9;
}  // namespace

bool HalvingSchedule::observe(double valid_ppl) {
  if (best_ - valid_ppl >= threshold_ - kSlack) {
    stale_ = 0;
  } else if (++stale_ >= patience_) {
    lr_ *= 0.5;
    stale_ = 0;
  }
  if (valid_ppl < best_) best_ = valid_ppl;
  return false;
}

bool ConstantEarlyStopSchedule::observe(double valid_ppl) {
  if (best_ - valid_ppl > threshold_) {
    best_ = valid_ppl;
    stale_ = 0;
    return false;
  }
  return ++stale_ >= patience_;
}

std::unique_ptr<TrainSchedule> make_schedule(const LMConfig& config) {
  if (config.schedule == ScheduleKind::kConstantEarlyStop) {
    return std::make_unique<ConstantEarlyStopSchedule>(
        config.learning_rate, config.patience, config.stop_threshold);
  }
  return std::make_unique<HalvingSchedule>(config.learning_rate,
                                           config.halving_threshold, config.patience);
}

}  // namespace swlm
