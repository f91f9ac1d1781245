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

#ifndef SWLM_SCHEDULE_H_
#define SWLM_SCHEDULE_H_

#include <limits>
#include <memory>

#include "swlm/lstm_lm.h"

namespace swlm {

// Learning-rate policy driven by one validation perplexity per epoch.
class TrainSchedule {
 public:
  virtual ~TrainSchedule() = default;

  double learning_rate() const { return lr_; }
  double best() const { return best_; }
  int epochs_without_improvement() const { return stale_; }

  // Feeds the validation perplexity of the epoch that just finished.
  // Returns true when training should stop.
  virtual bool observe(double valid_ppl) = 0;

 protected:
  explicit TrainSchedule(double lr) : lr_(lr) {}

  double lr_;
  double best_ = std::numeric_limits<double>::infinity();
  int stale_ = 0;
};

// Starts at 1.0; halves the rate once `patience` consecutive epochs fail to
// beat the best perplexity so far by at least `threshold`. Never stops.
class HalvingSchedule : public TrainSchedule {
 public:
  explicit HalvingSchedule(double initial = 1.0, double threshold = 0.1,
                           int patience = 3)
      : TrainSchedule(initial), threshold_(threshold), patience_(patience) {}

  bool observe(double valid_ppl) override;

 private:
  double threshold_;
  int patience_;
};

// Fixed rate (0.2); stops once `patience` consecutive epochs fail to improve
// on the best perplexity by more than `threshold` (default: any decrease).
class ConstantEarlyStopSchedule : public TrainSchedule {
 public:
  explicit ConstantEarlyStopSchedule(double lr = 0.2, int patience = 3,
                                     double threshold = 0.0)
      : TrainSchedule(lr), threshold_(threshold), patience_(patience) {}

  bool observe(double valid_ppl) override;

 private:
  double threshold_;
  int patience_;
};

std::unique_ptr<TrainSchedule> make_schedule(const LMConfig& config);

}  // namespace swlm

#endif  // SWLM_SCHEDULE_H_
