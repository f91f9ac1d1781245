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

#ifndef SWLM_PARAMETERS_H_
#define SWLM_PARAMETERS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "swlm/tensor.h"

namespace swlm::ad {

inline constexpr double kInitRange = 0.1;

enum class Init { kUniform, kZero };

// Named trainable matrices. Each parameter draws its uniform(-0.1, 0.1)
// initial values from its own RNG stream keyed by (seed, name), so adding or
// reordering registrations leaves other parameters untouched.
class ParameterStore {
 public:
  explicit ParameterStore(std::uint64_t seed = 0) : seed_(seed) {}

  ParameterStore(const ParameterStore&) = delete;
  ParameterStore& operator=(const ParameterStore&) = delete;
  ParameterStore(ParameterStore&&) = default;
  ParameterStore& operator=(ParameterStore&&) = default;

  Parameter& add(const std::string& name, Index rows, Index cols,
                 Init init = Init::kUniform);

  Parameter& get(const std::string& name);
  const Parameter& get(const std::string& name) const;
  bool contains(const std::string& name) const;

  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return params_.size(); }
  std::size_t num_values() const;

  // Sorted by name.
  std::map<std::string, Parameter>& all() { return params_; }
  const std::map<std::string, Parameter>& all() const { return params_; }

  void zero_grad();
  // Plain SGD: value -= lr * grad.
  void sgd_step(double lr);
  // L2 norm of all gradients taken together.
  double grad_norm() const;
  // Rescales the gradients so their joint norm is at most `max_norm`.
  // Returns the norm before rescaling.
  double clip_grad_norm(double max_norm);

  std::map<std::string, Matrix> snapshot() const;
  void restore(const std::map<std::string, Matrix>& values);

  void set_all_zero();

 private:
  std::uint64_t seed_;
  std::map<std::string, Parameter> params_;
};

// Maximum over all parameter coordinates of |a - n| / max(1e-6, |a| + |n|),
// where a is the tape gradient of `loss` and n the central difference
// (f(x + eps) - f(x - eps)) / 2eps. The floor keeps coordinates whose
// gradient is at the level of the difference quotient's rounding noise
// (about 1e-10 at eps = 1e-5) from dominating. `loss` must be deterministic.
double grad_check(const std::function<Var(Tape&)>& loss, ParameterStore& params,
                  double eps = 1e-5);

}  // namespace swlm::ad

#endif  // SWLM_PARAMETERS_H_
