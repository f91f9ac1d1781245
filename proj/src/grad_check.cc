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

#include <algorithm>
#include <cmath>

#include "swlm/parameters.h"

namespace swlm::ad {

namespace {

constexpr double kDenominatorFloor = 1e-6;

double evaluate(const std::function<Var(Tape&)>& loss) {
  Tape tape;
  return loss(tape).scalar();
}

}  // namespace

double grad_check(const std::function<Var(Tape&)>& loss, ParameterStore& params,
                  double eps) {
  params.zero_grad();
  {
    Tape tape;
    tape.backward(loss(tape));
  }
  double worst = 0.0;
  for (auto& [name, p] : params.all()) {
    const Matrix analytic = p.grad;
    for (Index i = 0; i < p.value.size(); ++i) {
      double& x = p.value.data()[i];
      const double saved = x;
      x = saved + eps;
      const double plus = evaluate(loss);
      x = saved - eps;
      const double minus = evaluate(loss);
      x = saved;
      const double numeric = (plus - minus) / (2.0 * eps);
      const double a = analytic.data()[i];
      const double err =
          std::abs(a - numeric) / std::max(kDenominatorFloor, std::abs(a) + std::abs(numeric));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace swlm::ad
