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

#include "swlm/parameters.h"

#include <cmath>

#include "swlm/error.h"
#include "swlm/rng.h"

namespace swlm::ad {

Parameter& ParameterStore::add(const std::string& name, Index rows, Index cols,
                               Init init) {
  if (params_.count(name)) {
    throw Error(ErrorKind::kInvalidArgument, "duplicate parameter " + name);
  }
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorKind::kShapeMismatch, "empty parameter " + name);
  }
  Parameter p{name, Matrix::Zero(rows, cols), Matrix::Zero(rows, cols)};
  if (init == Init::kUniform) {
    Rng rng(seed_, "param:" + name);
    for (Index i = 0; i < p.value.size(); ++i) {
      p.value.data()[i] = rng.uniform(-kInitRange, kInitRange);
    }
  }
  return params_.emplace(name, std::move(p)).first->second;
}

Parameter& ParameterStore::get(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) {
    throw Error(ErrorKind::kInvalidArgument, "no parameter named " + name);
  }
  return it->second;
}

const Parameter& ParameterStore::get(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) {
    throw Error(ErrorKind::kInvalidArgument, "no parameter named " + name);
  }
  return it->second;
}

bool ParameterStore::contains(const std::string& name) const {
  return params_.count(name) > 0;
}

std::size_t ParameterStore::num_values() const {
  std::size_t n = 0;
  for (const auto& [_, p] : params_) n += static_cast<std::size_t>(p.value.size());
  return n;
}

void ParameterStore::zero_grad() {
  for (auto& [_, p] : params_) {
    if (p.grad.rows() != p.value.rows() || p.grad.cols() != p.value.cols()) {
      p.grad = Matrix::Zero(p.value.rows(), p.value.cols());
    } else {
      p.grad.setZero();
    }
  }
}

void ParameterStore::sgd_step(double lr) {
  for (auto& [_, p] : params_) {
    if (p.grad.size() == p.value.size()) p.value.noalias() -= lr * p.grad;
  }
}

double ParameterStore::grad_norm() const {
  double sq = 0.0;
  for (const auto& [_, p] : params_) {
    if (p.grad.size() == p.value.size()) sq += p.grad.squaredNorm();
  }
  return std::sqrt(sq);
}

double ParameterStore::clip_grad_norm(double max_norm) {
  const double norm = grad_norm();
  if (norm > max_norm && norm > 0.0) {
    const double k = max_norm / norm;
    for (auto& [_, p] : params_) {
      if (p.grad.size() == p.value.size()) p.grad *= k;
    }
  }
  return norm;
}

std::map<std::string, Matrix> ParameterStore::snapshot() const {
  std::map<std::string, Matrix> out;
  for (const auto& [name, p] : params_) out.emplace(name, p.value);
  return out;
}

void ParameterStore::restore(const std::map<std::string, Matrix>& values) {
  for (auto& [name, p] : params_) {
    auto it = values.find(name);
    if (it == values.end()) {
      throw Error(ErrorKind::kInvalidArgument, "snapshot lacks " + name);
    }
    if (it->second.rows() != p.value.rows() || it->second.cols() != p.value.cols()) {
      throw Error(ErrorKind::kShapeMismatch, "snapshot shape differs for " + name);
    }
    p.value = it->second;
  }
}

void ParameterStore::set_all_zero() {
  for (auto& [_, p] : params_) p.value.setZero();
}

}  // namespace swlm::ad
