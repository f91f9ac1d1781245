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

#ifndef SWLM_TENSOR_H_
#define SWLM_TENSOR_H_

#include <Eigen/Core>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace swlm {
class Rng;
}

namespace swlm::ad {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

// A trainable matrix and its accumulated gradient.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;
};

class Tape;

// Handle to a node recorded on a Tape. Cheap to copy; valid while the tape
// lives.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  Index rows() const { return value().rows(); }
  Index cols() const { return value().cols(); }
  // Value of a 1x1 node.
  double scalar() const;

  Tape* tape() const { return tape_; }
  int id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  int id_ = -1;
};

// Records a forward computation and replays it in reverse. Nodes are kept
// in creation order, which is a topological order, so backward is a single
// reverse sweep that visits every node once.
class Tape {
 public:
  // Receives the gradient of the node being processed.
  using BackwardFn = std::function<void(const Matrix& grad)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Matrix value);
  Var parameter(Parameter& p);
  // Rows `ids` of p.value; the gradient is scattered into p.grad.
  Var embedding(Parameter& p, std::span<const int> ids);

  // Accumulates d(loss)/d(parameter) into every Parameter::grad reached
  // from `loss`, which must be a 1x1 node of this tape.
  void backward(Var loss);

  std::size_t size() const { return nodes_.size(); }

  // Op plumbing: records a node. `parents` decide whether it needs a
  // gradient; `fn` may be empty for nodes that never propagate.
  Var record(const char* op, Matrix value, std::initializer_list<Var> parents,
             BackwardFn fn);
  Var record(const char* op, Matrix value, const std::vector<Var>& parents,
             BackwardFn fn);

  const Matrix& value(int id) const { return nodes_[id].value; }
  bool requires_grad(int id) const { return nodes_[id].requires_grad; }
  // Adds `g` to the gradient slot of node `id` if that node needs one.
  void accumulate(int id, const Matrix& g);
  // Gradient slot of `id`, zero-initialised on first use.
  Matrix& grad_slot(int id);

 private:
  struct Node {
    const char* op = "";
    Matrix value;
    Matrix grad;
    bool has_grad = false;
    bool requires_grad = false;
    BackwardFn backward;
  };

  std::vector<Node> nodes_;
};

// Throws kNonFinite naming `op` if any entry is NaN or infinite.
void check_finite(const char* op, const Matrix& m);

Var matmul(Var a, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);  // elementwise
Var scale(Var a, double s);
Var one_minus(Var a);
// a (n x m) plus a 1 x m row broadcast over rows.
Var add_row(Var a, Var row);
Var tanh(Var a);
Var sigmoid(Var a);
Var sum(Var a);
Var concat_cols(const std::vector<Var>& parts);
Var concat_rows(const std::vector<Var>& parts);
Var slice_cols(Var a, Index start, Index count);
// Row i of the result is row idx[i] of a.
Var pick_rows(Var a, std::span<const int> idx);
// Sums rows of a into `groups` output rows: out[group[i]] += a[i].
Var group_sum(Var a, std::span<const int> group, Index groups);
// Column-wise maximum over the rows of each group; every group non-empty.
Var group_max(Var a, std::span<const int> group, Index groups);
// Column-wise maximum over all rows (1 x cols).
Var max_rows(Var a);
// Row r is the concatenation of rows starts[r] .. starts[r]+width-1 of a.
Var gather_windows(Var a, std::span<const int> starts, Index width);
// Row-wise blend: mask[i] * a[i] + (1 - mask[i]) * b[i], mask constant.
Var blend(std::span<const double> mask, Var a, Var b);
// Inverted dropout: zeroes entries with probability p and scales the rest by
// 1/(1-p). Identity when !train or p == 0; `rng` is only read otherwise.
Var dropout(Var a, double p, Rng* rng, bool train);
// Sum over rows of -log softmax(logits[i])[targets[i]], as a 1x1 node.
// When `log_probs` is given it receives the row-wise log-softmax.
Var softmax_cross_entropy(Var logits, std::span<const int> targets,
                          Matrix* log_probs = nullptr);

// Row-wise softmax / log-softmax without recording anything.
Matrix softmax_rows(const Matrix& logits);
Matrix log_softmax_rows(const Matrix& logits);

}  // namespace swlm::ad

#endif  // SWLM_TENSOR_H_
