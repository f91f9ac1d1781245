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

#include "swlm/tensor.h"

#include <cmath>
#include <limits>

#include "swlm/error.h"
#include "swlm/rng.h"

namespace swlm::ad {

const Matrix& Var::value() const {
  if (!tape_) throw Error(ErrorKind::kInvalidArgument, "unbound Var");
  return tape_->value(id_);
}

double Var::scalar() const {
  const Matrix& v = value();
  if (v.size() != 1) {
    throw Error(ErrorKind::kShapeMismatch, "scalar() on a non-1x1 node");
  }
  return v(0, 0);
}

void check_finite(const char* op, const Matrix& m) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::kNonFinite, std::string("non-finite value in ") + op);
  }
}

Var Tape::record(const char* op, Matrix value,
                 std::initializer_list<Var> parents, BackwardFn fn) {
  return record(op, std::move(value), std::vector<Var>(parents), std::move(fn));
}

Var Tape::record(const char* op, Matrix value, const std::vector<Var>& parents,
                 BackwardFn fn) {
  check_finite(op, value);
  Node node;
  node.op = op;
  node.value = std::move(value);
  for (const Var& p : parents) {
    if (p.tape() != this) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(op) + ": operand from another tape");
    }
    node.requires_grad = node.requires_grad || nodes_[p.id()].requires_grad;
  }
  if (node.requires_grad) node.backward = std::move(fn);
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Tape::constant(Matrix value) {
  return record("constant", std::move(value), {}, nullptr);
}

Var Tape::parameter(Parameter& p) {
  Var v = record("parameter", p.value, {}, nullptr);
  Node& node = nodes_.back();
  node.requires_grad = true;
  Parameter* target = &p;
  node.backward = [target](const Matrix& g) {
    if (target->grad.rows() != g.rows() || target->grad.cols() != g.cols()) {
      target->grad = Matrix::Zero(g.rows(), g.cols());
    }
    target->grad += g;
  };
  return v;
}

Var Tape::embedding(Parameter& p, std::span<const int> ids) {
  Matrix rows(static_cast<Index>(ids.size()), p.value.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= p.value.rows()) {
      throw Error(ErrorKind::kShapeMismatch,
                  "embedding id " + std::to_string(ids[i]) + " out of range for " +
                      p.name);
    }
    rows.row(static_cast<Index>(i)) = p.value.row(ids[i]);
  }
  Var v = record("embedding", std::move(rows), {}, nullptr);
  Node& node = nodes_.back();
  node.requires_grad = true;
  Parameter* target = &p;
  std::vector<int> idx(ids.begin(), ids.end());
  node.backward = [target, idx = std::move(idx)](const Matrix& g) {
    if (target->grad.rows() != target->value.rows() ||
        target->grad.cols() != target->value.cols()) {
      target->grad = Matrix::Zero(target->value.rows(), target->value.cols());
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      target->grad.row(idx[i]) += g.row(static_cast<Index>(i));
    }
  };
  return v;
}

Matrix& Tape::grad_slot(int id) {
  Node& n = nodes_[id];
  if (!n.has_grad) {
    n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
    n.has_grad = true;
  }
  return n.grad;
}

void Tape::accumulate(int id, const Matrix& g) {
  if (!nodes_[id].requires_grad) return;
  grad_slot(id) += g;
}

void Tape::backward(Var loss) {
  if (!loss.valid() || nodes_.empty()) {
    throw Error(ErrorKind::kBackwardBeforeForward,
                "backward called without a recorded forward pass");
  }
  if (loss.tape() != this) {
    throw Error(ErrorKind::kInvalidArgument, "loss belongs to another tape");
  }
  if (loss.value().size() != 1) {
    throw Error(ErrorKind::kShapeMismatch, "backward needs a 1x1 loss");
  }
  grad_slot(loss.id()).setConstant(1.0);
  for (int i = loss.id(); i >= 0; --i) {
    Node& n = nodes_[i];
    if (n.has_grad && n.backward) n.backward(n.grad);
  }
}

namespace {

[[noreturn]] void shape_error(const char* op, const Matrix& a, const Matrix& b) {
  throw Error(ErrorKind::kShapeMismatch,
              std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                  std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                  "x" + std::to_string(b.cols()));
}

Tape* same_tape(const char* op, Var a, Var b) {
  if (!a.valid() || a.tape() != b.tape()) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(op) + ": operands on different tapes");
  }
  return a.tape();
}

int next_id(Tape* t) { return static_cast<int>(t->size()); }

}  // namespace

Var matmul(Var a, Var b) {
  Tape* t = same_tape("matmul", a, b);
  if (a.cols() != b.rows()) shape_error("matmul", a.value(), b.value());
  Matrix out;
  out.noalias() = a.value() * b.value();
  const int ia = a.id(), ib = b.id();
  return t->record("matmul", std::move(out), {a, b}, [t, ia, ib](const Matrix& g) {
    if (t->requires_grad(ia)) t->grad_slot(ia).noalias() += g * t->value(ib).transpose();
    if (t->requires_grad(ib)) t->grad_slot(ib).noalias() += t->value(ia).transpose() * g;
  });
}

Var add(Var a, Var b) {
  Tape* t = same_tape("add", a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    shape_error("add", a.value(), b.value());
  }
  const int ia = a.id(), ib = b.id();
  return t->record("add", a.value() + b.value(), {a, b},
                   [t, ia, ib](const Matrix& g) {
                     t->accumulate(ia, g);
                     t->accumulate(ib, g);
                   });
}

Var sub(Var a, Var b) {
  Tape* t = same_tape("sub", a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    shape_error("sub", a.value(), b.value());
  }
  const int ia = a.id(), ib = b.id();
  return t->record("sub", a.value() - b.value(), {a, b},
                   [t, ia, ib](const Matrix& g) {
                     t->accumulate(ia, g);
                     if (t->requires_grad(ib)) t->grad_slot(ib) -= g;
                   });
}

Var mul(Var a, Var b) {
  Tape* t = same_tape("mul", a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    shape_error("mul", a.value(), b.value());
  }
  const int ia = a.id(), ib = b.id();
  return t->record("mul", a.value().cwiseProduct(b.value()), {a, b},
                   [t, ia, ib](const Matrix& g) {
                     if (t->requires_grad(ia)) {
                       t->grad_slot(ia) += g.cwiseProduct(t->value(ib));
                     }
                     if (t->requires_grad(ib)) {
                       t->grad_slot(ib) += g.cwiseProduct(t->value(ia));
                     }
                   });
}

Var scale(Var a, double s) {
  Tape* t = a.tape();
  const int ia = a.id();
  return t->record("scale", a.value() * s, {a},
                   [t, ia, s](const Matrix& g) { t->accumulate(ia, g * s); });
}

Var one_minus(Var a) {
  Tape* t = a.tape();
  const int ia = a.id();
  Matrix out = (1.0 - a.value().array()).matrix();
  return t->record("one_minus", std::move(out), {a}, [t, ia](const Matrix& g) {
    if (t->requires_grad(ia)) t->grad_slot(ia) -= g;
  });
}

Var add_row(Var a, Var row) {
  Tape* t = same_tape("add_row", a, row);
  if (row.rows() != 1 || row.cols() != a.cols()) {
    shape_error("add_row", a.value(), row.value());
  }
  Matrix out = a.value();
  out.rowwise() += row.value().row(0);
  const int ia = a.id(), ir = row.id();
  return t->record("add_row", std::move(out), {a, row},
                   [t, ia, ir](const Matrix& g) {
                     t->accumulate(ia, g);
                     if (t->requires_grad(ir)) t->grad_slot(ir) += g.colwise().sum();
                   });
}

Var tanh(Var a) {
  Tape* t = a.tape();
  const int ia = a.id(), self = next_id(t);
  Matrix out = a.value().array().tanh().matrix();
  return t->record("tanh", std::move(out), {a}, [t, ia, self](const Matrix& g) {
    const auto y = t->value(self).array();
    t->grad_slot(ia) += (g.array() * (1.0 - y * y)).matrix();
  });
}

Var sigmoid(Var a) {
  Tape* t = a.tape();
  const int ia = a.id(), self = next_id(t);
  Matrix out = (1.0 / (1.0 + (-a.value().array()).exp())).matrix();
  return t->record("sigmoid", std::move(out), {a}, [t, ia, self](const Matrix& g) {
    const auto y = t->value(self).array();
    t->grad_slot(ia) += (g.array() * y * (1.0 - y)).matrix();
  });
}

Var sum(Var a) {
  Tape* t = a.tape();
  const int ia = a.id();
  Matrix out(1, 1);
  out(0, 0) = a.value().sum();
  return t->record("sum", std::move(out), {a}, [t, ia](const Matrix& g) {
    t->grad_slot(ia).array() += g(0, 0);
  });
}

Var concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw Error(ErrorKind::kInvalidArgument, "concat_cols: empty");
  Tape* t = parts[0].tape();
  const Index rows = parts[0].rows();
  Index cols = 0;
  for (const Var& p : parts) {
    if (p.tape() != t) throw Error(ErrorKind::kInvalidArgument, "concat_cols: tapes");
    if (p.rows() != rows) shape_error("concat_cols", parts[0].value(), p.value());
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::vector<std::pair<int, Index>> layout;
  Index c = 0;
  for (const Var& p : parts) {
    out.middleCols(c, p.cols()) = p.value();
    layout.emplace_back(p.id(), c);
    c += p.cols();
  }
  return t->record("concat_cols", std::move(out), parts,
                   [t, layout](const Matrix& g) {
                     for (const auto& [id, start] : layout) {
                       if (!t->requires_grad(id)) continue;
                       t->grad_slot(id) += g.middleCols(start, t->value(id).cols());
                     }
                   });
}

Var concat_rows(const std::vector<Var>& parts) {
  if (parts.empty()) throw Error(ErrorKind::kInvalidArgument, "concat_rows: empty");
  Tape* t = parts[0].tape();
  const Index cols = parts[0].cols();
  Index rows = 0;
  for (const Var& p : parts) {
    if (p.tape() != t) throw Error(ErrorKind::kInvalidArgument, "concat_rows: tapes");
    if (p.cols() != cols) shape_error("concat_rows", parts[0].value(), p.value());
    rows += p.rows();
  }
  Matrix out(rows, cols);
  std::vector<std::pair<int, Index>> layout;
  Index r = 0;
  for (const Var& p : parts) {
    out.middleRows(r, p.rows()) = p.value();
    layout.emplace_back(p.id(), r);
    r += p.rows();
  }
  return t->record("concat_rows", std::move(out), parts,
                   [t, layout](const Matrix& g) {
                     for (const auto& [id, start] : layout) {
                       if (!t->requires_grad(id)) continue;
                       t->grad_slot(id) += g.middleRows(start, t->value(id).rows());
                     }
                   });
}

Var slice_cols(Var a, Index start, Index count) {
  Tape* t = a.tape();
  if (start < 0 || count < 0 || start + count > a.cols()) {
    throw Error(ErrorKind::kShapeMismatch, "slice_cols out of range");
  }
  const int ia = a.id();
  return t->record("slice_cols", a.value().middleCols(start, count), {a},
                   [t, ia, start, count](const Matrix& g) {
                     t->grad_slot(ia).middleCols(start, count) += g;
                   });
}

Var pick_rows(Var a, std::span<const int> idx) {
  Tape* t = a.tape();
  Matrix out(static_cast<Index>(idx.size()), a.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= a.rows()) {
      throw Error(ErrorKind::kShapeMismatch, "pick_rows index out of range");
    }
    out.row(static_cast<Index>(i)) = a.value().row(idx[i]);
  }
  const int ia = a.id();
  std::vector<int> rows(idx.begin(), idx.end());
  return t->record("pick_rows", std::move(out), {a},
                   [t, ia, rows = std::move(rows)](const Matrix& g) {
                     Matrix& ga = t->grad_slot(ia);
                     for (std::size_t i = 0; i < rows.size(); ++i) {
                       ga.row(rows[i]) += g.row(static_cast<Index>(i));
                     }
                   });
}

Var group_sum(Var a, std::span<const int> group, Index groups) {
  Tape* t = a.tape();
  if (static_cast<Index>(group.size()) != a.rows()) {
    throw Error(ErrorKind::kShapeMismatch, "group_sum: one group id per row");
  }
  Matrix out = Matrix::Zero(groups, a.cols());
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (group[i] < 0 || group[i] >= groups) {
      throw Error(ErrorKind::kShapeMismatch, "group_sum: group id out of range");
    }
    out.row(group[i]) += a.value().row(static_cast<Index>(i));
  }
  const int ia = a.id();
  std::vector<int> gid(group.begin(), group.end());
  return t->record("group_sum", std::move(out), {a},
                   [t, ia, gid = std::move(gid)](const Matrix& g) {
                     Matrix& ga = t->grad_slot(ia);
                     for (std::size_t i = 0; i < gid.size(); ++i) {
                       ga.row(static_cast<Index>(i)) += g.row(gid[i]);
                     }
                   });
}

Var group_max(Var a, std::span<const int> group, Index groups) {
  Tape* t = a.tape();
  if (static_cast<Index>(group.size()) != a.rows()) {
    throw Error(ErrorKind::kShapeMismatch, "group_max: one group id per row");
  }
  const Index cols = a.cols();
  Matrix out = Matrix::Constant(groups, cols, -std::numeric_limits<double>::infinity());
  // argmax[g * cols + c] = source row
  std::vector<int> arg(static_cast<std::size_t>(groups * cols), -1);
  const Matrix& v = a.value();
  for (std::size_t i = 0; i < group.size(); ++i) {
    const int gi = group[i];
    if (gi < 0 || gi >= groups) {
      throw Error(ErrorKind::kShapeMismatch, "group_max: group id out of range");
    }
    for (Index c = 0; c < cols; ++c) {
      if (v(static_cast<Index>(i), c) > out(gi, c)) {
        out(gi, c) = v(static_cast<Index>(i), c);
        arg[static_cast<std::size_t>(gi * cols + c)] = static_cast<int>(i);
      }
    }
  }
  for (int r : arg) {
    if (r < 0) throw Error(ErrorKind::kShapeMismatch, "group_max: empty group");
  }
  const int ia = a.id();
  return t->record("group_max", std::move(out), {a},
                   [t, ia, cols, arg = std::move(arg)](const Matrix& g) {
                     Matrix& ga = t->grad_slot(ia);
                     for (std::size_t k = 0; k < arg.size(); ++k) {
                       const Index gi = static_cast<Index>(k) / cols;
                       const Index c = static_cast<Index>(k) % cols;
                       ga(arg[k], c) += g(gi, c);
                     }
                   });
}

Var max_rows(Var a) {
  std::vector<int> group(static_cast<std::size_t>(a.rows()), 0);
  return group_max(a, group, 1);
}

Var gather_windows(Var a, std::span<const int> starts, Index width) {
  Tape* t = a.tape();
  const Index d = a.cols();
  Matrix out(static_cast<Index>(starts.size()), width * d);
  for (std::size_t r = 0; r < starts.size(); ++r) {
    if (starts[r] < 0 || starts[r] + width > a.rows()) {
      throw Error(ErrorKind::kShapeMismatch, "gather_windows out of range");
    }
    for (Index k = 0; k < width; ++k) {
      out.block(static_cast<Index>(r), k * d, 1, d) = a.value().row(starts[r] + k);
    }
  }
  const int ia = a.id();
  std::vector<int> s(starts.begin(), starts.end());
  return t->record("gather_windows", std::move(out), {a},
                   [t, ia, width, d, s = std::move(s)](const Matrix& g) {
                     Matrix& ga = t->grad_slot(ia);
                     for (std::size_t r = 0; r < s.size(); ++r) {
                       for (Index k = 0; k < width; ++k) {
                         ga.row(s[r] + k) += g.block(static_cast<Index>(r), k * d, 1, d);
                       }
                     }
                   });
}

Var blend(std::span<const double> mask, Var a, Var b) {
  Tape* t = same_tape("blend", a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols() ||
      static_cast<Index>(mask.size()) != a.rows()) {
    shape_error("blend", a.value(), b.value());
  }
  Eigen::Map<const Eigen::VectorXd> m(mask.data(), static_cast<Index>(mask.size()));
  Matrix out = (a.value().array().colwise() * m.array() +
                b.value().array().colwise() * (1.0 - m.array()))
                   .matrix();
  const int ia = a.id(), ib = b.id();
  Eigen::VectorXd keep = m;
  return t->record("blend", std::move(out), {a, b},
                   [t, ia, ib, keep](const Matrix& g) {
                     if (t->requires_grad(ia)) {
                       t->grad_slot(ia) += (g.array().colwise() * keep.array()).matrix();
                     }
                     if (t->requires_grad(ib)) {
                       t->grad_slot(ib) +=
                           (g.array().colwise() * (1.0 - keep.array())).matrix();
                     }
                   });
}

Var dropout(Var a, double p, Rng* rng, bool train) {
  if (!train || p == 0.0) return a;
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "dropout probability must be in [0,1)");
  }
  if (rng == nullptr) throw Error(ErrorKind::kInvalidArgument, "dropout needs an RNG");
  Tape* t = a.tape();
  const double keep_scale = 1.0 / (1.0 - p);
  Matrix mask(a.rows(), a.cols());
  for (Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = rng->uniform() < p ? 0.0 : keep_scale;
  }
  const int ia = a.id();
  Matrix out = a.value().cwiseProduct(mask);
  return t->record("dropout", std::move(out), {a},
                   [t, ia, mask = std::move(mask)](const Matrix& g) {
                     t->grad_slot(ia) += g.cwiseProduct(mask);
                   });
}

Matrix log_softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Index i = 0; i < logits.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    const double lse = mx + std::log((logits.row(i).array() - mx).exp().sum());
    out.row(i) = logits.row(i).array() - lse;
  }
  return out;
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Index i = 0; i < logits.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    out.row(i) = (logits.row(i).array() - mx).exp();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

Var softmax_cross_entropy(Var logits, std::span<const int> targets,
                          Matrix* log_probs) {
  Tape* t = logits.tape();
  if (static_cast<Index>(targets.size()) != logits.rows()) {
    throw Error(ErrorKind::kShapeMismatch,
                "softmax_cross_entropy: one target per row");
  }
  Matrix logp = log_softmax_rows(logits.value());
  double loss = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= logits.cols()) {
      throw Error(ErrorKind::kShapeMismatch, "softmax_cross_entropy: bad target");
    }
    loss -= logp(static_cast<Index>(i), targets[i]);
  }
  Matrix out(1, 1);
  out(0, 0) = loss;
  if (log_probs) *log_probs = logp;
  const int il = logits.id();
  std::vector<int> tg(targets.begin(), targets.end());
  return t->record("softmax_cross_entropy", std::move(out), {logits},
                   [t, il, logp = std::move(logp), tg = std::move(tg)](const Matrix& g) {
                     Matrix d = logp.array().exp().matrix();
                     for (std::size_t i = 0; i < tg.size(); ++i) {
                       d(static_cast<Index>(i), tg[i]) -= 1.0;
                     }
                     t->grad_slot(il) += d * g(0, 0);
                   });
}

}  // namespace swlm::ad
