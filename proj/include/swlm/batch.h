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

#ifndef SWLM_BATCH_H_
#define SWLM_BATCH_H_

#include <cstddef>
#include <span>
#include <vector>

namespace swlm {

// One truncated-BPTT window: `width` steps for each of the B streams.
// inputs[b][t] predicts targets[b][t] == inputs[b][t + 1] within the stream.
struct Batch {
  std::size_t offset = 0;  // position of inputs[*][0] within each stream
  std::size_t width = 0;
  std::vector<std::vector<int>> inputs;
  std::vector<std::vector<int>> targets;
};

// Splits an id sequence into B contiguous streams of length floor(T/B)
// (surplus tail dropped) and walks them in windows of at most S steps. The
// last window may be shorter than S.
class BatchStream {
 public:
  BatchStream(std::span<const int> ids, std::size_t batch_size,
              std::size_t unroll);

  std::size_t batch_size() const { return streams_.size(); }
  std::size_t unroll() const { return unroll_; }
  std::size_t stream_length() const { return stream_length_; }
  const std::vector<std::vector<int>>& streams() const { return streams_; }

  // Index into the source sequence of stream b, position t.
  std::size_t source_index(std::size_t b, std::size_t t) const {
    return b * stream_length_ + t;
  }

  std::size_t num_windows() const;
  // Number of predicted tokens over a full pass: B * (L - 1).
  std::size_t num_targets() const;

  bool next(Batch& batch);
  void reset() { cursor_ = 0; }

 private:
  std::vector<std::vector<int>> streams_;
  std::size_t unroll_;
  std::size_t stream_length_;
  std::size_t cursor_ = 0;
};

}  // namespace swlm

#endif  // SWLM_BATCH_H_
