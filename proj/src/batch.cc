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

#include "swlm/batch.h"

#include "swlm/error.h"

namespace swlm {

BatchStream::BatchStream(std::span<const int> ids, std::size_t batch_size,
                         std::size_t unroll)
    : unroll_(unroll) {
  if (batch_size == 0 || unroll == 0) {
    throw Error(ErrorKind::kInvalidArgument, "batch size and unroll must be > 0");
  }
  if (ids.size() < batch_size * 2) {
    throw Error(ErrorKind::kCorpusTooShort,
                std::to_string(ids.size()) + " tokens cannot fill " +
                    std::to_string(batch_size) + " streams of length >= 2");
  }
  stream_length_ = ids.size() / batch_size;
  streams_.resize(batch_size);
  for (std::size_t b = 0; b < batch_size; ++b) {
    auto first = ids.begin() + static_cast<std::ptrdiff_t>(b * stream_length_);
    streams_[b].assign(first, first + static_cast<std::ptrdiff_t>(stream_length_));
  }
}

std::size_t BatchStream::num_windows() const {
  return (stream_length_ - 1 + unroll_ - 1) / unroll_;
}

std::size_t BatchStream::num_targets() const {
  return streams_.size() * (stream_length_ - 1);
}

bool BatchStream::next(Batch& batch) {
  if (cursor_ + 1 >= stream_length_) return false;
  const std::size_t width = std::min(unroll_, stream_length_ - 1 - cursor_);
  batch.offset = cursor_;
  batch.width = width;
  batch.inputs.assign(streams_.size(), {});
  batch.targets.assign(streams_.size(), {});
  for (std::size_t b = 0; b < streams_.size(); ++b) {
    const auto& s = streams_[b];
    batch.inputs[b].assign(s.begin() + static_cast<std::ptrdiff_t>(cursor_),
                           s.begin() + static_cast<std::ptrdiff_t>(cursor_ + width));
    batch.targets[b].assign(
        s.begin() + static_cast<std::ptrdiff_t>(cursor_ + 1),
        s.begin() + static_cast<std::ptrdiff_t>(cursor_ + width + 1));
  }
  cursor_ += width;
  return true;
}

}  // namespace swlm
