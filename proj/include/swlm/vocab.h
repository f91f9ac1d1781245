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

#ifndef SWLM_VOCAB_H_
#define SWLM_VOCAB_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swlm/corpus.h"

namespace swlm {

using Counts = std::map<std::string, std::int64_t, std::less<>>;

Counts count_tokens(const Corpus& corpus);

// Closed word vocabulary. Id 0 is always the unknown-word token; the other
// ids follow (count desc, word asc). The frequency table covers every word
// of the source corpus, not only the members.
class Vocabulary {
 public:
  static constexpr int kUnkId = 0;

  Vocabulary();

  // Keeps the `max_size` most frequent words; ties at the cutoff go to the
  // lexicographically smaller word.
  static Vocabulary build(const Corpus& corpus, std::size_t max_size);
  static Vocabulary from_counts(Counts counts, std::size_t max_size);

  // Inverse of to_file_string(). Frequencies are restored for members only.
  static Vocabulary parse(std::string_view text);
  static Vocabulary load(const std::string& path);

  std::string to_file_string() const;
  void save(const std::string& path) const;

  std::size_t size() const { return words_.size(); }
  std::size_t max_size() const { return max_size_; }
  int unk_id() const { return kUnkId; }

  // Id of `word`, or kUnkId when it is not a member.
  int id(std::string_view word) const;
  std::optional<int> find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word).has_value(); }
  const std::string& word(int id) const { return words_.at(id); }
  const std::vector<std::string>& words() const { return words_; }

  std::int64_t count(std::string_view word) const;
  const Counts& frequencies() const { return counts_; }

  std::vector<int> map(const std::vector<std::string>& tokens) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> ids_;
  Counts counts_;
  std::size_t max_size_ = 0;
};

// Replaces each token whose corpus count is exactly 1 by the unknown-word
// token with probability `p`; `counts` must come from the same corpus.
Corpus apply_unk_policy(const Corpus& corpus, const Counts& counts, double p,
                        std::uint64_t seed);
Corpus apply_unk_policy(const Corpus& corpus, const Vocabulary& vocab, double p,
                        std::uint64_t seed);

}  // namespace swlm

#endif  // SWLM_VOCAB_H_
