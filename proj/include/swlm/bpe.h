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

#ifndef SWLM_BPE_H_
#define SWLM_BPE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swlm/corpus.h"
#include "swlm/vocab.h"

namespace swlm {

using SymbolPair = std::pair<std::string, std::string>;

// Ordered list of learned merges; a merge's priority is its index.
class MergeTable {
 public:
  MergeTable() = default;
  explicit MergeTable(std::vector<SymbolPair> merges);

  const std::vector<SymbolPair>& merges() const { return merges_; }
  std::size_t size() const { return merges_.size(); }
  bool empty() const { return merges_.empty(); }

  // Priority of (left, right), or -1 when the pair is not in the table.
  int rank(std::string_view left, std::string_view right) const;

  // "#bpe-v1 merges=<n>" header, then one "left right" line per merge.
  std::string to_file_string() const;
  static MergeTable parse(std::string_view text);
  void save(const std::string& path) const;
  static MergeTable load(const std::string& path);

 private:
  std::vector<SymbolPair> merges_;
  std::map<SymbolPair, int, std::less<>> ranks_;
};

// Learns up to `num_merges` merges over ^/$-wrapped word types weighted by
// frequency. Each round merges the most frequent adjacent pair (ties: the
// lexicographically smallest (left, right)); stops early once no pair
// occurs at least twice. The unknown-word token is not a training word.
MergeTable train_bpe(const Counts& word_counts, std::size_t num_merges);
MergeTable train_bpe(const Corpus& corpus, std::size_t num_merges);

// Symbols of `word` after applying `merges`: lowest-priority-index pair
// first, every occurrence merged left to right, until nothing applies.
std::vector<std::string> apply_bpe_units(std::string_view word,
                                         const MergeTable& merges);

}  // namespace swlm

#endif  // SWLM_BPE_H_
