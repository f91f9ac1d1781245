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

#ifndef SWLM_ANALYSIS_H_
#define SWLM_ANALYSIS_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "swlm/corpus.h"
#include "swlm/lstm_lm.h"
#include "swlm/tensor.h"
#include "swlm/vocab.h"

namespace swlm {

enum class TriggerSource { kAnnotation, kReduplication, kWordList };

// Marks which test positions hold a trigger word w_i. The targeted
// measurement then scores w_{i+1}.
struct TriggerSet {
  TriggerSource source = TriggerSource::kWordList;
  std::vector<bool> positions;
  // Distinct trigger words seen in the test corpus.
  std::set<std::string> members;

  bool is_trigger(std::size_t i) const { return i < positions.size() && positions[i]; }

  // `sidecar` holds one "token<TAB>UPOS" line per test token (blank lines
  // ignored). Tokens tagged with any of `classes` are triggers.
  static TriggerSet from_annotations(const Corpus& test, std::string_view sidecar,
                                     const std::set<std::string>& classes);
  // Tokens that are full or partial reduplications.
  static TriggerSet from_reduplication(const Corpus& test);
  static TriggerSet from_words(const Corpus& test, const std::set<std::string>& words);
};

struct TargetedReport {
  double all_ppl = 0.0;
  double frequent_ppl = 0.0;
  double rare_ppl = 0.0;
  std::size_t all_count = 0;
  std::size_t frequent_count = 0;
  std::size_t rare_count = 0;
  // Summed negative log-likelihood per bucket.
  double frequent_loss = 0.0;
  double rare_loss = 0.0;
  std::size_t unk_targets = 0;
  double unk_target_fraction = 0.0;
};

// Buckets come from the training count of the trigger word: frequent when
// count > threshold, rare otherwise. Perplexities of empty buckets are NaN.
// `log_probs[j]` is log p(w_j | history), NaN where w_j is not scored.
TargetedReport targeted_report(const std::vector<double>& log_probs, const Corpus& test,
                               const TriggerSet& triggers, const Counts& train_counts,
                               std::int64_t threshold, const Vocabulary& output_vocab);

TargetedReport targeted_perplexity(const LanguageModel& model, const Corpus& test,
                                   const TriggerSet& triggers, const Counts& train_counts,
                                   std::int64_t threshold = 10);

std::string targeted_report_csv(const TargetedReport& report);

struct Neighbor {
  std::string word;
  double cosine = 0.0;
};

// 0 when either vector is zero; clamped to [-1, 1].
double cosine(const ad::Matrix& a, const ad::Matrix& b);

// Rows of `vectors` are the candidates' representations. Sorted by cosine
// descending, ties by word, truncated to k.
std::vector<Neighbor> rank_by_cosine(const ad::Matrix& query,
                                     const std::vector<std::string>& candidates,
                                     const ad::Matrix& vectors, int k);

// Candidates are the training vocabulary minus the query and "<unk>".
std::vector<Neighbor> nearest_neighbors(const LanguageModel& model, const std::string& query,
                                        int k);

std::string neighbors_tsv(const std::vector<Neighbor>& neighbors);

}  // namespace swlm

#endif  // SWLM_ANALYSIS_H_
