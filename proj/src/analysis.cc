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

#include "swlm/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "swlm/error.h"
#include "swlm/reduplication.h"
#include "swlm/utf8.h"

namespace swlm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double d) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", d);
  return buf;
}

}  // namespace

TriggerSet TriggerSet::from_annotations(const Corpus& test, std::string_view sidecar,
                                        const std::set<std::string>& classes) {
  TriggerSet t;
  t.source = TriggerSource::kAnnotation;
  t.positions.assign(test.size(), false);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::size_t i = 0;
  while (pos < sidecar.size()) {
    std::size_t eol = sidecar.find('\n', pos);
    if (eol == std::string_view::npos) eol = sidecar.size();
    std::string_view line = sidecar.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = "annotation line " + std::to_string(line_no);
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw Error(ErrorKind::kMalformed, where + ": missing TAB");
    std::string token(line.substr(0, tab));
    const std::string tag(line.substr(tab + 1));
    if (test.lowercased) token = utf8::to_lower(token);
    if (token == kUnkToken) token = std::string(kEscapedUnkToken);
    if (i >= test.size()) {
      throw Error(ErrorKind::kMalformed, where + ": more annotations than test tokens");
    }
    if (token != test.tokens[i]) {
      throw Error(ErrorKind::kMalformed, where + ": token '" + token +
                                             "' does not match test token '" +
                                             test.tokens[i] + "'");
    }
    if (classes.count(tag)) {
      t.positions[i] = true;
      t.members.insert(test.tokens[i]);
    }
    ++i;
  }
  if (i != test.size()) {
    throw Error(ErrorKind::kMalformed, "annotation has " + std::to_string(i) +
                                           " tokens, test corpus " +
                                           std::to_string(test.size()));
  }
  return t;
}

TriggerSet TriggerSet::from_reduplication(const Corpus& test) {
  TriggerSet t;
  t.source = TriggerSource::kReduplication;
  t.positions.assign(test.size(), false);
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (detect_reduplication(test.tokens[i]) != Reduplication::kNone) {
      t.positions[i] = true;
      t.members.insert(test.tokens[i]);
    }
  }
  return t;
}

TriggerSet TriggerSet::from_words(const Corpus& test, const std::set<std::string>& words) {
  TriggerSet t;
  t.source = TriggerSource::kWordList;
  t.positions.assign(test.size(), false);
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (words.count(test.tokens[i])) {
      t.positions[i] = true;
      t.members.insert(test.tokens[i]);
    }
  }
  return t;
}

TargetedReport targeted_report(const std::vector<double>& log_probs, const Corpus& test,
                               const TriggerSet& triggers, const Counts& train_counts,
                               std::int64_t threshold, const Vocabulary& output_vocab) {
  if (log_probs.size() != test.size()) {
    throw Error(ErrorKind::kInvalidArgument, "log_probs and test corpus differ in length");
  }
  TargetedReport r;
  for (std::size_t i = 0; i + 1 < test.size(); ++i) {
    if (!triggers.is_trigger(i)) continue;
    const double lp = log_probs[i + 1];
    if (std::isnan(lp)) continue;
    auto it = train_counts.find(test.tokens[i]);
    const std::int64_t count = it == train_counts.end() ? 0 : it->second;
    if (count > threshold) {
      r.frequent_loss -= lp;
      ++r.frequent_count;
    } else {
      r.rare_loss -= lp;
      ++r.rare_count;
    }
    if (!output_vocab.contains(test.tokens[i + 1])) ++r.unk_targets;
  }
  r.all_count = r.frequent_count + r.rare_count;
  auto ppl = [](double loss, std::size_t n) {
    return n == 0 ? kNaN : std::exp(loss / static_cast<double>(n));
  };
  r.frequent_ppl = ppl(r.frequent_loss, r.frequent_count);
  r.rare_ppl = ppl(r.rare_loss, r.rare_count);
  r.all_ppl = ppl(r.frequent_loss + r.rare_loss, r.all_count);
  r.unk_target_fraction =
      r.all_count == 0 ? 0.0 : static_cast<double>(r.unk_targets) / r.all_count;
  return r;
}

TargetedReport targeted_perplexity(const LanguageModel& model, const Corpus& test,
                                   const TriggerSet& triggers, const Counts& train_counts,
                                   std::int64_t threshold) {
  return targeted_report(model.position_log_probs(test), test, triggers, train_counts,
                         threshold, model.output_vocab());
}

std::string targeted_report_csv(const TargetedReport& r) {
  std::string out =
      "bucket,count,ppl,loss\n"
      "all," + std::to_string(r.all_count) + "," + fmt(r.all_ppl) + "," +
      fmt(r.frequent_loss + r.rare_loss) + "\n"
      "frequent," + std::to_string(r.frequent_count) + "," + fmt(r.frequent_ppl) + "," +
      fmt(r.frequent_loss) + "\n"
      "rare," + std::to_string(r.rare_count) + "," + fmt(r.rare_ppl) + "," +
      fmt(r.rare_loss) + "\n"
      "unk_target_fraction," + std::to_string(r.unk_targets) + "," +
      fmt(r.unk_target_fraction) + ",\n";
  return out;
}

double cosine(const ad::Matrix& a, const ad::Matrix& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::kShapeMismatch, "cosine operands");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = (a.array() * b.array()).sum() / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

std::vector<Neighbor> rank_by_cosine(const ad::Matrix& query,
                                     const std::vector<std::string>& candidates,
                                     const ad::Matrix& vectors, int k) {
  if (k <= 0) throw Error(ErrorKind::kInvalidArgument, "k must be positive");
  if (static_cast<std::size_t>(vectors.rows()) != candidates.size()) {
    throw Error(ErrorKind::kShapeMismatch, "one vector per candidate expected");
  }
  std::vector<Neighbor> all;
  all.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    all.push_back({candidates[i],
                   cosine(query, vectors.row(static_cast<Eigen::Index>(i)))});
  }
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(k), all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(),
                    [](const Neighbor& x, const Neighbor& y) {
                      if (x.cosine != y.cosine) return x.cosine > y.cosine;
                      return x.word < y.word;
                    });
  all.resize(n);
  return all;
}

std::vector<Neighbor> nearest_neighbors(const LanguageModel& model, const std::string& query,
                                        int k) {
  if (k <= 0) throw Error(ErrorKind::kInvalidArgument, "k must be positive");
  if (!model.can_represent(query)) {
    throw Error(ErrorKind::kUnrepresentable,
                "'" + query + "' is outside the vocabulary of a word-level model");
  }
  std::vector<std::string> candidates;
  for (const auto& w : model.input_vocab().words()) {
    if (w != kUnkToken && w != query) candidates.push_back(w);
  }
  const ad::Matrix q = model.represent({query});
  const ad::Matrix vectors = model.represent(candidates);
  return rank_by_cosine(q.row(0), candidates, vectors, k);
}

std::string neighbors_tsv(const std::vector<Neighbor>& neighbors) {
  std::string out = "rank\tword\tcosine\n";
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", neighbors[i].cosine);
    out += std::to_string(i + 1) + "\t" + neighbors[i].word + "\t" + buf + "\n";
  }
  return out;
}

}  // namespace swlm
