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

#include "swlm/vocab.h"

#include <algorithm>
#include <charconv>

#include "swlm/error.h"
#include "swlm/rng.h"

namespace swlm {

Counts count_tokens(const Corpus& corpus) {
  Counts counts;
  for (const auto& t : corpus.tokens) ++counts[t];
  return counts;
}

Vocabulary::Vocabulary() {
  words_.emplace_back(kUnkToken);
  ids_.emplace(std::string(kUnkToken), kUnkId);
}

Vocabulary Vocabulary::build(const Corpus& corpus, std::size_t max_size) {
  if (corpus.empty()) throw Error(ErrorKind::kEmptyCorpus, "build_vocab");
  return from_counts(count_tokens(corpus), max_size);
}

Vocabulary Vocabulary::from_counts(Counts counts, std::size_t max_size) {
  if (max_size < 1) {
    throw Error(ErrorKind::kInvalidArgument, "vocabulary max_size must be >= 1");
  }
  std::vector<std::pair<std::string, std::int64_t>> ranked;
  for (const auto& [w, c] : counts) {
    if (w != kUnkToken) ranked.emplace_back(w, c);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > max_size) ranked.resize(max_size);

  Vocabulary v;
  v.max_size_ = max_size;
  v.counts_ = std::move(counts);
  for (auto& [w, c] : ranked) {
    v.ids_.emplace(w, static_cast<int>(v.words_.size()));
    v.words_.push_back(std::move(w));
  }
  return v;
}

Vocabulary Vocabulary::parse(std::string_view text) {
  Vocabulary v;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    std::int64_t count = 0;
    if (tab == std::string_view::npos || tab == 0 ||
        std::from_chars(line.data() + tab + 1, line.data() + line.size(), count)
                .ec != std::errc()) {
      throw Error(ErrorKind::kMalformed,
                  "vocabulary line " + std::to_string(line_no + 1));
    }
    std::string word(line.substr(0, tab));
    if (line_no == 0) {
      if (word != kUnkToken) {
        throw Error(ErrorKind::kMalformed, "vocabulary line 1 must be <unk>");
      }
    } else {
      if (!v.ids_.emplace(word, static_cast<int>(v.words_.size())).second) {
        throw Error(ErrorKind::kMalformed, "duplicate vocabulary word " + word);
      }
      v.words_.push_back(word);
    }
    v.counts_[word] = count;
    ++line_no;
  }
  v.max_size_ = v.words_.size() - 1;
  return v;
}

Vocabulary Vocabulary::load(const std::string& path) {
  return parse(read_file(path));
}

std::string Vocabulary::to_file_string() const {
  std::string out;
  for (const auto& w : words_) {
    out += w;
    out += '\t';
    out += std::to_string(count(w));
    out += '\n';
  }
  return out;
}

void Vocabulary::save(const std::string& path) const {
  write_file(path, to_file_string());
}

int Vocabulary::id(std::string_view word) const {
  return find(word).value_or(kUnkId);
}

std::optional<int> Vocabulary::find(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::int64_t Vocabulary::count(std::string_view word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<int> Vocabulary::map(const std::vector<std::string>& tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(id(t));
  return ids;
}

Corpus apply_unk_policy(const Corpus& corpus, const Counts& counts, double p,
                        std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "unk probability must be in [0,1]");
  }
  Corpus out = corpus;
  Rng rng(seed, "unk-policy");
  for (auto& t : out.tokens) {
    auto it = counts.find(t);
    if (it == counts.end() || it->second != 1) continue;
    if (rng.bernoulli(p)) t = kUnkToken;
  }
  return out;
}

Corpus apply_unk_policy(const Corpus& corpus, const Vocabulary& vocab, double p,
                        std::uint64_t seed) {
  return apply_unk_policy(corpus, vocab.frequencies(), p, seed);
}

}  // namespace swlm
