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

#include "swlm/bpe.h"

#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "swlm/error.h"
#include "swlm/utf8.h"

namespace swlm {

MergeTable::MergeTable(std::vector<SymbolPair> merges)
    : merges_(std::move(merges)) {
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    if (!ranks_.emplace(merges_[i], static_cast<int>(i)).second) {
      throw Error(ErrorKind::kMalformed, "duplicate merge '" + merges_[i].first +
                                             " " + merges_[i].second + "'");
    }
  }
}

int MergeTable::rank(std::string_view left, std::string_view right) const {
  auto it = ranks_.find(SymbolPair(left, right));
  return it == ranks_.end() ? -1 : it->second;
}

std::string MergeTable::to_file_string() const {
  std::string out = "#bpe-v1 merges=" + std::to_string(merges_.size()) + "\n";
  for (const auto& [l, r] : merges_) out += l + " " + r + "\n";
  return out;
}

MergeTable MergeTable::parse(std::string_view text) {
  std::vector<SymbolPair> merges;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  long declared = -1;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line_no == 1) {
      constexpr std::string_view kHeader = "#bpe-v1 merges=";
      if (!line.starts_with(kHeader)) {
        throw Error(ErrorKind::kVersion, "merge table header missing");
      }
      declared = std::stol(std::string(line.substr(kHeader.size())));
      continue;
    }
    if (line.empty()) continue;
    const std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos || sp == 0 || sp + 1 == line.size() ||
        line.find(' ', sp + 1) != std::string_view::npos) {
      throw Error(ErrorKind::kMalformed,
                  "merge table line " + std::to_string(line_no));
    }
    merges.emplace_back(std::string(line.substr(0, sp)),
                        std::string(line.substr(sp + 1)));
  }
  if (declared < 0) throw Error(ErrorKind::kVersion, "merge table header missing");
  if (static_cast<std::size_t>(declared) != merges.size()) {
    throw Error(ErrorKind::kTruncated,
                "merge table declares " + std::to_string(declared) +
                    " merges, found " + std::to_string(merges.size()));
  }
  return MergeTable(std::move(merges));
}

void MergeTable::save(const std::string& path) const {
  write_file(path, to_file_string());
}

MergeTable MergeTable::load(const std::string& path) {
  return parse(read_file(path));
}

namespace {

std::vector<std::string> wrap_chars(std::string_view word) {
  std::vector<std::string> symbols{"^"};
  for (auto& c : utf8::split_chars(word)) symbols.push_back(std::move(c));
  symbols.emplace_back("$");
  return symbols;
}

// Incremental pair statistics over interned symbols. Pair counts are kept
// exact by removing a word's pairs, rewriting the word, and re-adding them.
class BpeTrainer {
 public:
  explicit BpeTrainer(const Counts& word_counts) {
    for (const auto& [word, count] : word_counts) {
      if (word == kUnkToken || count <= 0) continue;
      std::vector<int> syms;
      for (const auto& s : wrap_chars(word)) syms.push_back(intern(s));
      words_.push_back(std::move(syms));
      freqs_.push_back(count);
    }
    for (std::size_t w = 0; w < words_.size(); ++w) add_word(w, +1);
  }

  MergeTable run(std::size_t num_merges) {
    std::vector<SymbolPair> merges;
    std::set<std::uint64_t> recorded;
    while (merges.size() < num_merges && !queue_.empty()) {
      const Entry best = *queue_.begin();
      if (best.count < 2) break;
      // A pair can become adjacent again through a different decomposition
      // of the same string; it is merged but keeps its original priority.
      if (recorded.insert(key(best.left, best.right)).second) {
        merges.emplace_back(symbols_[best.left], symbols_[best.right]);
      }
      merge(best.left, best.right);
    }
    return MergeTable(std::move(merges));
  }

 private:
  struct Entry {
    std::int64_t count;
    int left;
    int right;
  };
  struct EntryOrder {
    const std::vector<std::string>* symbols;
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.count != b.count) return a.count > b.count;
      const auto& sa = *symbols;
      if (a.left != b.left) return sa[a.left] < sa[b.left];
      return sa[a.right] < sa[b.right];
    }
  };

  static std::uint64_t key(int l, int r) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(l)) << 32) |
           static_cast<std::uint32_t>(r);
  }

  int intern(const std::string& s) {
    auto [it, inserted] = ids_.emplace(s, static_cast<int>(symbols_.size()));
    if (inserted) symbols_.push_back(s);
    return it->second;
  }

  void adjust(int l, int r, std::int64_t delta) {
    const std::uint64_t k = key(l, r);
    std::int64_t& c = counts_[k];
    if (c > 0) queue_.erase(Entry{c, l, r});
    c += delta;
    if (c > 0) queue_.insert(Entry{c, l, r});
  }

  void add_word(std::size_t w, int sign) {
    const auto& syms = words_[w];
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      adjust(syms[i], syms[i + 1], sign * freqs_[w]);
      if (sign > 0) where_[key(syms[i], syms[i + 1])].insert(w);
    }
  }

  void merge(int l, int r) {
    const int merged = intern(symbols_[l] + symbols_[r]);
    const auto occurrences = where_[key(l, r)];
    for (std::size_t w : occurrences) {
      auto& syms = words_[w];
      bool present = false;
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
        if (syms[i] == l && syms[i + 1] == r) {
          present = true;
          break;
        }
      }
      if (!present) continue;
      add_word(w, -1);
      std::vector<int> out;
      out.reserve(syms.size());
      for (std::size_t i = 0; i < syms.size();) {
        if (i + 1 < syms.size() && syms[i] == l && syms[i + 1] == r) {
          out.push_back(merged);
          i += 2;
        } else {
          out.push_back(syms[i]);
          ++i;
        }
      }
      syms = std::move(out);
      add_word(w, +1);
    }
  }

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::vector<int>> words_;
  std::vector<std::int64_t> freqs_;
  std::unordered_map<std::uint64_t, std::int64_t> counts_;
  std::unordered_map<std::uint64_t, std::set<std::size_t>> where_;
  std::set<Entry, EntryOrder> queue_{EntryOrder{&symbols_}};
};

}  // namespace

MergeTable train_bpe(const Counts& word_counts, std::size_t num_merges) {
  BpeTrainer trainer(word_counts);
  return trainer.run(num_merges);
}

MergeTable train_bpe(const Corpus& corpus, std::size_t num_merges) {
  if (corpus.empty()) throw Error(ErrorKind::kEmptyCorpus, "train_bpe");
  return train_bpe(count_tokens(corpus), num_merges);
}

std::vector<std::string> apply_bpe_units(std::string_view word,
                                         const MergeTable& merges) {
  if (word.empty()) throw Error(ErrorKind::kEmptyWord, "apply_bpe");
  std::vector<std::string> syms = wrap_chars(word);
  if (merges.empty()) return syms;
  while (syms.size() > 1) {
    int best = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      const int r = merges.rank(syms[i], syms[i + 1]);
      if (r >= 0 && r < best) best = r;
    }
    if (best == std::numeric_limits<int>::max()) break;
    const auto& [l, r] = merges.merges()[static_cast<std::size_t>(best)];
    std::vector<std::string> out;
    out.reserve(syms.size());
    for (std::size_t i = 0; i < syms.size();) {
      if (i + 1 < syms.size() && syms[i] == l && syms[i + 1] == r) {
        out.push_back(l + r);
        i += 2;
      } else {
        out.push_back(std::move(syms[i]));
        ++i;
      }
    }
    syms = std::move(out);
  }
  return syms;
}

}  // namespace swlm
