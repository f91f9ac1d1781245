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

#ifndef SWLM_CORPUS_H_
#define SWLM_CORPUS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace swlm {

// Reserved unknown-word token. A raw corpus token spelled the same way is
// escaped to "\<unk>" on load so the two never collide.
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kEscapedUnkToken = "\\<unk>";

struct Corpus {
  std::vector<std::string> tokens;
  std::string source_path;
  bool lowercased = false;
  // Index of the first token of every non-empty input line. Lines are the
  // document unit when a corpus is shuffled for data-size sweeps.
  std::vector<std::size_t> line_starts;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  // Tokens of line `i`, as a [begin, end) index pair.
  std::pair<std::size_t, std::size_t> line_range(std::size_t i) const;
};

// Whitespace-tokenizes UTF-8 text. Throws kInvalidUtf8 (with line number) on
// malformed input and kEmptyCorpus when no tokens remain.
Corpus parse_corpus(std::string_view text, bool lowercase,
                    std::string source_path = "<memory>");

Corpus load_corpus(const std::string& path, bool lowercase);

void write_corpus(const Corpus& corpus, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace swlm

#endif  // SWLM_CORPUS_H_
