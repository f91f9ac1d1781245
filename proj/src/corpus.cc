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

#include "swlm/corpus.h"

#include <fstream>
#include <sstream>

#include "swlm/error.h"
#include "swlm/utf8.h"

namespace swlm {

std::pair<std::size_t, std::size_t> Corpus::line_range(std::size_t i) const {
  const std::size_t end =
      i + 1 < line_starts.size() ? line_starts[i + 1] : tokens.size();
  return {line_starts[i], end};
}

Corpus parse_corpus(std::string_view text, bool lowercase,
                    std::string source_path) {
  if (auto bad = utf8::find_invalid(text)) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < *bad; ++i) line += text[i] == '\n';
    throw Error(ErrorKind::kInvalidUtf8,
                source_path + ":" + std::to_string(line) +
                    ": invalid UTF-8 at byte " + std::to_string(*bad));
  }
  Corpus corpus;
  corpus.source_path = std::move(source_path);
  corpus.lowercased = lowercase;

  std::string current;
  bool line_open = false;
  auto flush = [&] {
    if (current.empty()) return;
    if (!line_open) {
      corpus.line_starts.push_back(corpus.tokens.size());
      line_open = true;
    }
    if (current == kUnkToken) current = kEscapedUnkToken;
    corpus.tokens.push_back(std::move(current));
    current.clear();
  };
  for (char32_t cp : utf8::decode(text)) {
    if (utf8::is_space(cp)) {
      flush();
      if (cp == '\n') line_open = false;
      continue;
    }
    utf8::append(current, lowercase ? utf8::to_lower(cp) : cp);
  }
  flush();

  if (corpus.tokens.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, corpus.source_path + " has no tokens");
  }
  return corpus;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kFileNotFound, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path);
}

Corpus load_corpus(const std::string& path, bool lowercase) {
  return parse_corpus(read_file(path), lowercase, path);
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  std::string out;
  std::vector<std::size_t> starts = corpus.line_starts;
  if (starts.empty()) starts.push_back(0);
  for (std::size_t line = 0; line < starts.size(); ++line) {
    const std::size_t begin = starts[line];
    const std::size_t end =
        line + 1 < starts.size() ? starts[line + 1] : corpus.tokens.size();
    for (std::size_t i = begin; i < end; ++i) {
      if (i > begin) out.push_back(' ');
      out += corpus.tokens[i];
    }
    out.push_back('\n');
  }
  write_file(path, out);
}

}  // namespace swlm
