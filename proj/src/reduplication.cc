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

#include "swlm/reduplication.h"

#include <set>

#include "swlm/error.h"

namespace swlm {

std::string_view reduplication_name(Reduplication r) {
  switch (r) {
    case Reduplication::kFull: return "full";
    case Reduplication::kPartial: return "partial";
    case Reduplication::kNone: return "none";
  }
  return "none";
}

namespace {

bool equal_after_suffix(std::string_view a, std::string_view b,
                        const std::vector<std::string>& suffixes) {
  for (const auto& suf : suffixes) {
    if (a.size() > suf.size() && a.ends_with(suf) &&
        a.substr(0, a.size() - suf.size()) == b) {
      return true;
    }
  }
  return false;
}

}  // namespace

Reduplication detect_reduplication(std::string_view token,
                                   const std::vector<std::string>& suffixes) {
  const std::size_t hyphen = token.find('-');
  if (hyphen == std::string_view::npos || hyphen == 0 ||
      hyphen + 1 == token.size() ||
      token.find('-', hyphen + 1) != std::string_view::npos) {
    return Reduplication::kNone;
  }
  const std::string_view left = token.substr(0, hyphen);
  const std::string_view right = token.substr(hyphen + 1);
  if (left == right) return Reduplication::kFull;
  return partial_match(left, right, suffixes) ? Reduplication::kPartial
                                              : Reduplication::kNone;
}

bool partial_match(std::string_view left, std::string_view right,
                   const std::vector<std::string>& suffixes) {
  return right.starts_with(left) || left.starts_with(right) ||
         equal_after_suffix(left, right, suffixes) ||
         equal_after_suffix(right, left, suffixes);
}

RedupStats redup_stats(const Corpus& corpus) {
  if (corpus.empty()) throw Error(ErrorKind::kEmptyCorpus, "redup_stats");
  RedupStats stats;
  std::set<std::string_view> types;
  std::set<std::string_view> full_types;
  for (const auto& t : corpus.tokens) {
    types.insert(t);
    if (detect_reduplication(t) == Reduplication::kFull) {
      ++stats.full_tokens;
      full_types.insert(t);
    }
  }
  stats.tokens = corpus.size();
  stats.types = types.size();
  stats.full_types = full_types.size();
  stats.type_percent = 100.0 * static_cast<double>(stats.full_types) /
                       static_cast<double>(stats.types);
  stats.token_percent = 100.0 * static_cast<double>(stats.full_tokens) /
                        static_cast<double>(stats.tokens);
  return stats;
}

}  // namespace swlm
