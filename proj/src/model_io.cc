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

#include "swlm/model_io.h"

#include <zlib.h>

#include <cstdint>
#include <cstring>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "swlm/config.h"
#include "swlm/corpus.h"
#include "swlm/error.h"

namespace swlm {
namespace {

constexpr std::size_t kMagicSize = sizeof(kModelMagic) - 1;

template <typename T>
void put(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
  }
}

void put_bytes(std::string& out, std::string_view s) {
  put<std::uint64_t>(out, s.size());
  out.append(s);
}

class Reader {
 public:
  Reader(std::string_view data, std::string what) : data_(data), what_(std::move(what)) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }

  std::string_view take(std::size_t n) {
    need(n);
    std::string_view s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  std::string_view bytes() { return take(get<std::uint64_t>()); }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw Error(ErrorKind::kTruncated, what_);
  }

  std::string_view data_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::string serialize_params(const ad::ParameterStore& params) {
  std::string out;
  put<std::uint64_t>(out, params.size());
  for (const auto& [name, p] : params.all()) {
    put_bytes(out, name);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(p.value.rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(p.value.cols()));
    for (Eigen::Index i = 0; i < p.value.size(); ++i) {
      std::uint64_t bits;
      const double d = p.value.data()[i];
      std::memcpy(&bits, &d, sizeof(bits));
      put<std::uint64_t>(out, bits);
    }
  }
  return out;
}

void restore_params(std::string_view payload, ad::ParameterStore& params) {
  Reader r(payload, "parameter section");
  const auto n = r.get<std::uint64_t>();
  std::set<std::string> seen;
  for (std::uint64_t k = 0; k < n; ++k) {
    const std::string name(r.bytes());
    seen.insert(name);
    const auto rows = static_cast<Eigen::Index>(r.get<std::uint64_t>());
    const auto cols = static_cast<Eigen::Index>(r.get<std::uint64_t>());
    if (!params.contains(name)) {
      throw Error(ErrorKind::kShapeMismatch, "unexpected parameter " + name);
    }
    ad::Parameter& p = params.get(name);
    if (p.value.rows() != rows || p.value.cols() != cols) {
      throw Error(ErrorKind::kShapeMismatch,
                  name + ": stored " + std::to_string(rows) + "x" + std::to_string(cols) +
                      ", model " + std::to_string(p.value.rows()) + "x" +
                      std::to_string(p.value.cols()));
    }
    for (Eigen::Index i = 0; i < p.value.size(); ++i) {
      const auto bits = r.get<std::uint64_t>();
      double d;
      std::memcpy(&d, &bits, sizeof(d));
      p.value.data()[i] = d;
    }
  }
  if (seen.size() != params.size()) {
    for (const auto& entry : params.all()) {
      if (!seen.count(entry.first)) {
        throw Error(ErrorKind::kShapeMismatch, "missing parameter " + entry.first);
      }
    }
  }
  if (!r.done()) throw Error(ErrorKind::kMalformed, "trailing bytes in parameter section");
}

// Checks magic and CRC, then splits into named sections.
std::map<std::string, std::string_view> read_sections(const std::string& bytes) {
  if (bytes.size() < kMagicSize ||
      std::memcmp(bytes.data(), kModelMagic, kMagicSize) != 0) {
    throw Error(ErrorKind::kVersion, "missing SWLM1 header");
  }
  if (bytes.size() < kMagicSize + 4 + 4) throw Error(ErrorKind::kTruncated, "model file");
  const std::size_t body = bytes.size() - 4;
  Reader tail(std::string_view(bytes).substr(body), "checksum");
  const auto stored = tail.get<std::uint32_t>();
  const auto actual = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(body)));
  Reader r(std::string_view(bytes).substr(kMagicSize, body - kMagicSize), "model file");
  std::map<std::string, std::string_view> sections;
  // Structure first, so a cut-off file reports truncation rather than a
  // checksum mismatch.
  const auto count = r.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto name_len = r.get<std::uint32_t>();
    std::string name(r.take(name_len));
    sections[name] = r.bytes();
  }
  if (!r.done()) {
    if (stored != actual) throw Error(ErrorKind::kChecksum, "CRC-32 mismatch");
    throw Error(ErrorKind::kMalformed, "trailing bytes in model file");
  }
  if (stored != actual) throw Error(ErrorKind::kChecksum, "CRC-32 mismatch");
  return sections;
}

std::string_view section(const std::map<std::string, std::string_view>& s,
                         const std::string& name) {
  auto it = s.find(name);
  if (it == s.end()) throw Error(ErrorKind::kMalformed, "model file lacks section " + name);
  return it->second;
}

}  // namespace

std::string serialize_model(const LanguageModel& model) {
  std::vector<std::pair<std::string, std::string>> sections;
  sections.emplace_back("config", lm_config_to_text(model.config()));
  sections.emplace_back("vocab.output", model.output_vocab().to_file_string());
  sections.emplace_back("vocab.input", model.input_vocab().to_file_string());
  std::string units;
  for (const auto& u : model.units().units()) {
    units += u;
    units += '\n';
  }
  sections.emplace_back("units", units);
  sections.emplace_back("merges", model.segmenter().merges().to_file_string());
  const MorphLexicon& lex = model.segmenter().lexicon();
  sections.emplace_back("lexicon.kind", std::string(lexicon_kind_name(lex.kind())));
  sections.emplace_back("lexicon", lex.to_file_string());
  sections.emplace_back("params", serialize_params(model.params()));

  std::string out(kModelMagic, kMagicSize);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(sections.size()));
  for (const auto& [name, payload] : sections) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out += name;
    put_bytes(out, payload);
  }
  const auto crc = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(out.data()), static_cast<uInt>(out.size())));
  put<std::uint32_t>(out, crc);
  return out;
}

LanguageModel deserialize_model(const std::string& bytes) {
  const auto s = read_sections(bytes);
  LMConfig config = lm_config_from_text(section(s, "config"));
  Vocabulary output = Vocabulary::parse(section(s, "vocab.output"));
  Vocabulary input = Vocabulary::parse(section(s, "vocab.input"));
  std::vector<std::string> unit_list;
  std::string_view units = section(s, "units");
  while (!units.empty()) {
    const std::size_t nl = units.find('\n');
    unit_list.emplace_back(units.substr(0, nl));
    units = nl == std::string_view::npos ? std::string_view() : units.substr(nl + 1);
  }
  Segmenter segmenter(config.unit);
  if (config.unit == UnitKind::kBpe) {
    segmenter = Segmenter(config.unit, MergeTable::parse(section(s, "merges")));
  } else if (config.unit == UnitKind::kMorfessor || config.unit == UnitKind::kAnalysis) {
    const LexiconKind kind = parse_lexicon_kind(section(s, "lexicon.kind"));
    segmenter = Segmenter(config.unit, MorphLexicon::parse(section(s, "lexicon"), kind));
  }
  LanguageModel model(std::move(config), std::move(output), std::move(input),
                      std::move(segmenter), UnitTable(std::move(unit_list)));
  restore_params(section(s, "params"), model.params());
  return model;
}

void save_model(const LanguageModel& model, const std::string& path) {
  write_file(path, serialize_model(model));
}

LanguageModel load_model(const std::string& path) {
  return deserialize_model(read_file(path));
}

void load_parameters(LanguageModel& model, const std::string& path) {
  const std::string bytes = read_file(path);
  const auto s = read_sections(bytes);
  restore_params(section(s, "params"), model.params());
}

}  // namespace swlm
