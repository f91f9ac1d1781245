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

#include "swlm/config.h"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "swlm/corpus.h"
#include "swlm/error.h"

namespace swlm {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::kInvalidConfig,
              "bad value '" + value + "' for key '" + key + "'");
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) bad_value(key, v);
    return d;
  } catch (const std::logic_error&) {
    bad_value(key, v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v);
}

std::string fmt_double(double d) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

// Removes and returns kv[key] if present.
std::optional<std::string> take(KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) return std::nullopt;
  std::string v = it->second;
  kv.erase(it);
  return v;
}

}  // namespace

KeyValues parse_key_values(std::string_view text, const std::string& source) {
  KeyValues kv;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kMalformed, where + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorKind::kMalformed, where + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw Error(ErrorKind::kMalformed, where + ": duplicate key '" + key + "'");
    }
    if (eol == text.size()) break;
  }
  return kv;
}

LMConfig take_lm_config(KeyValues& kv) {
  const UnitKind unit = parse_unit_kind(take(kv, "unit").value_or("word"));
  const ComposerKind composer = parse_composer_kind(
      take(kv, "composer").value_or(unit == UnitKind::kWord ? "lookup" : "birnn"));
  LMConfig c = LMConfig::for_model(unit, composer);
  if (auto v = take(kv, "dim")) c.composer.dim = static_cast<int>(to_int("dim", *v));
  c.composer.birnn_hidden = c.composer.dim;
  if (auto v = take(kv, "birnn_hidden")) {
    c.composer.birnn_hidden = static_cast<int>(to_int("birnn_hidden", *v));
  }
  if (auto v = take(kv, "char_dim")) {
    c.composer.char_dim = static_cast<int>(to_int("char_dim", *v));
  }
  if (auto v = take(kv, "conv_widths")) {
    c.composer.conv_widths.clear();
    std::stringstream ss(*v);
    for (std::string item; std::getline(ss, item, ',');) {
      c.composer.conv_widths.push_back(
          static_cast<int>(to_int("conv_widths", std::string(trim(item)))));
    }
  }
  if (auto v = take(kv, "conv_filters_per_width")) {
    c.composer.filters_per_width = static_cast<int>(to_int("conv_filters_per_width", *v));
  }
  if (auto v = take(kv, "layers")) c.layers = static_cast<int>(to_int("layers", *v));
  if (auto v = take(kv, "hidden")) c.hidden = static_cast<int>(to_int("hidden", *v));
  if (auto v = take(kv, "dropout")) c.dropout = to_double("dropout", *v);
  if (auto v = take(kv, "batch_size")) {
    c.batch_size = static_cast<int>(to_int("batch_size", *v));
  }
  if (auto v = take(kv, "unroll")) c.unroll = static_cast<int>(to_int("unroll", *v));
  if (auto v = take(kv, "eval_batch_size")) {
    c.eval_batch_size = static_cast<int>(to_int("eval_batch_size", *v));
  }
  if (auto v = take(kv, "max_epochs")) {
    c.max_epochs = static_cast<int>(to_int("max_epochs", *v));
  }
  if (auto v = take(kv, "schedule")) c.schedule = parse_schedule_kind(*v);
  if (auto v = take(kv, "learning_rate")) c.learning_rate = to_double("learning_rate", *v);
  if (auto v = take(kv, "halving_threshold")) {
    c.halving_threshold = to_double("halving_threshold", *v);
  }
  if (auto v = take(kv, "stop_threshold")) {
    c.stop_threshold = to_double("stop_threshold", *v);
  }
  if (auto v = take(kv, "max_grad_norm")) c.max_grad_norm = to_double("max_grad_norm", *v);
  if (auto v = take(kv, "patience")) c.patience = static_cast<int>(to_int("patience", *v));
  if (auto v = take(kv, "seed")) {
    c.seed = static_cast<std::uint64_t>(to_int("seed", *v));
  }
  c.validate();
  return c;
}

std::string lm_config_to_text(const LMConfig& c) {
  std::string widths;
  for (std::size_t i = 0; i < c.composer.conv_widths.size(); ++i) {
    if (i) widths += ",";
    widths += std::to_string(c.composer.conv_widths[i]);
  }
  std::ostringstream out;
  out << "unit = " << unit_kind_name(c.unit) << "\n"
      << "composer = " << composer_kind_name(c.composer.kind) << "\n"
      << "dim = " << c.composer.dim << "\n"
      << "birnn_hidden = " << c.composer.birnn_hidden << "\n"
      << "char_dim = " << c.composer.char_dim << "\n"
      << "conv_widths = " << widths << "\n"
      << "conv_filters_per_width = " << c.composer.filters_per_width << "\n"
      << "layers = " << c.layers << "\n"
      << "hidden = " << c.hidden << "\n"
      << "dropout = " << fmt_double(c.dropout) << "\n"
      << "batch_size = " << c.batch_size << "\n"
      << "unroll = " << c.unroll << "\n"
      << "eval_batch_size = " << c.eval_batch_size << "\n"
      << "max_epochs = " << c.max_epochs << "\n"
      << "schedule = " << schedule_kind_name(c.schedule) << "\n"
      << "learning_rate = " << fmt_double(c.learning_rate) << "\n"
      << "halving_threshold = " << fmt_double(c.halving_threshold) << "\n"
      << "stop_threshold = " << fmt_double(c.stop_threshold) << "\n"
      << "max_grad_norm = " << fmt_double(c.max_grad_norm) << "\n"
      << "patience = " << c.patience << "\n"
      << "seed = " << c.seed << "\n";
  return out.str();
}

LMConfig lm_config_from_text(std::string_view text) {
  KeyValues kv = parse_key_values(text, "<model config>");
  LMConfig c = take_lm_config(kv);
  if (!kv.empty()) {
    throw Error(ErrorKind::kInvalidConfig, "unknown key '" + kv.begin()->first + "'");
  }
  return c;
}

bool ExperimentConfig::resolved_lowercase() const {
  if (lowercase) return *lowercase;
  return lm.unit != UnitKind::kChar && lm.unit != UnitKind::kCharTrigram;
}

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::string& source) {
  KeyValues kv = parse_key_values(text, source);
  ExperimentConfig e;
  e.train_path = take(kv, "train").value_or("");
  e.valid_path = take(kv, "valid").value_or("");
  e.test_path = take(kv, "test").value_or("");
  if (auto v = take(kv, "vocab_size")) {
    e.vocab_size = static_cast<std::size_t>(to_int("vocab_size", *v));
  }
  if (auto v = take(kv, "unk_prob")) e.unk_prob = to_double("unk_prob", *v);
  if (auto v = take(kv, "unk_resample")) e.unk_resample = to_bool("unk_resample", *v);
  if (auto v = take(kv, "bpe_merges")) {
    e.bpe_merges = static_cast<std::size_t>(to_int("bpe_merges", *v));
  }
  e.lexicon_path = take(kv, "lexicon").value_or("");
  if (auto v = take(kv, "lexicon_kind")) e.lexicon_kind = parse_lexicon_kind(*v);
  if (auto v = take(kv, "lowercase")) {
    if (*v != "auto") e.lowercase = to_bool("lowercase", *v);
  }
  e.model_out = take(kv, "model_out").value_or("");
  e.log_out = take(kv, "log_out").value_or("");
  e.lm = take_lm_config(kv);
  if (!kv.empty()) {
    throw Error(ErrorKind::kInvalidConfig,
                source + ": unknown key '" + kv.begin()->first + "'");
  }
  if (e.vocab_size < 1) throw Error(ErrorKind::kInvalidConfig, "vocab_size must be >= 1");
  if (!(e.unk_prob >= 0.0 && e.unk_prob <= 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "unk_prob must be in [0, 1]");
  }
  return e;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_file(path), path);
}

std::string to_text(const ExperimentConfig& e) {
  std::ostringstream out;
  out << "train = " << e.train_path << "\n"
      << "valid = " << e.valid_path << "\n"
      << "test = " << e.test_path << "\n"
      << "vocab_size = " << e.vocab_size << "\n"
      << "unk_prob = " << fmt_double(e.unk_prob) << "\n"
      << "unk_resample = " << (e.unk_resample ? "true" : "false") << "\n"
      << "bpe_merges = " << e.bpe_merges << "\n"
      << "lexicon = " << e.lexicon_path << "\n"
      << "lexicon_kind = " << lexicon_kind_name(e.lexicon_kind) << "\n"
      << "lowercase = " << (e.resolved_lowercase() ? "true" : "false") << "\n"
      << "model_out = " << e.model_out << "\n"
      << "log_out = " << e.log_out << "\n"
      << lm_config_to_text(e.lm);
  return out.str();
}

}  // namespace swlm
