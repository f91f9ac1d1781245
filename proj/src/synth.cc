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

#include "swlm/synth.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <utility>
#include <vector>

#include "swlm/error.h"
#include "swlm/rng.h"

namespace swlm {
namespace {

constexpr std::string_view kRootConsonants = "bdgklmnprst";
constexpr std::string_view kRootVowels = "aeiou";
constexpr std::string_view kAffixConsonants = "cfhjqvxz";
constexpr std::string_view kAffixVowels = "yw";
constexpr int kDrawAttempts = 200;

char pick(Rng& rng, std::string_view letters) {
  return letters[rng.below(letters.size())];
}

// Distinct CV-syllable strings of 1..max_syllables syllables (with an
// optional final consonant), not in `taken`.
std::vector<std::string> draw_forms(Rng& rng, int n, int max_syllables,
                                    std::string_view consonants, std::string_view vowels,
                                    std::set<std::string>& taken, const char* what) {
  std::size_t capacity = 0;
  std::size_t per = 1;
  const std::size_t syl = consonants.size() * vowels.size();
  for (int s = 1; s <= max_syllables; ++s) {
    per *= syl;
    capacity += per * (consonants.size() + 1);
  }
  if (static_cast<std::size_t>(n) > capacity / 2) {
    throw Error(ErrorKind::kInventoryTooSmall,
                std::to_string(n) + " distinct " + what + " requested, alphabet supports about " +
                    std::to_string(capacity / 2));
  }
  std::vector<std::string> out;
  int failures = 0;
  while (static_cast<int>(out.size()) < n) {
    const int syllables = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_syllables)));
    std::string form;
    for (int s = 0; s < syllables; ++s) {
      form += pick(rng, consonants);
      form += pick(rng, vowels);
    }
    if (rng.bernoulli(0.5)) form += pick(rng, consonants);
    if (taken.insert(form).second) {
      out.push_back(std::move(form));
      failures = 0;
    } else if (++failures > kDrawAttempts) {
      throw Error(ErrorKind::kInventoryTooSmall, std::string("could not draw enough ") + what);
    }
  }
  return out;
}

class ZipfSampler {
 public:
  ZipfSampler(int n, double exponent) : cdf_(static_cast<std::size_t>(n)) {
    double total = 0.0;
    for (int r = 0; r < n; ++r) {
      total += 1.0 / std::pow(r + 1.0, exponent);
      cdf_[static_cast<std::size_t>(r)] = total;
    }
    for (double& c : cdf_) c /= total;
  }

  int sample(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<int>(it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

// A content word: root plus one value per feature slot (-1 = unmarked).
struct Features {
  std::vector<int> values;
};

class Generator {
 public:
  explicit Generator(const SynthSpec& spec) : spec_(spec), zipf_(spec.num_roots, spec.zipf_exponent) {
    Rng rng(spec.seed, "synth:inventory");
    std::set<std::string> taken;
    roots_ = draw_forms(rng, spec.num_roots, 3, kRootConsonants, kRootVowels, taken, "roots");
    particles_ = draw_forms(rng, spec.num_function_words, 1, kRootConsonants, kRootVowels,
                            taken, "function words");
    std::set<std::string> affix_taken;
    const bool overlap = spec.overlap_alphabets;
    affixes_ = draw_forms(rng, spec.num_affixes, 1,
                          overlap ? kRootConsonants : kAffixConsonants,
                          overlap ? kRootVowels : kAffixVowels, affix_taken, "affixes");
    if (spec.typology == Typology::kAgglutinative) {
      // Slot s owns affixes s, s + slots, s + 2 * slots, ...
      slot_affixes_.resize(static_cast<std::size_t>(spec.num_slots));
      for (int a = 0; a < spec.num_affixes; ++a) {
        slot_affixes_[static_cast<std::size_t>(a % spec.num_slots)].push_back(a);
      }
    } else {
      // One feature slot; its values are bundles mapped many-to-one onto
      // suffixes for fusional data, or used directly for reduplicative data.
      slot_affixes_.resize(1);
      const int bundles = spec.typology == Typology::kFusional ? 2 * spec.num_affixes
                                                               : spec.num_affixes;
      for (int b = 0; b < bundles; ++b) slot_affixes_[0].push_back(b % spec.num_affixes);
    }
  }

  Corpus sentences(std::size_t budget, const char* name, bool test, SynthData& data) {
    Rng rng(spec_.seed, std::string("synth:") + name);
    Corpus c;
    c.source_path = std::string("<synth:") + name + ">";
    c.lowercased = true;
    while (c.tokens.size() < budget) {
      const int len = spec_.min_sentence_length +
                      static_cast<int>(rng.below(static_cast<std::uint64_t>(
                          spec_.max_sentence_length - spec_.min_sentence_length + 1)));
      c.line_starts.push_back(c.tokens.size());
      bool prev_content = false;
      Features prev;
      bool have_prev = false;
      for (int i = 0; i < len; ++i) {
        if (prev_content && !particles_.empty() && rng.bernoulli(spec_.function_word_prob)) {
          const int outer = outer_affix(prev);
          c.tokens.push_back(particles_[static_cast<std::size_t>(outer + 1) % particles_.size()]);
          prev_content = false;
          continue;
        }
        const int root = test && rng.bernoulli(spec_.test_rare_share)
                             ? static_cast<int>(rng.below(roots_.size()))
                             : zipf_.sample(rng);
        Features f;
        if (have_prev && rng.bernoulli(spec_.agreement_prob)) {
          f = prev;
        } else {
          for (const auto& slot : slot_affixes_) {
            // Value -1 leaves the slot unmarked.
            f.values.push_back(static_cast<int>(rng.below(slot.size() + 1)) - 1);
          }
        }
        const bool doubled = spec_.typology == Typology::kReduplicative &&
                             rng.bernoulli(spec_.doubling_prob);
        c.tokens.push_back(realize(root, f, doubled, data.gold));
        prev = f;
        have_prev = true;
        prev_content = true;
      }
    }
    return c;
  }

  void add_particles(SynthData& data) const {
    for (const auto& p : particles_) data.gold.add(p, {p});
  }

 private:
  // Index of the last affix a content word carries, or -1 if it carries none.
  int outer_affix(const Features& f) const {
    for (std::size_t s = f.values.size(); s-- > 0;) {
      if (f.values[s] >= 0) {
        return slot_affixes_[s][static_cast<std::size_t>(f.values[s])];
      }
    }
    return -1;
  }

  std::string realize(int root, const Features& f, bool doubled, MorphLexicon& gold) const {
    std::vector<std::string> morphs{roots_[static_cast<std::size_t>(root)]};
    for (std::size_t s = 0; s < f.values.size(); ++s) {
      if (f.values[s] < 0) continue;
      morphs.push_back(affixes_[static_cast<std::size_t>(
          slot_affixes_[s][static_cast<std::size_t>(f.values[s])])]);
    }
    if (doubled) {
      const std::size_t n = morphs.size();
      morphs.emplace_back("-");
      for (std::size_t i = 0; i < n; ++i) morphs.push_back(morphs[i]);
    }
    std::string word;
    for (const auto& m : morphs) word += m;
    gold.add(word, std::move(morphs));
    return word;
  }

  const SynthSpec& spec_;
  ZipfSampler zipf_;
  std::vector<std::string> roots_;
  std::vector<std::string> particles_;
  std::vector<std::string> affixes_;
  std::vector<std::vector<int>> slot_affixes_;
};

}  // namespace

std::string_view typology_name(Typology t) {
  switch (t) {
    case Typology::kAgglutinative: return "agglutinative";
    case Typology::kFusional: return "fusional";
    case Typology::kReduplicative: return "reduplicative";
  }
  return "agglutinative";
}

Typology parse_typology(std::string_view name) {
  if (name == "agglutinative") return Typology::kAgglutinative;
  if (name == "fusional") return Typology::kFusional;
  if (name == "reduplicative") return Typology::kReduplicative;
  throw Error(ErrorKind::kInvalidArgument, "unknown typology '" + std::string(name) + "'");
}

void SynthSpec::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::kInvalidConfig, what); };
  if (num_roots < 1) bad("num_roots must be >= 1");
  if (num_affixes < 1) bad("num_affixes must be >= 1");
  if (num_slots < 1) bad("num_slots must be >= 1");
  if (num_function_words < 0) bad("num_function_words must be >= 0");
  if (min_sentence_length < 1 || max_sentence_length < min_sentence_length) {
    bad("sentence lengths must satisfy 1 <= min <= max");
  }
  if (train_tokens == 0 || valid_tokens == 0 || test_tokens == 0) {
    bad("token budgets must be positive");
  }
  for (double p : {function_word_prob, agreement_prob, doubling_prob, test_rare_share}) {
    if (!(p >= 0.0 && p <= 1.0)) bad("probabilities must lie in [0, 1]");
  }
  if (!(zipf_exponent >= 0.0)) bad("zipf_exponent must be >= 0");
  if (typology == Typology::kAgglutinative && num_slots > num_affixes) {
    throw Error(ErrorKind::kInventoryTooSmall,
                "every affix slot needs at least one affix");
  }
}

SynthData generate(const SynthSpec& spec) {
  spec.validate();
  SynthData data;
  data.gold = MorphLexicon(LexiconKind::kMorfessor);
  Generator gen(spec);
  data.train = gen.sentences(spec.train_tokens, "train", false, data);
  data.valid = gen.sentences(spec.valid_tokens, "valid", false, data);
  data.test = gen.sentences(spec.test_tokens, "test", true, data);
  gen.add_particles(data);
  return data;
}

void write_synth(const SynthData& data, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path d(dir);
  write_corpus(data.train, (d / "train.txt").string());
  write_corpus(data.valid, (d / "valid.txt").string());
  write_corpus(data.test, (d / "test.txt").string());
  data.gold.save((d / "gold.lex").string());
}

}  // namespace swlm
