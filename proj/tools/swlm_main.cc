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

// Command-line front end. Exit status: 0 success, 1 usage error, 2 data
// error.

#include <CLI11.hpp>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "swlm/analysis.h"
#include "swlm/bpe.h"
#include "swlm/config.h"
#include "swlm/corpus.h"
#include "swlm/error.h"
#include "swlm/experiment.h"
#include "swlm/model_io.h"
#include "swlm/reduplication.h"
#include "swlm/segmenters.h"
#include "swlm/synth.h"
#include "swlm/utf8.h"
#include "swlm/vocab.h"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

using swlm::Error;
using swlm::ErrorKind;

// Where command output goes: --out if given, else stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    swlm::write_file(out_path, text);
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool default_lowercase(swlm::UnitKind unit) {
  return unit != swlm::UnitKind::kChar && unit != swlm::UnitKind::kCharTrigram;
}

std::string fmt(double d) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", d);
  return buf;
}

// Lowercasing flag shared by commands that read corpora for a model.
struct CaseOption {
  std::string value = "auto";
  bool resolve(swlm::UnitKind unit) const {
    if (value == "auto") return default_lowercase(unit);
    return value == "true";
  }
};

void add_case_option(CLI::App* cmd, CaseOption& opt) {
  cmd->add_option("--lowercase", opt.value, "true, false or auto (by unit kind)")
      ->check(CLI::IsMember({"auto", "true", "false"}));
}

}  // namespace

int main(int argc, char** argv) {
#if defined(__GLIBC__)
  // Training allocates and frees the same large buffers every step; keep
  // them on the heap instead of round-tripping through mmap.
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
  mallopt(M_TOP_PAD, 256 << 20);
#endif
  CLI::App app{"Subword-composition LSTM language models"};
  app.require_subcommand(1);

  // bpe-train
  std::string bpe_input, bpe_out;
  std::size_t bpe_merges = 10000;
  bool bpe_keep_case = false;
  auto* bpe_cmd = app.add_subcommand("bpe-train", "Learn a BPE merge table from a corpus");
  bpe_cmd->add_option("--input", bpe_input, "Training corpus")->required();
  bpe_cmd->add_option("--merges", bpe_merges, "Number of merges")->capture_default_str();
  bpe_cmd->add_option("--out", bpe_out, "Merge table path (default stdout)");
  bpe_cmd->add_flag("--keep-case", bpe_keep_case, "Do not lowercase the corpus");

  // segment
  std::string seg_unit = "char", seg_word, seg_input, seg_merges, seg_lexicon, seg_out;
  std::string seg_lexicon_kind = "morfessor";
  auto* seg_cmd = app.add_subcommand("segment", "Split words into subword units");
  seg_cmd->add_option("--unit", seg_unit, "Unit kind")
      ->capture_default_str()
      ->check(CLI::IsMember({"word", "char", "char-trigram", "bpe", "morfessor", "analysis"}));
  auto* seg_word_opt = seg_cmd->add_option("--word", seg_word, "A single word");
  seg_cmd->add_option("--input", seg_input, "Corpus whose types are segmented")
      ->excludes(seg_word_opt);
  seg_cmd->add_option("--merges", seg_merges, "BPE merge table");
  seg_cmd->add_option("--lexicon", seg_lexicon, "Segmentation lexicon");
  seg_cmd->add_option("--lexicon-kind", seg_lexicon_kind, "morfessor or analysis")
      ->capture_default_str();
  seg_cmd->add_option("--out", seg_out, "Output path (default stdout)");

  // lm-train
  std::string train_config;
  std::optional<std::uint64_t> train_seed;
  std::optional<int> train_epochs;
  auto* train_cmd = app.add_subcommand("lm-train", "Train a language model from a config file");
  train_cmd->add_option("--config", train_config, "Experiment config")->required();
  train_cmd->add_option("--seed", train_seed, "Overrides the config seed");
  train_cmd->add_option("--max-epochs", train_epochs, "Overrides max_epochs");

  // lm-eval
  std::string eval_model, eval_corpus;
  CaseOption eval_case;
  auto* eval_cmd = app.add_subcommand("lm-eval", "Perplexity of a saved model on a corpus");
  eval_cmd->add_option("--model", eval_model, "Model file")->required();
  eval_cmd->add_option("--corpus", eval_corpus, "Evaluation corpus")->required();
  add_case_option(eval_cmd, eval_case);

  // targeted-ppl
  std::string tp_model, tp_test, tp_train, tp_words, tp_annotations, tp_classes = "NOUN,VERB",
                                                                     tp_out;
  bool tp_redup = false;
  std::int64_t tp_threshold = 10;
  CaseOption tp_case;
  auto* tp_cmd = app.add_subcommand("targeted-ppl", "Perplexity of words following triggers");
  tp_cmd->add_option("--model", tp_model, "Model file")->required();
  tp_cmd->add_option("--test", tp_test, "Test corpus")->required();
  tp_cmd->add_option("--train", tp_train, "Training corpus for trigger counts")->required();
  auto* tp_redup_opt = tp_cmd->add_flag("--redup", tp_redup, "Reduplicated words trigger");
  auto* tp_words_opt =
      tp_cmd->add_option("--words", tp_words, "File of trigger words, one per line");
  auto* tp_ann_opt = tp_cmd->add_option("--annotations", tp_annotations,
                                        "token<TAB>UPOS sidecar aligned with the test corpus");
  tp_cmd->add_option("--classes", tp_classes, "UPOS classes that trigger")
      ->capture_default_str();
  tp_cmd->add_option("--threshold", tp_threshold,
                     "Trigger counts above this are frequent")
      ->capture_default_str();
  tp_cmd->add_option("--out", tp_out, "CSV path (default stdout)");
  add_case_option(tp_cmd, tp_case);
  tp_redup_opt->excludes(tp_words_opt)->excludes(tp_ann_opt);
  tp_words_opt->excludes(tp_ann_opt);

  // neighbors
  std::string nn_model, nn_query, nn_out;
  int nn_k = 10;
  auto* nn_cmd = app.add_subcommand("neighbors", "Cosine nearest neighbours of a word");
  nn_cmd->add_option("--model", nn_model, "Model file")->required();
  nn_cmd->add_option("--query", nn_query, "Query word")->required();
  nn_cmd->add_option("-k,--k", nn_k, "Number of neighbours")->capture_default_str();
  nn_cmd->add_option("--out", nn_out, "TSV path (default stdout)");

  // redup-stats
  std::string rs_input;
  auto* rs_cmd = app.add_subcommand("redup-stats", "Full-reduplication type and token shares");
  rs_cmd->add_option("--input", rs_input, "Corpus")->required();

  // synth
  swlm::SynthSpec spec;
  std::string synth_typology = "agglutinative", synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with gold morphs");
  synth_cmd->add_option("--typology", synth_typology, "Morphological typology")
      ->capture_default_str()
      ->check(CLI::IsMember({"agglutinative", "fusional", "reduplicative"}));
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();
  synth_cmd->add_option("--roots", spec.num_roots)->capture_default_str();
  synth_cmd->add_option("--affixes", spec.num_affixes)->capture_default_str();
  synth_cmd->add_option("--slots", spec.num_slots)->capture_default_str();
  synth_cmd->add_option("--function-words", spec.num_function_words)->capture_default_str();
  synth_cmd->add_option("--doubling-prob", spec.doubling_prob)->capture_default_str();
  synth_cmd->add_option("--zipf", spec.zipf_exponent)->capture_default_str();
  synth_cmd->add_option("--train-tokens", spec.train_tokens)->capture_default_str();
  synth_cmd->add_option("--valid-tokens", spec.valid_tokens)->capture_default_str();
  synth_cmd->add_option("--test-tokens", spec.test_tokens)->capture_default_str();
  synth_cmd->add_flag("--overlap-alphabets", spec.overlap_alphabets);
  synth_cmd->add_option("--seed", spec.seed)->capture_default_str();

  // sweep
  std::string sw_config, sw_sizes, sw_variants = "word,char-trigram:birnn", sw_out;
  std::optional<std::uint64_t> sw_seed;
  std::optional<int> sw_epochs;
  auto* sw_cmd = app.add_subcommand("sweep", "Test perplexity across training-data sizes");
  sw_cmd->add_option("--config", sw_config, "Base experiment config")->required();
  sw_cmd->add_option("--sizes", sw_sizes, "Comma-separated token counts")->required();
  sw_cmd->add_option("--variants", sw_variants, "Comma-separated unit[:composer] list")
      ->capture_default_str();
  sw_cmd->add_option("--seed", sw_seed, "Overrides the config seed");
  sw_cmd->add_option("--max-epochs", sw_epochs, "Overrides max_epochs");
  sw_cmd->add_option("--out", sw_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (bpe_cmd->parsed()) {
      const swlm::Corpus corpus = swlm::load_corpus(bpe_input, !bpe_keep_case);
      emit(bpe_out, swlm::train_bpe(corpus, bpe_merges).to_file_string());
    } else if (seg_cmd->parsed()) {
      const swlm::UnitKind unit = swlm::parse_unit_kind(seg_unit);
      swlm::Segmenter seg(unit);
      if (unit == swlm::UnitKind::kBpe) {
        if (seg_merges.empty()) throw CLI::RequiredError("--merges");
        seg = swlm::Segmenter(unit, swlm::MergeTable::load(seg_merges));
      } else if (unit == swlm::UnitKind::kMorfessor || unit == swlm::UnitKind::kAnalysis) {
        if (seg_lexicon.empty()) throw CLI::RequiredError("--lexicon");
        const auto kind = unit == swlm::UnitKind::kAnalysis
                              ? swlm::LexiconKind::kAnalysis
                              : swlm::parse_lexicon_kind(seg_lexicon_kind);
        seg = swlm::Segmenter(unit, swlm::MorphLexicon::load(seg_lexicon, kind));
      }
      auto line = [&](const std::string& w) {
        std::string out;
        for (const auto& u : seg.segment(w).units) {
          if (!out.empty()) out += ' ';
          out += u;
        }
        return out;
      };
      if (!seg_input.empty()) {
        const swlm::Corpus corpus = swlm::load_corpus(seg_input, default_lowercase(unit));
        std::string out;
        for (const auto& [w, _] : swlm::count_tokens(corpus)) out += w + "\t" + line(w) + "\n";
        emit(seg_out, out);
      } else {
        if (seg_word.empty()) throw CLI::RequiredError("--word or --input");
        emit(seg_out, line(seg_word) + "\n");
      }
    } else if (train_cmd->parsed()) {
      swlm::ExperimentConfig cfg = swlm::load_experiment_config(train_config);
      if (train_seed) cfg.lm.seed = *train_seed;
      if (train_epochs) cfg.lm.max_epochs = *train_epochs;
      std::cerr << "# resolved config\n" << swlm::to_text(cfg);
      std::cout << swlm::kTrainLogHeader << "\n";
      const auto result = swlm::run_experiment(cfg, [](const swlm::EpochLog& e) {
        std::cout << swlm::to_csv_row(e) << "\n";
        std::cout.flush();
      });
      std::cerr << "valid_ppl " << fmt(result.valid_ppl) << "\n";
      if (result.test_ppl) std::cerr << "test_ppl " << fmt(*result.test_ppl) << "\n";
    } else if (eval_cmd->parsed()) {
      const swlm::LanguageModel model = swlm::load_model(eval_model);
      const swlm::Corpus corpus =
          swlm::load_corpus(eval_corpus, eval_case.resolve(model.config().unit));
      std::cout << "ppl\t" << fmt(model.perplexity(corpus)) << "\n";
    } else if (tp_cmd->parsed()) {
      const swlm::LanguageModel model = swlm::load_model(tp_model);
      const bool lower = tp_case.resolve(model.config().unit);
      const swlm::Corpus test = swlm::load_corpus(tp_test, lower);
      const swlm::Corpus train = swlm::load_corpus(tp_train, lower);
      swlm::TriggerSet triggers;
      if (tp_redup) {
        triggers = swlm::TriggerSet::from_reduplication(test);
      } else if (!tp_words.empty()) {
        const swlm::Corpus words = swlm::load_corpus(tp_words, lower);
        triggers = swlm::TriggerSet::from_words(
            test, std::set<std::string>(words.tokens.begin(), words.tokens.end()));
      } else if (!tp_annotations.empty()) {
        const auto classes = split_list(tp_classes);
        triggers = swlm::TriggerSet::from_annotations(
            test, swlm::read_file(tp_annotations),
            std::set<std::string>(classes.begin(), classes.end()));
      } else {
        throw CLI::RequiredError("--redup, --words or --annotations");
      }
      const auto report = swlm::targeted_perplexity(model, test, triggers,
                                                    swlm::count_tokens(train), tp_threshold);
      emit(tp_out, swlm::targeted_report_csv(report));
    } else if (nn_cmd->parsed()) {
      const swlm::LanguageModel model = swlm::load_model(nn_model);
      std::string query = nn_query;
      if (default_lowercase(model.config().unit)) query = swlm::utf8::to_lower(query);
      emit(nn_out, swlm::neighbors_tsv(swlm::nearest_neighbors(model, query, nn_k)));
    } else if (rs_cmd->parsed()) {
      const auto stats = swlm::redup_stats(swlm::load_corpus(rs_input, true));
      std::cout << "full_types,types,type_percent,full_tokens,tokens,token_percent\n"
                << stats.full_types << "," << stats.types << "," << fmt(stats.type_percent)
                << "," << stats.full_tokens << "," << stats.tokens << ","
                << fmt(stats.token_percent) << "\n";
    } else if (synth_cmd->parsed()) {
      spec.typology = swlm::parse_typology(synth_typology);
      swlm::write_synth(swlm::generate(spec), synth_out);
    } else if (sw_cmd->parsed()) {
      swlm::ExperimentConfig cfg = swlm::load_experiment_config(sw_config);
      if (sw_seed) cfg.lm.seed = *sw_seed;
      if (sw_epochs) cfg.lm.max_epochs = *sw_epochs;
      std::cerr << "# resolved config\n" << swlm::to_text(cfg);
      std::vector<std::size_t> sizes;
      for (const auto& s : split_list(sw_sizes)) {
        try {
          sizes.push_back(static_cast<std::size_t>(std::stoull(s)));
        } catch (const std::exception&) {
          throw CLI::ValidationError("--sizes", "not a token count: " + s);
        }
      }
      std::vector<swlm::SweepVariant> variants;
      for (const auto& v : split_list(sw_variants)) {
        variants.push_back(swlm::parse_sweep_variant(v));
      }
      const bool lower = cfg.resolved_lowercase();
      const swlm::Corpus train = swlm::load_corpus(cfg.train_path, lower);
      const swlm::Corpus valid = swlm::load_corpus(cfg.valid_path, lower);
      const swlm::Corpus test = swlm::load_corpus(cfg.test_path, lower);
      emit(sw_out, swlm::sweep_csv(swlm::size_sweep(cfg, train, valid, test, sizes, variants)));
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return 0;
}
