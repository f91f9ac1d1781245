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

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "swlm/composers.h"
#include "swlm/error.h"
#include "swlm/parameters.h"
#include "swlm/rng.h"

namespace swlm {
namespace {

using ad::Init;
using ad::Matrix;
using ad::ParameterStore;
using ad::Tape;
using ad::Var;
using Words = std::vector<std::vector<int>>;

ComposerConfig small_config(ComposerKind kind, int dim) {
  ComposerConfig c;
  c.kind = kind;
  c.dim = dim;
  c.birnn_hidden = dim;
  c.char_dim = 3;
  c.conv_widths = {1, 2, 3};
  c.filters_per_width = 2;
  return c;
}

Matrix compose_eval(const Composer& composer, const Words& words) {
  Tape tape;
  return composer.compose(tape, words, nullptr, 0.0, false).value();
}

TEST(ComposeAddTest, SingleUnitIsItsRow) {
  ParameterStore store(1);
  Composer c(small_config(ComposerKind::kAddition, 4), UnitKind::kCharTrigram, 5, store);
  const Matrix out = compose_eval(c, {{3}});
  EXPECT_EQ(out, Matrix(store.get("compose.embedding").value.row(3)));
}

TEST(ComposeAddTest, VectorAddition) {
  ParameterStore store;
  ad::Parameter& table = store.add("t", 2, 2, Init::kZero);
  table.value(0, 0) = 1.0;
  table.value(1, 1) = 1.0;
  Tape tape;
  const Matrix out = compose_add(tape, table, {{0, 1}}).value();
  EXPECT_EQ(out(0, 0), 1.0);
  EXPECT_EQ(out(0, 1), 1.0);
}

TEST(ComposeAddTest, PermutationInvariance) {
  ParameterStore store(2);
  Composer c(small_config(ComposerKind::kAddition, 8), UnitKind::kBpe, 20, store);
  std::vector<int> units{3, 17, 5, 5, 11, 0};
  const Matrix ref = compose_eval(c, {units});
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    for (std::size_t k = units.size(); k > 1; --k) std::swap(units[k - 1], units[rng.below(k)]);
    const Matrix out = compose_eval(c, {units});
    EXPECT_LE((out - ref).norm(), 1e-9 * ref.norm());
  }
}

TEST(ComposerConfigTest, PairingRules) {
  ParameterStore store;
  try {
    Composer(small_config(ComposerKind::kAddition, 4), UnitKind::kChar, 5, store);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCharAdditionForbidden);
  }
  EXPECT_THROW(Composer(small_config(ComposerKind::kConvHighway, 4), UnitKind::kBpe, 5, store),
               Error);
  EXPECT_THROW(Composer(small_config(ComposerKind::kLookup, 4), UnitKind::kChar, 5, store),
               Error);
}

TEST(ComposeBiRnnTest, ZeroWeightsGiveZero) {
  ParameterStore store(4);
  Composer c(small_config(ComposerKind::kBiRnn, 6), UnitKind::kCharTrigram, 9, store);
  for (auto& [name, p] : store.all()) {
    if (name != "compose.embedding") p.value.setZero();
  }
  EXPECT_TRUE(compose_eval(c, {{1, 2, 3}, {4}}).isZero());
}

TEST(ComposeBiRnnTest, PaperWidth) {
  ParameterStore store(4);
  ComposerConfig cfg;
  cfg.kind = ComposerKind::kBiRnn;
  Composer c(cfg, UnitKind::kBpe, 10, store);
  const Matrix out = compose_eval(c, {{1, 2}, {3}, {4, 5, 6, 7}});
  EXPECT_EQ(out.rows(), 3);
  EXPECT_EQ(out.cols(), 200);
}

// Width-1 everything, so the LSTM can be traced scalar by scalar.
TEST(ComposeBiRnnTest, MatchesScalarTrace) {
  ParameterStore store;
  Composer c(small_config(ComposerKind::kBiRnn, 1), UnitKind::kCharTrigram, 2, store);
  const swlm_test::ScalarLstm fw{{0.3, -0.2, 0.5, 0.7}, {0.1, 0.4, -0.3, 0.2},
                                 {0.05, -0.1, 0.2, 0.0}};
  const swlm_test::ScalarLstm bw{{-0.4, 0.6, 0.1, -0.5}, {0.2, -0.1, 0.3, 0.6},
                                 {0.0, 0.3, -0.2, 0.1}};
  auto load = [&](const char* prefix, const swlm_test::ScalarLstm& l) {
    Matrix& w = store.get(std::string(prefix) + ".W").value;
    Matrix& b = store.get(std::string(prefix) + ".b").value;
    for (int k = 0; k < 4; ++k) {
      w(0, k) = l.wx[k];
      w(1, k) = l.wh[k];
      b(0, k) = l.b[k];
    }
  };
  load("compose.fw", fw);
  load("compose.bw", bw);
  store.get("compose.embedding").value(1, 0) = 0.8;
  store.get("compose.out_fw").value(0, 0) = 1.5;
  store.get("compose.out_bw").value(0, 0) = -0.7;
  store.get("compose.out_b").value(0, 0) = 0.25;

  const double hf = fw.step(0.8, 0.0, 0.0).first;
  const double hb = bw.step(0.8, 0.0, 0.0).first;
  EXPECT_NEAR(compose_eval(c, {{1}})(0, 0), 1.5 * hf - 0.7 * hb + 0.25, 1e-15);

  // Two units: forward reads 1 then 0, backward reads 0 then 1.
  store.get("compose.embedding").value(0, 0) = -0.6;
  auto [h1, c1] = fw.step(-0.6, 0.0, 0.0);
  const double hf2 = fw.step(0.8, h1, c1).first;
  auto [g1, d1] = bw.step(0.8, 0.0, 0.0);
  const double hb2 = bw.step(-0.6, g1, d1).first;
  const Matrix both = compose_eval(c, {{0, 1}, {1}});
  EXPECT_NEAR(both(0, 0), 1.5 * hf2 - 0.7 * hb2 + 0.25, 1e-15);
  EXPECT_NEAR(both(1, 0), 1.5 * hf - 0.7 * hb + 0.25, 1e-15);
}

TEST(ConvHighwayTest, FeatureMapLength) {
  EXPECT_EQ(conv_feature_map_length(5, 3), 3);
  for (int k = 1; k <= 30; ++k) {
    for (int n = 1; n <= k; ++n) EXPECT_EQ(conv_feature_map_length(k, n), k - n + 1);
  }
}

TEST(ConvHighwayTest, ZeroParametersGiveZero) {
  ParameterStore store(4);
  Composer c(small_config(ComposerKind::kConvHighway, 5), UnitKind::kChar, 7, store);
  for (auto& [name, p] : store.all()) p.value.setZero();
  EXPECT_TRUE(compose_eval(c, {{0, 1, 2, 3, 4}, {6}}).isZero());
}

TEST(ConvHighwayTest, OutputWidthForAnyLength) {
  ParameterStore store(4);
  Composer c(small_config(ComposerKind::kConvHighway, 5), UnitKind::kChar, 7, store);
  for (int len = 1; len <= 9; ++len) {
    const Matrix out = compose_eval(c, {std::vector<int>(static_cast<std::size_t>(len), 2)});
    EXPECT_EQ(out.cols(), 5);
    EXPECT_TRUE(out.allFinite());
  }
  ComposerConfig paper;
  paper.kind = ComposerKind::kConvHighway;
  EXPECT_EQ(paper.conv_output_width(), 525);
}

// With identity-like filters the conv layer is a max over positions.
TEST(ConvHighwayTest, MaxOverTime) {
  ParameterStore store;
  ComposerConfig cfg = small_config(ComposerKind::kConvHighway, 1);
  cfg.conv_widths = {1};
  cfg.filters_per_width = 1;
  cfg.char_dim = 1;
  Composer c(cfg, UnitKind::kChar, 3, store);
  for (auto& [name, p] : store.all()) p.value.setZero();
  Matrix& chars = store.get("compose.chars").value;
  chars(0, 0) = std::atanh(0.1);
  chars(1, 0) = std::atanh(-0.2);
  chars(2, 0) = std::atanh(0.7);
  store.get("compose.conv1.F").value(0, 0) = 1.0;
  store.get("compose.proj.W").value(0, 0) = 1.0;
  // Gate weights zero: t = 0.5, transform zero: z = 0.5 * y.
  EXPECT_NEAR(compose_eval(c, {{0, 1, 2}})(0, 0), 0.5 * 0.7, 1e-12);
}

TEST(LookupTest, RowsAndIndependence) {
  ParameterStore store(7);
  ad::Parameter& table = store.add("words", 4, 3);
  Tape tape;
  const Matrix out = lookup_word(tape, table, {2, 0}).value();
  EXPECT_EQ(Matrix(out.row(0)), Matrix(table.value.row(2)));
  EXPECT_EQ(Matrix(out.row(1)), Matrix(table.value.row(0)));
  store.zero_grad();
  Tape t2;
  t2.backward(ad::sum(lookup_word(t2, table, {2})));
  EXPECT_TRUE(table.grad.row(0).isZero());
  EXPECT_TRUE(table.grad.row(2).isOnes());
}

double composer_grad_error(ComposerKind kind, UnitKind units, const Words& words) {
  ParameterStore store(31);
  Composer c(small_config(kind, 4), units, 8, store);
  Rng rng(5);
  for (auto& [name, p] : store.all()) {
    for (Eigen::Index i = 0; i < p.value.size(); ++i) p.value.data()[i] = rng.uniform(-0.5, 0.5);
  }
  ParameterStore& ref = store;
  return ad::grad_check(
      [&](Tape& t) {
        const Var out = c.compose(t, words, nullptr, 0.0, false);
        return ad::sum(ad::tanh(ad::mul(out, out)));
      },
      ref);
}

TEST(ComposerGradTest, AllComposers) {
  const Words words{{1, 2, 3}, {4}, {5, 6, 7, 0, 1}};
  EXPECT_LE(composer_grad_error(ComposerKind::kLookup, UnitKind::kWord, {{1}, {3}, {1}}), 1e-4);
  EXPECT_LE(composer_grad_error(ComposerKind::kAddition, UnitKind::kBpe, words), 1e-4);
  EXPECT_LE(composer_grad_error(ComposerKind::kBiRnn, UnitKind::kCharTrigram, words), 1e-4);
  EXPECT_LE(composer_grad_error(ComposerKind::kConvHighway, UnitKind::kChar, words), 1e-4);
}

TEST(LstmCellTest, GradCheck) {
  ParameterStore store(3);
  ad::Parameter& w = store.add("w", 7, 12);
  ad::Parameter& b = store.add("b", 1, 12);
  ad::Parameter& x = store.add("x", 2, 4);
  ad::Parameter& h = store.add("h", 2, 3);
  ad::Parameter& cell = store.add("c", 2, 3);
  const double err = ad::grad_check(
      [&](Tape& t) {
        const LstmOutput o = lstm_cell(t.parameter(x), t.parameter(h), t.parameter(cell),
                                       t.parameter(w), t.parameter(b));
        return ad::add(ad::sum(ad::mul(o.h, o.h)), ad::sum(o.c));
      },
      store);
  EXPECT_LE(err, 1e-6);
}

}  // namespace
}  // namespace swlm
