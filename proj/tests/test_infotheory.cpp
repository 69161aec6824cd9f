// Copyright 2026 The trinecode Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "trinecode/infotheory.hpp"
#include "trinecode/trine.hpp"

namespace trinecode::info {
namespace {

TEST(Entropy, Endpoints) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
}

TEST(MutualInformation, IdentityAndUseless) {
  EXPECT_NEAR(mutual_information_uniform(ChannelMatrix(Eigen::MatrixXd::Identity(4, 4))), 2.0, 1e-15);
  EXPECT_NEAR(mutual_information_uniform(ChannelMatrix(Eigen::MatrixXd::Constant(3, 5, 0.2))), 0.0, 1e-15);
  const std::vector<double> bad = {1.0};
  EXPECT_THROW(mutual_information(bad, ChannelMatrix(Eigen::MatrixXd::Identity(2, 2))), std::invalid_argument);
}

TEST(MutualInformation, BoundsOnRandomChannels) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int nx = 2 + trial % 3;
    const int ny = 2 + trial % 4;
    Eigen::MatrixXd p(nx, ny);
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y) p(x, y) = u(rng);
      p.row(x) /= p.row(x).sum();
    }
    const double i = mutual_information_uniform(ChannelMatrix(p));
    EXPECT_GE(i, 0.0);
    EXPECT_LE(i, std::log2(static_cast<double>(ny)) + 1e-12);
    EXPECT_LE(i, std::log2(static_cast<double>(nx)) + 1e-12);
  }
}

TEST(Report, KnownValues) {
  const auto r = superadditivity_report();
  EXPECT_NEAR(r.i_acc, std::log2(3.0) - 1.0, 1e-12);
  EXPECT_NEAR(r.c1, 0.6454210973347, 1e-12);
  EXPECT_NEAR(r.i2, 1.3690684229434, 1e-12);
  EXPECT_NEAR(r.gain, r.i2 / 2.0 - r.c1, 1e-15);
  EXPECT_GT(r.gain, 0.039);
}

TEST(BinaryC1, TrineOverlap) {
  EXPECT_NEAR(binary_c1(0.5), c1_trine(), 1e-14);
  EXPECT_NEAR(binary_c1(0.0), 1.0, 1e-15);
  EXPECT_THROW(binary_c1(1.5), std::invalid_argument);
}

TEST(AccessibleInfo, TrineThreeOutcomes) {
  const auto r = accessible_info_optimize(trine::letter_ensemble(), 3);
  EXPECT_GE(r.bits, std::log2(3.0) - 1.0 - 1e-8);
  EXPECT_TRUE(validate_povm(r.povm).pass);
  EXPECT_EQ(r.povm.size(), 3u);
}

TEST(AccessibleInfo, BinaryHalfOverlap) {
  const auto r = accessible_info_optimize(trine::binary_letter_ensemble(), 4);
  EXPECT_NEAR(r.bits, c1_trine(), 1e-8);
  EXPECT_TRUE(validate_povm(r.povm).pass);
}

TEST(AccessibleInfo, BadInputs) {
  EXPECT_THROW(accessible_info_optimize(trine::letter_ensemble(), 1), std::invalid_argument);
  EXPECT_THROW(accessible_info_optimize(trine::codeword_ensemble(), 4), std::invalid_argument);
  const Ensemble complex_states({{"a", qmath::cvec({1.0, 0.0})}, {"b", CVector::Constant(2, Complex(0.0, std::sqrt(0.5)))}});
  EXPECT_THROW(accessible_info_optimize(complex_states, 3), std::invalid_argument);
}

TEST(Sweep, MaximaAtZeroOffset) {
  const auto grid = default_offset_grid(121);
  ASSERT_EQ(grid.size(), 121u);
  EXPECT_EQ(grid[60], 0.0);
  const auto srm = offset_sweep(SweepKind::SrmCollective, grid);
  const auto it = std::max_element(srm.values.begin(), srm.values.end());
  EXPECT_EQ(it - srm.values.begin(), 60);
  EXPECT_NEAR(srm.values[60], 1.3690684229434, 1e-12);
  const auto acc = offset_sweep(SweepKind::AccPolarization, grid);
  EXPECT_NEAR(acc.values[60], std::log2(3.0) - 1.0, 1e-12);
  for (double v : acc.values) EXPECT_LE(v, acc.values[60] + 1e-12);
}

TEST(Sweep, RejectsBadGrids) {
  EXPECT_THROW(default_offset_grid(0), std::invalid_argument);
  const std::vector<double> unsorted = {0.1, 0.0};
  EXPECT_THROW(offset_sweep(SweepKind::AccPolarization, unsorted), std::invalid_argument);
  EXPECT_THROW(sweep_kind_from_string("x"), std::invalid_argument);
}

TEST(BlockGain, LengthThreeNearPeak) {
  const auto r = binary_block_gain(0.855, 3);
  EXPECT_NEAR(r.gain, 9.087e-3, 2e-5);
  EXPECT_EQ(r.words.size(), 4u);
}

TEST(BlockGain, LengthTwoPositiveNearUnitOverlap) {
  const auto r = binary_block_gain(0.97, 2);
  EXPECT_GT(r.gain, 0.0);
  EXPECT_LT(r.gain, 1e-3);
  EXPECT_LE(r.srm_gain, r.gain);
  EXPECT_LT(r.srm_gain, 0.0);
}

TEST(BlockGain, RejectsBadArguments) {
  EXPECT_THROW(binary_block_gain(0.5, 4), std::invalid_argument);
  EXPECT_THROW(binary_block_gain(1.0, 3), std::invalid_argument);
}

TEST(Arange, Inclusive) {
  const auto g = arange(0.3, 0.9, 0.005);
  EXPECT_EQ(g.size(), 121u);
  EXPECT_NEAR(g.back(), 0.9, 1e-12);
}

}  // namespace
}  // namespace trinecode::info
