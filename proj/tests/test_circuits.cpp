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

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "trinecode/circuits.hpp"
#include "trinecode/trine.hpp"

namespace trinecode::circuits {
namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(DecoderUnitary, RowsAreTheMeasurementVectors) {
  const CMatrix u = decoder_unitary();
  EXPECT_LT(qmath::unitarity_residual(u), 1e-12);
  EXPECT_NEAR(u(0, 0).real(), (std::sqrt(2.0) + 1.0) / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(u(2, 1).real(), 1.0 / std::sqrt(2.0), 1e-15);
  const Povm srm = trine::srm_povm_closed_form();
  const int rows[3] = {0, 1, 3};
  for (std::size_t y = 0; y < 3; ++y) {
    const CVector row = u.row(rows[y]).adjoint();
    EXPECT_LT(qmath::phase_free_distance<double>(row, *srm.vectors[y]), 1e-12);
  }
  EXPECT_LT(qmath::phase_free_distance<double>(CVector(u.row(2).adjoint()), trine::singlet_state()), 1e-15);
}

TEST(Decompose, IdentityIsEmpty) { EXPECT_TRUE(two_level_decompose(CMatrix::Identity(4, 4)).empty()); }

TEST(Decompose, SingleGivensIsFixedPoint) {
  const double t = 0.37;
  TwoLevelRotation g{0, 1, Block::Identity()};
  g.block << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  const auto rots = two_level_decompose(g.embed(4));
  ASSERT_EQ(rots.size(), 1u);
  EXPECT_EQ(rots[0].i, 0);
  EXPECT_EQ(rots[0].j, 1);
  EXPECT_LT((rots[0].block - g.block).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Decompose, DecoderWithinSixRealRotations) {
  const CMatrix u = decoder_unitary();
  const auto rots = two_level_decompose(u);
  EXPECT_LE(rots.size(), 6u);
  EXPECT_LT(max_abs(rotation_product(rots, 4) - u), 1e-12);
  for (const auto& r : rots) EXPECT_LT(r.block.imag().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Decompose, RejectsNonUnitary) {
  CMatrix m = CMatrix::Identity(4, 4);
  m(0, 1) = 0.1;
  EXPECT_THROW(two_level_decompose(m), std::invalid_argument);
  EXPECT_THROW(two_level_decompose(CMatrix::Identity(3, 4)), std::invalid_argument);
}

TEST(Decompose, RandomUnitariesOfSeveralSizes) {
  std::mt19937_64 rng(23);
  for (int d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      const CMatrix u = testing::random_unitary(d, rng);
      const auto rots = two_level_decompose(u);
      EXPECT_LE(rots.size(), static_cast<std::size_t>(d * (d - 1) / 2));
      EXPECT_LT(max_abs(rotation_product(rots, d) - u), 1e-12);
    }
  }
}

TEST(Compile, GrayAdjacentIsOneGate) {
  TwoLevelRotation r{0, 1, Block::Identity()};
  r.block << 0.0, 1.0, -1.0, 0.0;
  const GateSequence gs = compile_two_qubit({r});
  ASSERT_EQ(gs.size(), 1u);
  EXPECT_EQ(gs.gates[0].target, 2);
  ASSERT_TRUE(gs.gates[0].control.has_value());
  EXPECT_EQ(gs.gates[0].control->qubit, 1);
  EXPECT_EQ(gs.gates[0].control->polarity, Polarity::OnZero);
  EXPECT_LT(max_abs(gs.matrix() - r.embed(4)), 1e-15);
}

TEST(Compile, EveryPairMatchesEmbedding) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const TwoLevelRotation r{i, j, testing::random_unitary(2, rng)};
      const GateSequence gs = compile_two_qubit({r});
      EXPECT_EQ(gs.size(), (i ^ j) == 3 ? 3u : 1u) << i << ',' << j;
      EXPECT_LT(max_abs(gs.matrix() - r.embed(4)), 1e-14) << i << ',' << j;
    }
  }
}

TEST(Compile, RoundTripRandomUnitaries) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix u = testing::random_unitary(4, rng);
    const GateSequence gs = compile_two_qubit(two_level_decompose(u));
    EXPECT_LT(max_abs(gs.matrix() - u), 1e-12);
  }
}

TEST(Simulate, EmptySequenceIsIdentity) {
  const CVector v = qmath::cvec({0.6, 0.0, 0.0, 0.8});
  EXPECT_EQ(simulate_gates(GateSequence{}, v), v);
  EXPECT_THROW(simulate_gates(GateSequence{}, qmath::cvec({1.0, 0.0})), std::invalid_argument);
}

TEST(Simulate, DecoderOutcomeDistribution) {
  const GateSequence gs = decoder_circuit();
  const ChannelMatrix ideal = trine::ideal_channel(trine::ChannelKind::Srm);
  const int basis_of_outcome[3] = {0, 1, 3};
  for (int x = 0; x < 3; ++x) {
    const CVector out = simulate_gates(gs, trine::codeword_state(x).vector);
    EXPECT_LT(std::norm(out(2)), 1e-20);
    for (int y = 0; y < 3; ++y) EXPECT_NEAR(std::norm(out(basis_of_outcome[y])), ideal.p(x, y), 1e-12);
  }
  const CVector out0 = simulate_gates(gs, trine::codeword_state(0).vector);
  EXPECT_NEAR(std::norm(out0(0)), 0.97140, 1e-5);
  EXPECT_NEAR(std::norm(out0(1)), 0.01430, 1e-5);
  EXPECT_NEAR(std::norm(out0(3)), 0.01430, 1e-5);
}

TEST(Simulate, PreservesNorm) {
  std::mt19937_64 rng(37);
  const GateSequence gs = decoder_circuit();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const CVector v = testing::random_state(4, rng);
    worst = std::max(worst, std::abs(simulate_gates(gs, v).norm() - 1.0));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(AccCircuit, ReproducesAccChannel) {
  const AccCircuit c = acc_circuit();
  EXPECT_LT(qmath::unitarity_residual(c.gates.matrix()), 1e-12);
  EXPECT_LT(max_abs(c.gates.matrix() - c.extension.unitary), 1e-12);
  const ChannelMatrix ideal = trine::ideal_channel(trine::ChannelKind::Acc);
  for (int x = 0; x < 3; ++x) {
    const CVector out = simulate_gates(c.gates, c.extension.embed(trine::letter_state(x).vector));
    std::vector<double> probs(3, 0.0);
    double padding = 0.0;
    for (int k = 0; k < 4; ++k) {
      const auto o = c.extension.outcome_of_basis[static_cast<std::size_t>(k)];
      (o ? probs[*o] : padding) += std::norm(out(k));
    }
    EXPECT_LT(padding, 1e-12);
    for (int y = 0; y < 3; ++y) EXPECT_NEAR(probs[static_cast<std::size_t>(y)], ideal.p(x, y), 1e-12);
  }
}

TEST(Serialize, RoundTrip) {
  const GateSequence gs = decoder_circuit();
  const std::string text = serialize(gs);
  const GateSequence back = parse(text);
  ASSERT_EQ(back.size(), gs.size());
  EXPECT_LT(max_abs(back.matrix() - gs.matrix()), 1e-15);
  EXPECT_EQ(serialize(back), text);
}

TEST(Serialize, UncontrolledAndErrors) {
  GateSequence gs;
  Block h;
  h << 1.0, 1.0, 1.0, -1.0;
  gs.gates.push_back(GateOp::single(1, h / std::sqrt(2.0)));
  const std::string text = serialize(gs);
  EXPECT_EQ(text.rfind("TARGET q1 U=[[", 0), 0u);
  EXPECT_EQ(parse(text).size(), 1u);
  EXPECT_THROW(parse("CTRL q1=1 TARGET q1 U=[[(1,0),(0,0)],[(0,0),(1,0)]]"), std::invalid_argument);
  EXPECT_THROW(parse("TARGET q3 U=[[(1,0),(0,0)],[(0,0),(1,0)]]"), std::invalid_argument);
  EXPECT_THROW(parse("TARGET q1 U=[[(2,0),(0,0)],[(0,0),(1,0)]]"), std::invalid_argument);
  EXPECT_THROW(parse("hello"), std::invalid_argument);
}

}  // namespace
}  // namespace trinecode::circuits
