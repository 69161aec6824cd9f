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
#include <numbers>

#include "trinecode/expsim.hpp"
#include "trinecode/trine.hpp"

namespace trinecode::expsim {
namespace {

using std::numbers::pi;

ChannelMatrix srm() { return trine::ideal_channel(trine::ChannelKind::Srm); }

NoiseModel quiet(double v = 1.0) {
  NoiseModel nm = NoiseModel::ideal();
  nm.visibility = v;
  nm.detector_efficiency = 1.0;
  return nm;
}

TEST(Optics, HalfWavePlate) {
  const Eigen::Vector2d h(1.0, 0.0);
  EXPECT_LT((hwp_matrix(0.0) * h - Eigen::Vector2d(-1.0, 0.0)).norm(), 1e-15);
  EXPECT_LT((hwp_matrix(pi / 6.0) * h - Eigen::Vector2d(-0.5, std::sqrt(3.0) / 2.0)).norm(), 1e-15);
  for (double t : {0.0, 0.3, 1.1, -2.0}) {
    const Eigen::Matrix2d m = hwp_matrix(t);
    EXPECT_LT((m.transpose() * m - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Optics, ElementsUnitary) {
  const std::vector<OpticsElement> elems = {{ElementKind::Hwp, 0.4, {0, 2}},
                                            {ElementKind::Pbs, 0.0, {2, 3}},
                                            {ElementKind::Bs5050, 0.0, {0, 1}},
                                            {ElementKind::Phase, 0.7, {3}}};
  for (const auto& e : elems) EXPECT_LT(qmath::unitarity_residual(e.transfer4()), 1e-12);
  EXPECT_THROW((OpticsElement{ElementKind::Phase, 0.0, {0, 1}}.transfer()), std::invalid_argument);
  EXPECT_THROW((OpticsElement{ElementKind::Hwp, 0.0, {0, 7}}.transfer()), std::invalid_argument);
}

TEST(Encoder, KnownOutputs) {
  const CVector w = encoder_state(2.0 * pi / 3.0);
  const CVector want = qmath::cvec({0.25, std::sqrt(3.0) / 4.0, std::sqrt(3.0) / 4.0, 0.75});
  EXPECT_LT((w - want).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((encoder_state(0.0) - qmath::cvec({1.0, 0.0, 0.0, 0.0})).cwiseAbs().maxCoeff(), 1e-15);
  const HwpAngles a = hwp_angles(2.0 * pi / 3.0);
  EXPECT_NEAR(a.theta0, pi / 6.0, 1e-12);
  EXPECT_NEAR(a.theta1, -pi / 6.0, 1e-12);
  EXPECT_NEAR(a.theta2, -pi / 12.0, 1e-12);
  EXPECT_NEAR(hwp_angles(0.0).theta2, -pi / 4.0, 1e-15);
}

TEST(Encoder, MatchesCodewordsAndOptics) {
  for (int x = 0; x < 3; ++x) {
    EXPECT_LT(qmath::phase_free_distance<double>(encoder_state(2.0 * pi * x / 3.0), trine::codeword_state(x).vector),
              1e-10);
  }
  for (int i = 0; i < 100; ++i) {
    const double phi = -pi + 2.0 * pi * (i + 0.5) / 100.0;
    const CVector s = encoder_state(phi);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_LT(qmath::phase_free_distance<double>(s, trine::codeword_at(phi)), 1e-10) << phi;
    EXPECT_LT(qmath::phase_free_distance<double>(encoder_optical(phi), s), 1e-12) << phi;
  }
  // Continuity through the phi = 0 completion.
  EXPECT_LT((encoder_state(1e-9) - encoder_state(0.0)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Noise, Limits) {
  const ChannelMatrix ideal = srm();
  EXPECT_LT((noisy_channel(ideal, quiet(1.0)).p - ideal.p).cwiseAbs().maxCoeff(), 1e-15);
  const ChannelMatrix flat = noisy_channel(ideal, quiet(0.0));
  EXPECT_LT((flat.p.array() - 1.0 / 3.0).abs().maxCoeff(), 1e-15);
  const double mi = info::mutual_information_uniform(noisy_channel(ideal, quiet(0.9848)));
  EXPECT_GE(mi, 1.28);
  EXPECT_LT(mi, 1.369068);
}

TEST(Noise, RowsAndMonotoneInVisibility) {
  for (auto kind : {trine::ChannelKind::Acc, trine::ChannelKind::C1, trine::ChannelKind::Srm}) {
    const ChannelMatrix ideal = trine::ideal_channel(kind);
    const double top = info::mutual_information_uniform(ideal);
    double prev = -1.0;
    for (int i = 0; i < 50; ++i) {
      NoiseModel nm;
      nm.visibility = i / 49.0;
      const ChannelMatrix ch = noisy_channel(ideal, nm);
      EXPECT_LT(ch.row_sum_residual(), 1e-12);
      const double mi = info::mutual_information_uniform(ch);
      EXPECT_LE(mi, top + 1e-12);
      EXPECT_GE(mi, prev - 1e-15);
      prev = mi;
    }
  }
}

TEST(Noise, QuadraticLawIsStronger) {
  NoiseModel lin = quiet(0.98);
  NoiseModel quad = lin;
  quad.law = VisibilityLaw::Quadratic;
  EXPECT_LT(info::mutual_information_uniform(noisy_channel(srm(), quad)),
            info::mutual_information_uniform(noisy_channel(srm(), lin)));
}

TEST(Noise, Validation) {
  NoiseModel nm;
  nm.visibility = 1.2;
  EXPECT_THROW(nm.validate(), std::invalid_argument);
  nm = NoiseModel{};
  nm.dark_rate = -1.0;
  EXPECT_THROW(nm.validate(), std::invalid_argument);
  nm = NoiseModel{};
  nm.detector_efficiency = 0.0;
  EXPECT_THROW(nm.validate(), std::invalid_argument);
}

TEST(Rng, PoissonMoments) {
  for (double mean : {0.5, 4.0, 30.0, 2500.0}) {
    Rng rng(99);
    const int n = 20000;
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.poisson(mean));
      s += k;
      s2 += k * k;
    }
    const double m = s / n;
    const double var = s2 / n - m * m;
    EXPECT_NEAR(m, mean, 5.0 * std::sqrt(mean / n)) << mean;
    EXPECT_NEAR(var / mean, 1.0, 0.06) << mean;
  }
  Rng a(5);
  Rng b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.poisson(123.4), b.poisson(123.4));
}

TEST(Counts, DeterministicPerSeed) {
  const NoiseModel nm;
  const CountTable a = simulate_counts(srm(), 1e5, 1.0, nm, 42);
  const CountTable b = simulate_counts(srm(), 1e5, 1.0, nm, 42);
  const CountTable c = simulate_counts(srm(), 1e5, 1.0, nm, 43);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
  EXPECT_EQ(a.to_csv(), b.to_csv());
}

TEST(Counts, OffDiagonalFraction) {
  const CountTable t = simulate_counts(srm(), 1e6, 1.0, quiet(), 7);
  const double p = trine::ideal_channel(trine::ChannelKind::Srm).p(0, 1);
  for (Eigen::Index x = 0; x < 3; ++x) {
    const double n = static_cast<double>(t.counts.row(x).sum());
    const double off = static_cast<double>(t.counts.row(x).sum() - t.counts(x, x)) / n / 2.0;
    EXPECT_NEAR(off, p, 3.0 * std::sqrt(2.0 * p * (1.0 - 2.0 * p) / n) / 2.0 + 1e-12);
  }
}

TEST(Counts, DarkCountsOnly) {
  NoiseModel nm;
  nm.background_rate = 0.0;
  nm.dark_rate = 100.0;
  const CountTable t = simulate_counts(srm(), 0.0, 1.0, nm, 3);
  const double mean = static_cast<double>(t.counts.sum()) / 9.0;
  EXPECT_NEAR(mean, 100.0, 3.0 * std::sqrt(100.0 / 9.0));
}

TEST(Counts, CsvLayout) {
  const CountTable t = simulate_counts(srm(), 10.0, 1.0, quiet(), 1);
  const std::string csv = t.to_csv();
  EXPECT_EQ(csv.rfind("input,outcome,count\n00,00,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
}

TEST(Estimate, ExactRecoveryAndErrors) {
  CountTable t;
  t.counts.resize(2, 2);
  t.counts << 30, 10, 5, 45;
  t.input_labels = {"a", "b"};
  t.output_labels = {"0", "1"};
  const auto e = estimate_channel(t);
  EXPECT_DOUBLE_EQ(e.channel.p(0, 0), 0.75);
  EXPECT_DOUBLE_EQ(e.channel.p(1, 1), 0.9);
  EXPECT_NEAR(e.stderr_table(0, 0), std::sqrt(0.75 * 0.25 / 40.0), 1e-15);
  t.counts.row(1).setZero();
  EXPECT_THROW(estimate_channel(t), std::invalid_argument);
}

TEST(Estimate, StatisticalRoundTrip) {
  const ChannelMatrix ch = srm();
  const auto e = estimate_channel(simulate_counts(ch, 1e6, 1.0, quiet(), 11));
  for (Eigen::Index x = 0; x < 3; ++x) {
    for (Eigen::Index y = 0; y < 3; ++y) {
      EXPECT_LE(std::abs(e.channel.p(x, y) - ch.p(x, y)), 5.0 * e.stderr_table(x, y) + 1e-12);
    }
  }
  EXPECT_NEAR(info::mutual_information_uniform(e.channel), info::mutual_information_uniform(ch), 0.005);
}

TEST(Estimate, ConvergesWithCounts) {
  const ChannelMatrix ch = srm();
  double err_small = 0.0;
  double err_large = 0.0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    err_small += (estimate_channel(simulate_counts(ch, 1e4, 1.0, quiet(), seed)).channel.p - ch.p).squaredNorm();
    err_large += (estimate_channel(simulate_counts(ch, 1e7, 1.0, quiet(), seed)).channel.p - ch.p).squaredNorm();
  }
  const double ratio = std::sqrt(err_small / err_large);
  EXPECT_GT(ratio, std::sqrt(1e3) / 2.0);
  EXPECT_LT(ratio, std::sqrt(1e3) * 2.0);
}

TEST(Experiment, NominalRuns) {
  const auto c1 = reproduce_experiment(ExperimentKind::C1, [] {
    NoiseModel nm = nominal_noise(ExperimentKind::C1);
    nm.visibility = 0.99;
    return nm;
  }(), 5);
  EXPECT_GE(c1.info.bits, 0.63);
  EXPECT_LE(c1.info.bits, 0.6454);
  const auto s = reproduce_experiment(ExperimentKind::Srm, nominal_noise(ExperimentKind::Srm), 5);
  EXPECT_EQ(s.info.length, 2);
  EXPECT_NEAR(s.info.bits, 1.312, 0.01);
  EXPECT_GT(s.info.per_letter, info::c1_trine());
  const auto acc = reproduce_experiment(ExperimentKind::AccPolarization, nominal_noise(ExperimentKind::AccPolarization), 5);
  EXPECT_NEAR(acc.info.bits, 0.560, 0.01);
}

TEST(Experiment, Calibration) {
  const double v = calibrate_visibility(1.312, NoiseModel{});
  EXPECT_GT(v, 0.97);
  EXPECT_LT(v, 1.0);
  NoiseModel nm;
  nm.visibility = v;
  EXPECT_NEAR(info::mutual_information_uniform(noisy_channel(srm(), nm)), 1.312, 1e-9);
  EXPECT_THROW(calibrate_visibility(1.5, NoiseModel{}), std::domain_error);
}

TEST(Experiment, KindsRoundTrip) {
  for (auto k : {ExperimentKind::AccPolarization, ExperimentKind::AccLocation, ExperimentKind::C1, ExperimentKind::Srm}) {
    EXPECT_EQ(experiment_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(experiment_kind_from_string("nope"), std::invalid_argument);
}

}  // namespace
}  // namespace trinecode::expsim
