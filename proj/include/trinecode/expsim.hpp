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

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "trinecode/infotheory.hpp"
#include "trinecode/measurement.hpp"

/// Linear-optics encoder model and seeded photon-counting simulation.
///
/// Single-photon mode order: A_H, B_H, A_V, B_V, which coincides with the
/// two-qubit code basis |00>, |01>, |10>, |11> (first qubit = polarisation,
/// second = path).
namespace trinecode::expsim {

enum class ElementKind { Hwp, Pbs, Bs5050, Phase };

/// One optical element and the modes it acts on. HWP and BS act on two
/// modes, PBS on the two vertical modes (A_V, B_V), Phase on one.
struct OpticsElement {
  ElementKind kind = ElementKind::Hwp;
  double param = 0.0;  // theta for HWP, delta for Phase
  std::vector<int> modes;

  /// Local transfer matrix on `modes`.
  CMatrix transfer() const;
  /// Embedded into the four-mode space.
  CMatrix transfer4() const;
};

/// |H> -> -cos2t|H> + sin2t|V>, |V> -> sin2t|H> + cos2t|V>.
Eigen::Matrix2d hwp_matrix(double theta);

struct HwpAngles {
  double theta0;
  double theta1;
  double theta2;
};

/// Wave-plate settings for encoding parameter phi. theta2 is 0/0 at
/// phi = 0 and takes its phi -> 0+ limit, -pi/4.
HwpAngles hwp_angles(double phi);

/// (c0 c1, -s0 s2, -c0 s1, s0 c2) with cK = cos 2thetaK, sK = sin 2thetaK.
CVector encoder_state(double phi);

/// HWP(theta0) on A, PBS, Phase(-pi/2) on B_V, HWP(theta1) on A,
/// HWP(-theta2) on B.
std::vector<OpticsElement> encoder_elements(double phi);

/// Propagates a photon entering A_H through encoder_elements(phi).
CVector encoder_optical(double phi);

enum class VisibilityLaw { Linear, Quadratic };

/// Interferometer visibility plus detector floors.
///
/// The visibility mixes each row toward uniform with weight 1 - V (or
/// 1 - V^2 under the quadratic law). Dark and background counts add a
/// uniform floor weighted by their rate against the detected signal rate.
struct NoiseModel {
  double visibility = 1.0;
  double dark_rate = 100.0;         // counts/s per detector
  double background_rate = 300.0;   // counts/s, all detectors together
  double detector_efficiency = 0.7;
  double signal_rate = 1e6;         // photons/s per input setting
  double duration = 5.0;            // s per input setting
  VisibilityLaw law = VisibilityLaw::Linear;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  static NoiseModel ideal();
};

enum class ExperimentKind { AccPolarization, AccLocation, C1, Srm };

std::string_view to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(std::string_view s);

/// Nominal conditions of each experiment: visibility 0.9916 (acc, polarisation
/// encoding), 0.9905 (acc, location encoding), 0.9848 (srm); the c1 setup has
/// no interferometer and keeps visibility 1.
NoiseModel nominal_noise(ExperimentKind k);

ChannelMatrix ideal_experiment_channel(ExperimentKind k);

/// Visibility contraction only.
ChannelMatrix apply_visibility(const ChannelMatrix& ideal, double v, VisibilityLaw law = VisibilityLaw::Linear);
/// Visibility contraction followed by the dark/background floor.
ChannelMatrix noisy_channel(const ChannelMatrix& ideal, const NoiseModel& nm);

/// 64-bit Mersenne Twister with fixed samplers so that tables reproduce
/// across platforms: uniforms use the top 53 bits, Poisson variates use
/// multiplication of uniforms below mean 10 and Hormann's PTRS above.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();
  std::int64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

struct CountTable {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;
  double duration = 0.0;
  std::uint64_t seed = 0;
  NoiseModel noise;

  /// Header `input,outcome,count`, rows by input then outcome.
  std::string to_csv() const;
};

/// Draws counts for every input: signal cells are Poisson(lambda P(y|x)) with
/// lambda = efficiency * mean_rate * duration (the split of a Poisson total),
/// plus Poisson(dark_rate * duration + background_rate * duration / |Y|) per
/// detector. Throws std::invalid_argument for a negative rate or duration.
CountTable simulate_counts(const ChannelMatrix& ch, double mean_rate, double duration, const NoiseModel& nm,
                           std::uint64_t seed);

struct ChannelEstimate {
  ChannelMatrix channel;
  Eigen::MatrixXd stderr_table;  // sqrt(p(1-p)/N_row)
};

/// Row-normalised counts. Throws std::invalid_argument for an empty row.
ChannelEstimate estimate_channel(const CountTable& ct);

struct ExperimentResult {
  info::InfoResult info;
  CountTable counts;
  ChannelEstimate estimate;
};

/// Ideal channel, visibility contraction (skipped for c1), counting with
/// detector floors, estimation and mutual information. The srm result has
/// length 2.
ExperimentResult reproduce_experiment(ExperimentKind k, const NoiseModel& nm, std::uint64_t seed);

/// Visibility in [lo, hi] at which the srm noisy-channel mutual information
/// equals `target_bits`, by bisection. Throws std::domain_error if the
/// target is not bracketed.
double calibrate_visibility(double target_bits, const NoiseModel& nm, double lo = 0.97, double hi = 1.0);

}  // namespace trinecode::expsim
