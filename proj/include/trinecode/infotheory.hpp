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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trinecode/measurement.hpp"

namespace trinecode::info {

/// Information in bits for a block code of length n.
struct InfoResult {
  double bits = 0.0;
  double per_letter = 0.0;
  int length = 1;
  std::string meta;

  static InfoResult make(double bits, int length, std::string meta);
};

/// Mutual information of a parametric family against offset angle.
struct SweepCurve {
  std::vector<double> offsets;  // radians, strictly increasing
  std::vector<double> values;   // bits
};

/// Binary entropy in bits, H(0) = H(1) = 0.
double binary_entropy(double p);

/// I(X:Y) = sum_x P(x) sum_y P(y|x) log2[P(y|x) / P(y)], with 0 log 0 = 0.
double mutual_information(std::span<const double> priors, const ChannelMatrix& ch);
double mutual_information_uniform(const ChannelMatrix& ch);

/// 1 - H((2 - sqrt3)/4): the single-letter capacity of the qubit trine.
double c1_trine();

/// 1 - H((1 - sqrt(1 - kappa^2))/2): capacity of two equiprobable pure qubit
/// letters with overlap kappa under the optimal projective measurement.
double binary_c1(double kappa);

struct AccessibleInfoOptions {
  int angle_grid = 72;        // coarse grid points over [0, pi)
  int refine_rounds = 3;      // golden-section passes per coordinate
  double refine_tol = 1e-9;   // golden-section bracket width
};

struct AccessibleInfoResult {
  Povm povm;
  double bits = 0.0;
};

/// Maximises I(X:Y) over rank-1 POVMs with real elements for a qubit ensemble
/// with real amplitudes.
///
/// Elements are w_k (cos t_k, sin t_k)(cos t_k, sin t_k)^T. For three
/// outcomes the weights are fixed by solving the three completeness
/// equations, so the search runs over the angles alone: a coarse grid, then
/// coordinate-wise golden-section refinement. Two outcomes means an
/// orthonormal basis. Real qubit ensembles never need more than three
/// outcomes, so larger `max_outcomes` values are clamped to three. Throws
/// std::invalid_argument if `max_outcomes` is below the dimension or the
/// ensemble is not a real qubit ensemble.
AccessibleInfoResult accessible_info_optimize(const Ensemble& e, int max_outcomes,
                                              const AccessibleInfoOptions& opts = {});

enum class SweepKind { AccPolarization, SrmCollective };

std::string_view to_string(SweepKind k);
SweepKind sweep_kind_from_string(std::string_view s);

/// `points` evenly spaced offsets over [-pi/3, pi/3].
std::vector<double> default_offset_grid(int points = 121);

/// Rotates the signal set by each offset and evaluates the mutual information
/// against the fixed matched measurement: trine letters at 2 pi x/3 + offset
/// measured by the accessible-information POVM, or code words at parameter
/// 2 pi x/3 + offset measured by the square-root measurement.
SweepCurve offset_sweep(SweepKind kind, std::span<const double> grid);

struct SuperadditivityReport {
  double i_acc = 0.0;
  double c1 = 0.0;
  double i2 = 0.0;
  double i2_per_letter = 0.0;
  double gain = 0.0;  // I2/2 - C1
};

SuperadditivityReport superadditivity_report();

/// Binary letters |0> and kappa|0> + sqrt(1-kappa^2)|1>, as an ensemble of
/// block code words over {0,1}^n with the given priors.
Ensemble binary_code_ensemble(double kappa, std::span<const std::vector<int>> words,
                              std::span<const double> priors);

struct BlockGainRecord {
  double kappa = 0.0;
  int length = 0;
  double bits = 0.0;         // I_n for the best configuration
  double per_letter = 0.0;   // I_n / n
  double c1 = 0.0;           // binary_c1(kappa)
  double gain = 0.0;         // per_letter - c1
  double srm_gain = 0.0;     // same, decoding strictly with the SRM
  std::vector<std::vector<int>> words;
  std::vector<double> priors;
};

/// Superadditive gain of a small binary block code.
///
/// Length 3: the four equidistant words {001, 010, 100, 111}, uniform priors,
/// square-root decoding. Length 2: every three-word subset of {00,01,10,11};
/// priors on a 0.01 simplex grid with SRM decoding give `srm_gain`, and the
/// reported `gain` additionally optimises the projective decoder within the
/// code-word span (starting from the SRM basis), which is where a positive
/// gain appears. Throws std::invalid_argument for other lengths or kappa
/// outside (0, 1).
BlockGainRecord binary_block_gain(double kappa, int length);

/// Maximum of binary_block_gain(kappa, length).gain over `kappas`.
BlockGainRecord max_binary_block_gain(int length, std::span<const double> kappas);

/// Inclusive arithmetic grid [lo, hi] with the given step.
std::vector<double> arange(double lo, double hi, double step);

}  // namespace trinecode::info
