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

#include <string_view>

#include "trinecode/measurement.hpp"

/// Closed-form states and measurements of the qubit trine.
///
/// Two-qubit vectors use the ordering |00>, |01>, |10>, |11>. Constructed
/// state vectors carry the phase convention "first significant amplitude real
/// and non-negative", except where a measurement vector is quoted verbatim
/// (acc_povm keeps its literal signs; only the projectors matter there).
namespace trinecode::trine {

struct TrineConstants {
  double kappa;           // <psi_0|psi_1> = -1/2
  double gamma;           // collective decoding angle
  double cos_half_gamma;  // (sqrt2 + 1)/sqrt6
  double sin_half_gamma;  // (sqrt2 - 1)/sqrt6
  double gamma_acc;       // cos(gamma_acc/2) = cot(pi/3)
  double a;               // (4 + sqrt2)/(3 sqrt3)
  double b;               // -(2 - sqrt2)/(3 sqrt3)
  double epsilon;         // (2 - sqrt3)/4
};

const TrineConstants& constants();

/// |psi_x>, x in {0,1,2}: (1,0), (-1/2,-sqrt3/2), (-1/2, sqrt3/2).
LabeledState letter_state(int x);
/// |psi_x> (x) |psi_x>
LabeledState codeword_state(int x);
/// Trine letter at encoding angle phi: (cos phi, -sin phi). letter_state(x)
/// equals letter_at(2 pi x / 3) up to the phase convention.
CVector letter_at(double phi);
/// Code word at parameter phi: (1+cos phi, sin phi, sin phi, 1-cos phi)/2.
CVector codeword_at(double phi);
/// (|01> - |10>)/sqrt2
CVector singlet_state();

/// Three trine letters with uniform priors.
Ensemble letter_ensemble();
/// {psi_0, psi_1} with priors 1/2 (the letter pair attaining C1).
Ensemble binary_letter_ensemble();
/// Three code words Psi_xx with uniform priors.
Ensemble codeword_ensemble();

/// Optimal accessible-information POVM {|omega_y><omega_y|} on the qubit.
Povm acc_povm();
/// Orthonormal basis {nu_0, nu_1} measuring {psi_0, psi_1}.
Povm c1_basis();
/// |Pi_yy> = a|Psi_yy> + b sum_{x != y}|Psi_xx>. With `with_singlet` the
/// singlet projector is appended as a null outcome so the POVM resolves the
/// 4-dim identity.
Povm srm_povm_closed_form(bool with_singlet = false);

enum class ChannelKind { Acc, C1, Srm };

std::string_view to_string(ChannelKind k);
ChannelKind channel_kind_from_string(std::string_view s);

/// acc: 3x3 with zero diagonal and 1/2 elsewhere; c1: binary symmetric
/// channel with crossover epsilon; srm: cos^2(g/2) diagonal,
/// sin^2(g/2)/2 off-diagonal.
ChannelMatrix ideal_channel(ChannelKind kind);

}  // namespace trinecode::trine
