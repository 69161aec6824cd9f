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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "trinecode/measurement.hpp"

/// Gate-level synthesis of small unitaries.
///
/// Two-qubit basis index = 2*q1 + q2, i.e. q1 is the most significant bit.
namespace trinecode::circuits {

using Block = Eigen::Matrix2cd;

/// A unitary acting as `block` on span{|i>, |j>} and as the identity
/// elsewhere. Row/column 0 of the block refers to |i>.
struct TwoLevelRotation {
  int i = 0;
  int j = 1;
  Block block = Block::Identity();

  CMatrix embed(int dim) const;
};

enum class Polarity { OnZero, OnOne };

struct Control {
  int qubit = 1;
  Polarity polarity = Polarity::OnOne;
};

enum class GateKind { SingleQubit, ControlledSingleQubit };

struct GateOp {
  GateKind kind = GateKind::SingleQubit;
  int target = 1;  // 1 or 2
  std::optional<Control> control;
  Block matrix = Block::Identity();

  static GateOp single(int target, const Block& m);
  static GateOp controlled(int control_qubit, Polarity pol, int target, const Block& m);
  /// Full 4x4 matrix of this gate.
  CMatrix matrix4() const;
};

/// Gates in time order: gates.front() acts first.
struct GateSequence {
  std::vector<GateOp> gates;
  int dim = 4;

  /// G_last ... G_first
  CMatrix matrix() const;
  std::size_t size() const { return gates.size(); }
};

/// Decoder unitary with rows <Pi_00|, <Pi_11|, <S|, <Pi_22| in the code-word
/// basis, so that measuring the computational basis after it realises the
/// square-root measurement with the singlet on outcome |10>.
CMatrix decoder_unitary();

/// Reck-style elimination: returns R_1, ..., R_m whose ordered product
/// R_1 R_2 ... R_m equals `u`. Columns are cleared left to right, each
/// sub-diagonal entry by a rotation on (column, row) with a real
/// non-negative pivot; the remaining phases end up in the last rotation.
/// At most d(d-1)/2 rotations. Throws std::invalid_argument if `u` is not
/// square or not unitary within 1e-10.
std::vector<TwoLevelRotation> two_level_decompose(const CMatrix& u);

/// Product R_1 R_2 ... R_m.
CMatrix rotation_product(const std::vector<TwoLevelRotation>& rots, int dim);

/// Compiles rotations on a two-qubit register into controlled single-qubit
/// gates. Indices differing in one bit give one gate controlled by the shared
/// bit; (0,3) and (1,2) are conjugated by a CNOT. Throws std::invalid_argument
/// for indices outside 0..3.
GateSequence compile_two_qubit(const std::vector<TwoLevelRotation>& rots);

/// Applies the sequence to `input`. Throws std::invalid_argument on a
/// dimension mismatch.
CVector simulate_gates(const GateSequence& gs, const CVector& input);

/// Compiled decoder circuit.
GateSequence decoder_circuit();

/// Circuit realising a Naimark extension of the accessible-information POVM
/// on a system qubit (q1) and an ancilla (q2) prepared in |0>.
struct AccCircuit {
  GateSequence gates;
  NaimarkExtension extension;
};

AccCircuit acc_circuit();

/// One gate per line: `CTRL q<k>=<0|1> TARGET q<m> U=[[(re,im),(re,im)],[(re,im),(re,im)]]`,
/// with the CTRL part omitted for uncontrolled gates.
std::string serialize(const GateSequence& gs);
/// Inverse of serialize. Throws std::invalid_argument on malformed input.
GateSequence parse(std::string_view text);

}  // namespace trinecode::circuits
