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

#include "trinecode/circuits.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "trinecode/trine.hpp"

namespace trinecode::circuits {

namespace {

constexpr double kZeroTol = 1e-15;

int bit_of(int qubit) {
  if (qubit == 1) return 2;
  if (qubit == 2) return 1;
  throw std::invalid_argument("qubit index must be 1 or 2, got " + std::to_string(qubit));
}

void check_block(const Block& m) {
  if ((m.adjoint() * m - Block::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("gate block is not unitary");
  }
}

Block pauli_x() {
  Block x;
  x << 0.0, 1.0, 1.0, 0.0;
  return x;
}

TwoLevelRotation make_rotation(int i, int j, const Block& b) { return {i, j, b}; }

void append_rotation(GateSequence& gs, const TwoLevelRotation& r) {
  const int diff = r.i ^ r.j;
  if (r.i < 0 || r.j > 3 || r.i >= r.j) throw std::invalid_argument("compile_two_qubit: bad rotation indices");
  if (diff == 1 || diff == 2) {
    // Target is the differing bit; the shared bit selects the polarity.
    const int target = diff == 2 ? 1 : 2;
    const int control = target == 1 ? 2 : 1;
    const bool shared = (r.i & bit_of(control)) != 0;
    gs.gates.push_back(GateOp::controlled(control, shared ? Polarity::OnOne : Polarity::OnZero, target, r.block));
    return;
  }
  // (0,3) and (1,2): the CNOT on q1 -> q2 swaps |10> and |11>, turning the
  // pair into (0,2) or (1,3).
  const GateOp cx = GateOp::controlled(1, Polarity::OnOne, 2, pauli_x());
  gs.gates.push_back(cx);
  gs.gates.push_back(GateOp::controlled(2, r.i == 0 ? Polarity::OnZero : Polarity::OnOne, 1, r.block));
  gs.gates.push_back(cx);
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", z.real() + 0.0, z.imag() + 0.0);
  return buf;
}

}  // namespace

CMatrix TwoLevelRotation::embed(int dim) const {
  if (i < 0 || j >= dim || i >= j) throw std::invalid_argument("TwoLevelRotation: indices out of range");
  CMatrix m = CMatrix::Identity(dim, dim);
  m(i, i) = block(0, 0);
  m(i, j) = block(0, 1);
  m(j, i) = block(1, 0);
  m(j, j) = block(1, 1);
  return m;
}

GateOp GateOp::single(int target, const Block& m) {
  bit_of(target);
  check_block(m);
  return {GateKind::SingleQubit, target, std::nullopt, m};
}

GateOp GateOp::controlled(int control_qubit, Polarity pol, int target, const Block& m) {
  bit_of(control_qubit);
  bit_of(target);
  if (control_qubit == target) throw std::invalid_argument("control and target must differ");
  check_block(m);
  return {GateKind::ControlledSingleQubit, target, Control{control_qubit, pol}, m};
}

CMatrix GateOp::matrix4() const {
  const int tb = bit_of(target);
  CMatrix m = CMatrix::Identity(4, 4);
  for (int k = 0; k < 4; ++k) {
    if (k & tb) continue;
    if (control) {
      const bool set = (k & bit_of(control->qubit)) != 0;
      if (set != (control->polarity == Polarity::OnOne)) continue;
    }
    const int k1 = k | tb;
    m(k, k) = matrix(0, 0);
    m(k, k1) = matrix(0, 1);
    m(k1, k) = matrix(1, 0);
    m(k1, k1) = matrix(1, 1);
  }
  return m;
}

CMatrix GateSequence::matrix() const {
  CMatrix m = CMatrix::Identity(dim, dim);
  for (const auto& g : gates) m = g.matrix4() * m;
  return m;
}

CMatrix decoder_unitary() {
  const auto& k = trine::constants();
  const double c = k.cos_half_gamma;
  const double s = k.sin_half_gamma;
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix4d u;
  u << c, 0.0, 0.0, -s,
       s * r, 0.5, 0.5, c * r,
       0.0, r, -r, 0.0,
       s * r, -0.5, -0.5, c * r;
  return u.cast<Complex>();
}

std::vector<TwoLevelRotation> two_level_decompose(const CMatrix& u) {
  if (u.rows() != u.cols() || u.rows() < 2) throw std::invalid_argument("two_level_decompose: matrix must be square");
  if (qmath::unitarity_residual(u) > 1e-10) throw std::invalid_argument("two_level_decompose: matrix is not unitary");
  const int d = static_cast<int>(u.rows());
  CMatrix w = u;
  std::vector<TwoLevelRotation> eliminated;

  auto apply = [&](const TwoLevelRotation& t) {
    const Eigen::RowVectorXcd ri = w.row(t.i);
    const Eigen::RowVectorXcd rj = w.row(t.j);
    w.row(t.i) = t.block(0, 0) * ri + t.block(0, 1) * rj;
    w.row(t.j) = t.block(1, 0) * ri + t.block(1, 1) * rj;
    eliminated.push_back(t);
  };

  for (int c = 0; c + 2 < d; ++c) {
    bool rotated = false;
    for (int r = c + 1; r < d; ++r) {
      if (std::abs(w(r, c)) <= kZeroTol) {
        w(r, c) = 0.0;
        continue;
      }
      const Complex a = w(c, c);
      const Complex b = w(r, c);
      const double n = std::hypot(std::abs(a), std::abs(b));
      Block t;
      t << std::conj(a) / n, std::conj(b) / n, -b / n, a / n;
      apply(make_rotation(c, r, t));
      w(r, c) = 0.0;
      rotated = true;
    }
    if (!rotated && std::abs(w(c, c) - 1.0) > kZeroTol) {
      Block t = Block::Identity();
      t(0, 0) = std::conj(w(c, c)) / std::abs(w(c, c));
      apply(make_rotation(c, c + 1, t));
    }
  }

  // u = T_1^dag ... T_k^dag B with B the remaining bottom-right block.
  std::vector<TwoLevelRotation> out;
  for (const auto& t : eliminated) out.push_back(make_rotation(t.i, t.j, t.block.adjoint()));
  const Block b = w.bottomRightCorner(2, 2);
  if ((b - Block::Identity()).cwiseAbs().maxCoeff() > 1e-14) out.push_back(make_rotation(d - 2, d - 1, b));
  return out;
}

CMatrix rotation_product(const std::vector<TwoLevelRotation>& rots, int dim) {
  CMatrix m = CMatrix::Identity(dim, dim);
  for (const auto& r : rots) m = m * r.embed(dim);
  return m;
}

GateSequence compile_two_qubit(const std::vector<TwoLevelRotation>& rots) {
  GateSequence gs;
  gs.dim = 4;
  // R_1 ... R_m applied to a state: R_m acts first.
  for (auto it = rots.rbegin(); it != rots.rend(); ++it) append_rotation(gs, *it);
  return gs;
}

CVector simulate_gates(const GateSequence& gs, const CVector& input) {
  if (input.size() != gs.dim) throw std::invalid_argument("simulate_gates: input dimension does not match sequence");
  CVector v = input;
  for (const auto& g : gs.gates) v = g.matrix4() * v;
  return v;
}

GateSequence decoder_circuit() { return compile_two_qubit(two_level_decompose(decoder_unitary())); }

AccCircuit acc_circuit() {
  NaimarkExtension ext = naimark_extend(trine::acc_povm());
  if (ext.unitary.rows() != 4) throw std::logic_error("acc_circuit: expected a two-qubit extension");
  GateSequence gs = compile_two_qubit(two_level_decompose(ext.unitary));
  return {std::move(gs), std::move(ext)};
}

std::string serialize(const GateSequence& gs) {
  std::ostringstream os;
  for (const auto& g : gs.gates) {
    if (g.control) {
      os << "CTRL q" << g.control->qubit << '=' << (g.control->polarity == Polarity::OnOne ? 1 : 0) << ' ';
    }
    os << "TARGET q" << g.target << " U=[[" << format_complex(g.matrix(0, 0)) << ',' << format_complex(g.matrix(0, 1))
       << "],[" << format_complex(g.matrix(1, 0)) << ',' << format_complex(g.matrix(1, 1)) << "]]\n";
  }
  return os.str();
}

GateSequence parse(std::string_view text) {
  static const std::string num = R"(([-+0-9.eEinfa]+))";
  static const std::string cpx = R"(\()" + num + "," + num + R"(\))";
  static const std::regex line_re(R"(^\s*(?:CTRL q([12])=([01])\s+)?TARGET q([12])\s+U=\[\[)" + cpx + "," + cpx +
                                  R"(\],\[)" + cpx + "," + cpx + R"(\]\]\s*$)");
  GateSequence gs;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (!std::regex_match(line, m, line_re)) {
      throw std::invalid_argument("gate text: cannot parse line " + std::to_string(lineno));
    }
    Block b;
    try {
      for (int k = 0; k < 4; ++k) {
        b(k / 2, k % 2) = Complex(std::stod(m[4 + 2 * k].str()), std::stod(m[5 + 2 * k].str()));
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("gate text: bad number on line " + std::to_string(lineno));
    }
    const int target = std::stoi(m[3].str());
    try {
      if (m[1].matched) {
        gs.gates.push_back(GateOp::controlled(std::stoi(m[1].str()), m[2].str() == "1" ? Polarity::OnOne : Polarity::OnZero,
                                              target, b));
      } else {
        gs.gates.push_back(GateOp::single(target, b));
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("gate text line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return gs;
}

}  // namespace trinecode::circuits
