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

#include "trinecode/trine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace trinecode::trine {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;
using std::numbers::sqrt3;

void check_symbol(int x) {
  if (x < 0 || x > 2) throw std::out_of_range("trine symbol must be 0, 1 or 2, got " + std::to_string(x));
}

}  // namespace

const TrineConstants& constants() {
  static const TrineConstants c = [] {
    TrineConstants t{};
    t.kappa = -0.5;
    t.cos_half_gamma = (sqrt2 + 1.0) / std::sqrt(6.0);
    t.sin_half_gamma = (sqrt2 - 1.0) / std::sqrt(6.0);
    t.gamma = 2.0 * std::atan2(t.sin_half_gamma, t.cos_half_gamma);
    t.gamma_acc = 2.0 * std::acos(1.0 / std::tan(pi / 3.0));
    t.a = (4.0 + sqrt2) / (3.0 * sqrt3);
    t.b = -(2.0 - sqrt2) / (3.0 * sqrt3);
    t.epsilon = (2.0 - sqrt3) / 4.0;
    return t;
  }();
  return c;
}

CVector letter_at(double phi) { return qmath::cvec({std::cos(phi), -std::sin(phi)}); }

CVector codeword_at(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return qmath::cvec({0.5 * (1.0 + c), 0.5 * s, 0.5 * s, 0.5 * (1.0 - c)});
}

CVector singlet_state() { return qmath::cvec({0.0, 1.0 / sqrt2, -1.0 / sqrt2, 0.0}); }

LabeledState letter_state(int x) {
  check_symbol(x);
  static const CVector letters[3] = {
      qmath::cvec({1.0, 0.0}),
      qmath::cvec({-0.5, -sqrt3 / 2.0}),
      qmath::cvec({-0.5, sqrt3 / 2.0}),
  };
  return {std::to_string(x), letters[x]};
}

LabeledState codeword_state(int x) {
  check_symbol(x);
  const CVector psi = letter_state(x).vector;
  return {std::to_string(x) + std::to_string(x), qmath::fix_global_phase<double>(qmath::tensor(psi, psi))};
}

Ensemble letter_ensemble() { return Ensemble({letter_state(0), letter_state(1), letter_state(2)}); }

Ensemble binary_letter_ensemble() { return Ensemble({letter_state(0), letter_state(1)}); }

Ensemble codeword_ensemble() { return Ensemble({codeword_state(0), codeword_state(1), codeword_state(2)}); }

Povm acc_povm() {
  const double c = std::cos(constants().gamma_acc / 2.0);
  const double s = std::sin(constants().gamma_acc / 2.0);
  const double r = 1.0 / sqrt2;
  return Povm::from_vectors(
      {
          qmath::cvec({0.0, -s}),
          qmath::cvec({-r, r * c}),
          qmath::cvec({r, r * c}),
      },
      {"0", "1", "2"});
}

Povm c1_basis() {
  const double hi = std::sqrt(2.0 + sqrt3) / sqrt3;
  const double lo = std::sqrt(2.0 - sqrt3) / sqrt3;
  const CVector& p0 = letter_state(0).vector;
  const CVector p1 = letter_state(1).vector;
  const CVector nu0 = hi * p0 + lo * p1;
  const CVector nu1 = lo * p0 + hi * p1;
  return Povm::from_vectors({nu0, nu1}, {"0", "1"});
}

Povm srm_povm_closed_form(bool with_singlet) {
  const auto& k = constants();
  std::vector<CVector> words;
  for (int x = 0; x < 3; ++x) words.push_back(codeword_state(x).vector);
  std::vector<CVector> vecs;
  std::vector<std::string> labels;
  for (int y = 0; y < 3; ++y) {
    CVector v = CVector::Zero(4);
    for (int x = 0; x < 3; ++x) v += (x == y ? k.a : k.b) * words[static_cast<std::size_t>(x)];
    vecs.push_back(qmath::fix_global_phase<double>(v));
    labels.push_back(std::to_string(y) + std::to_string(y));
  }
  Povm m = Povm::from_vectors(vecs, std::move(labels));
  if (with_singlet) m.append_null(singlet_state(), "S");
  return m;
}

std::string_view to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::Acc: return "acc";
    case ChannelKind::C1: return "c1";
    case ChannelKind::Srm: return "srm";
  }
  return "?";
}

ChannelKind channel_kind_from_string(std::string_view s) {
  if (s == "acc") return ChannelKind::Acc;
  if (s == "c1") return ChannelKind::C1;
  if (s == "srm") return ChannelKind::Srm;
  throw std::invalid_argument("unknown channel kind: " + std::string(s));
}

ChannelMatrix ideal_channel(ChannelKind kind) {
  const auto& k = constants();
  switch (kind) {
    case ChannelKind::Acc: {
      Eigen::MatrixXd p = Eigen::MatrixXd::Constant(3, 3, 0.5);
      p.diagonal().setZero();
      return ChannelMatrix(std::move(p), {"0", "1", "2"}, {"0", "1", "2"});
    }
    case ChannelKind::C1: {
      Eigen::MatrixXd p(2, 2);
      p << 1.0 - k.epsilon, k.epsilon, k.epsilon, 1.0 - k.epsilon;
      return ChannelMatrix(std::move(p), {"0", "1"}, {"0", "1"});
    }
    case ChannelKind::Srm: {
      const double diag = k.cos_half_gamma * k.cos_half_gamma;
      Eigen::MatrixXd p = Eigen::MatrixXd::Constant(3, 3, 0.5 * k.sin_half_gamma * k.sin_half_gamma);
      p.diagonal().setConstant(diag);
      return ChannelMatrix(std::move(p), {"00", "11", "22"}, {"00", "11", "22"});
    }
  }
  throw std::invalid_argument("ideal_channel: unknown kind");
}

}  // namespace trinecode::trine
