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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trinecode/qmath.hpp"

namespace trinecode {

using qmath::CMatrix;
using qmath::Complex;
using qmath::CVector;

/// A pure signal state tagged with the input symbol it encodes.
struct LabeledState {
  std::string label;
  CVector vector;
};

/// Signal set {|psi_x>, P(x)}. All states share one dimension and are unit
/// norm; priors are a probability distribution.
struct Ensemble {
  std::vector<LabeledState> states;
  std::vector<double> priors;

  Ensemble() = default;
  Ensemble(std::vector<LabeledState> s, std::vector<double> p);
  /// Uniform priors.
  explicit Ensemble(std::vector<LabeledState> s);

  std::size_t size() const { return states.size(); }
  Eigen::Index dim() const { return states.empty() ? 0 : states.front().vector.size(); }
  /// sum_x P(x) |psi_x><psi_x|
  CMatrix density() const;
  /// Same states, every vector multiplied by `u`.
  Ensemble transformed(const CMatrix& u) const;
};

/// Measurement elements resolving the identity (or the identity on a
/// subspace, before kernel completion).
///
/// Rank-1 elements keep their generating vector so the Naimark construction
/// and circuit synthesis can work with amplitudes rather than projectors.
/// Outcomes flagged `null` are bookkeeping outcomes (e.g. the singlet
/// direction of the code-word decoder) that never fire on valid signals.
struct Povm {
  std::vector<CMatrix> elements;
  std::vector<std::string> labels;
  std::vector<std::optional<CVector>> vectors;
  std::vector<bool> null;

  std::size_t size() const { return elements.size(); }
  Eigen::Index dim() const { return elements.empty() ? 0 : elements.front().rows(); }

  static Povm from_vectors(const std::vector<CVector>& vecs, std::vector<std::string> labels = {});
  static Povm from_elements(std::vector<CMatrix> elems, std::vector<std::string> labels = {});

  /// Appends an outcome |v><v| flagged as null.
  void append_null(const CVector& v, std::string label);
  /// Appends the projector onto the complement of span(elements) as a null
  /// outcome. No-op when the elements already resolve the identity.
  void complete_kernel(std::string label = "null", double tol = qmath::kKernelTol);
  CMatrix sum() const;
};

/// Conditional probability table P(y|x), rows indexed by input.
struct ChannelMatrix {
  Eigen::MatrixXd p;
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;

  ChannelMatrix() = default;
  explicit ChannelMatrix(Eigen::MatrixXd table, std::vector<std::string> in = {},
                         std::vector<std::string> out = {});

  Eigen::Index inputs() const { return p.rows(); }
  Eigen::Index outputs() const { return p.cols(); }
  double operator()(Eigen::Index x, Eigen::Index y) const { return p(x, y); }
  /// max_x |sum_y P(y|x) - 1|
  double row_sum_residual() const;
  /// Throws std::invalid_argument unless entries lie in [-tol, 1+tol] and
  /// rows sum to one within `tol`.
  void validate(double tol = 1e-9) const;
};

/// p[x][y] = <psi_x| Pi_y |psi_x>.
ChannelMatrix born_channel(const Ensemble& e, const Povm& m);

struct SrmOptions {
  /// Append the projector onto the kernel of the ensemble density as a null
  /// outcome so the POVM resolves the full identity.
  bool complete_kernel = false;
  double kernel_tol = qmath::kKernelTol;
};

/// Square-root ("pretty good") measurement of a pure-state ensemble:
/// |mu_y> = rho^{-1/2} sqrt(P(y)) |psi_y>, rho = sum_x P(x)|psi_x><psi_x|.
///
/// With uniform priors the common factor sqrt(1/N) cancels against rho's
/// scaling, so this is the unweighted form (sum_x |psi_x><psi_x|)^{-1/2}|psi_y>.
/// Non-uniform priors use the weighted density. Each output vector is phase
/// normalised (first significant amplitude real and non-negative).
Povm sqrt_measurement(const Ensemble& e, const SrmOptions& opts = {});

struct PovmReport {
  double completeness_residual = 0.0;  // max |sum_y Pi_y - I|
  double min_eigenvalue = 0.0;         // over all elements
  double hermiticity_residual = 0.0;
  bool pass = false;
};

PovmReport validate_povm(const Povm& m, double tol = 1e-10);

/// Projective measurement in a larger space reproducing a rank-1 POVM.
///
/// The system occupies the high-order factor: basis index = i*ancilla_dim + a
/// with the ancilla prepared in |0>. Measuring computational basis state k
/// corresponds to POVM outcome `outcome_of_basis[k]` (nullopt for padding
/// outcomes that have zero probability on every system input).
struct NaimarkExtension {
  CMatrix unitary;
  Eigen::Index system_dim = 0;
  Eigen::Index ancilla_dim = 0;
  std::vector<std::optional<std::size_t>> outcome_of_basis;

  /// |psi> (x) |0>_anc
  CVector embed(const CVector& psi) const;
  /// Outcome probabilities of the original POVM, computed through the
  /// extension. Second element is the total mass on padding outcomes.
  std::pair<std::vector<double>, double> outcome_probabilities(const CVector& psi) const;
};

/// Builds a Naimark extension of a POVM whose elements are all rank one.
/// Throws std::invalid_argument for higher-rank elements.
NaimarkExtension naimark_extend(const Povm& m);

/// Channel matrix obtained by running every ensemble state through the
/// extension and reading the mapped outcomes.
ChannelMatrix naimark_channel(const Ensemble& e, const NaimarkExtension& ext, std::size_t outcomes);

/// Outcome label pair (y1, y2) for a measurement on two letters.
using OutcomePair = std::pair<int, int>;

/// Tensor product of two POVMs. Outcome index = i*|b| + j and the returned
/// pair labels map each outcome to (i, j).
std::pair<Povm, std::vector<std::optional<OutcomePair>>> tensor(const Povm& a, const Povm& b);

/// All |X|^2 letter pairs |psi_x1> (x) |psi_x2> with product priors.
Ensemble product_ensemble(const Ensemble& letters);

/// Memory-effect measure of a two-letter measurement.
///
/// Evaluates P(y1 y2 | x1 x2) on every product input, forms the single-letter
/// marginal channels A(y1|x1) and B(y2|x2) (averaged uniformly over the other
/// input) and returns max |P(y1 y2|x1 x2) - A(y1|x1) B(y2|x2)|. Outcomes with
/// no pair label (null outcomes) are excluded from the marginals. Separable
/// product measurements give 0.
double factorization_check(const Ensemble& letters, const Povm& m,
                           std::span<const std::optional<OutcomePair>> pairs, int letter_outcomes);

}  // namespace trinecode
