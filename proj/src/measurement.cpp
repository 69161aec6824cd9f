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

#include "trinecode/measurement.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace trinecode {

namespace {

constexpr double kNormTol = 1e-10;

std::vector<std::string> default_labels(std::size_t n, std::vector<std::string> given) {
  if (given.empty()) {
    given.reserve(n);
    for (std::size_t i = 0; i < n; ++i) given.push_back(std::to_string(i));
  }
  if (given.size() != n) throw std::invalid_argument("label count does not match element count");
  return given;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(std::vector<LabeledState> s, std::vector<double> p)
    : states(std::move(s)), priors(std::move(p)) {
  if (states.empty()) throw std::invalid_argument("Ensemble: no states");
  if (priors.size() != states.size()) throw std::invalid_argument("Ensemble: prior count mismatch");
  const Eigen::Index d = states.front().vector.size();
  for (const auto& st : states) {
    if (st.vector.size() != d) throw std::invalid_argument("Ensemble: states differ in dimension");
    if (std::abs(st.vector.norm() - 1.0) > kNormTol) throw std::invalid_argument("Ensemble: state not normalised");
  }
  double total = 0.0;
  for (double q : priors) {
    if (!(q >= 0.0)) throw std::invalid_argument("Ensemble: negative prior");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("Ensemble: priors do not sum to one");
}

Ensemble::Ensemble(std::vector<LabeledState> s) {
  const std::size_t n = s.size();
  *this = Ensemble(std::move(s), std::vector<double>(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n)));
}

CMatrix Ensemble::density() const {
  CMatrix rho = CMatrix::Zero(dim(), dim());
  for (std::size_t x = 0; x < size(); ++x) rho += priors[x] * qmath::outer(states[x].vector);
  return rho;
}

Ensemble Ensemble::transformed(const CMatrix& u) const {
  Ensemble out = *this;
  for (auto& st : out.states) st.vector = u * st.vector;
  return out;
}

// ---------------------------------------------------------------------------
// Povm

Povm Povm::from_vectors(const std::vector<CVector>& vecs, std::vector<std::string> labels) {
  Povm m;
  m.labels = default_labels(vecs.size(), std::move(labels));
  for (const auto& v : vecs) {
    if (!vecs.empty() && v.size() != vecs.front().size()) throw std::invalid_argument("Povm: dimension mismatch");
    m.elements.push_back(qmath::outer(v));
    m.vectors.emplace_back(v);
    m.null.push_back(false);
  }
  return m;
}

Povm Povm::from_elements(std::vector<CMatrix> elems, std::vector<std::string> labels) {
  Povm m;
  m.labels = default_labels(elems.size(), std::move(labels));
  for (auto& e : elems) {
    if (e.rows() != e.cols()) throw std::invalid_argument("Povm: element not square");
    if (!elems.empty() && e.rows() != elems.front().rows()) throw std::invalid_argument("Povm: dimension mismatch");
    m.elements.push_back(std::move(e));
    m.vectors.emplace_back(std::nullopt);
    m.null.push_back(false);
  }
  return m;
}

void Povm::append_null(const CVector& v, std::string label) {
  if (!elements.empty() && v.size() != dim()) throw std::invalid_argument("Povm: dimension mismatch");
  elements.push_back(qmath::outer(v));
  vectors.emplace_back(v);
  labels.push_back(std::move(label));
  null.push_back(true);
}

void Povm::complete_kernel(std::string label, double tol) {
  const Eigen::Index d = dim();
  const CMatrix rest = CMatrix::Identity(d, d) - sum();
  const auto eig = qmath::eig_hermitian(rest, 1e-10);
  if (eig.values(0) <= tol) return;
  // Completion is a projector when the elements resolve identity on a
  // subspace. A single-vector complement keeps its rank-1 form.
  int rank = 0;
  for (Eigen::Index k = 0; k < d; ++k) rank += eig.values(k) > tol ? 1 : 0;
  if (rank == 1) {
    append_null(qmath::fix_global_phase<double>(std::sqrt(eig.values(0)) * eig.vectors.col(0)), std::move(label));
    return;
  }
  elements.push_back((rest + rest.adjoint()) / 2.0);
  vectors.emplace_back(std::nullopt);
  labels.push_back(std::move(label));
  null.push_back(true);
}

CMatrix Povm::sum() const {
  CMatrix s = CMatrix::Zero(dim(), dim());
  for (const auto& e : elements) s += e;
  return s;
}

// ---------------------------------------------------------------------------
// ChannelMatrix

ChannelMatrix::ChannelMatrix(Eigen::MatrixXd table, std::vector<std::string> in, std::vector<std::string> out)
    : p(std::move(table)),
      input_labels(default_labels(static_cast<std::size_t>(p.rows()), std::move(in))),
      output_labels(default_labels(static_cast<std::size_t>(p.cols()), std::move(out))) {}

double ChannelMatrix::row_sum_residual() const {
  double worst = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x) worst = std::max(worst, std::abs(p.row(x).sum() - 1.0));
  return worst;
}

void ChannelMatrix::validate(double tol) const {
  if (p.size() == 0) throw std::invalid_argument("ChannelMatrix: empty table");
  if (p.minCoeff() < -tol || p.maxCoeff() > 1.0 + tol) throw std::invalid_argument("ChannelMatrix: entry outside [0,1]");
  if (row_sum_residual() > tol) throw std::invalid_argument("ChannelMatrix: row does not sum to one");
}

// ---------------------------------------------------------------------------

ChannelMatrix born_channel(const Ensemble& e, const Povm& m) {
  if (e.dim() != m.dim()) throw std::invalid_argument("born_channel: ensemble and POVM dimensions differ");
  Eigen::MatrixXd p(static_cast<Eigen::Index>(e.size()), static_cast<Eigen::Index>(m.size()));
  std::vector<std::string> in;
  for (std::size_t x = 0; x < e.size(); ++x) {
    const CVector& psi = e.states[x].vector;
    in.push_back(e.states[x].label);
    for (std::size_t y = 0; y < m.size(); ++y) {
      // Real part of a Hermitian expectation; clamp tiny negative rounding.
      p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
          std::max(0.0, psi.dot(m.elements[y] * psi).real());
    }
  }
  return ChannelMatrix(std::move(p), std::move(in), m.labels);
}

Povm sqrt_measurement(const Ensemble& e, const SrmOptions& opts) {
  const CMatrix rho = e.density();
  const auto eig = qmath::eig_hermitian(rho, 1e-10);
  if (eig.values(0) <= opts.kernel_tol) throw std::invalid_argument("sqrt_measurement: ensemble has zero rank");
  const CMatrix inv_sqrt = qmath::psd_inv_sqrt(rho, opts.kernel_tol);

  std::vector<CVector> vecs;
  std::vector<std::string> labels;
  for (std::size_t y = 0; y < e.size(); ++y) {
    vecs.push_back(qmath::fix_global_phase<double>(inv_sqrt * (std::sqrt(e.priors[y]) * e.states[y].vector)));
    labels.push_back(e.states[y].label);
  }
  Povm m = Povm::from_vectors(vecs, std::move(labels));
  if (opts.complete_kernel) m.complete_kernel("null", opts.kernel_tol);
  return m;
}

PovmReport validate_povm(const Povm& m, double tol) {
  PovmReport r;
  if (m.size() == 0) return r;
  const Eigen::Index d = m.dim();
  r.completeness_residual = (m.sum() - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& el : m.elements) {
    r.hermiticity_residual = std::max(r.hermiticity_residual, qmath::hermiticity_residual(el));
    const CMatrix h = (el + el.adjoint()) / 2.0;
    r.min_eigenvalue = std::min(r.min_eigenvalue, qmath::eig_hermitian(h).values(d - 1));
  }
  r.pass = r.completeness_residual <= tol && r.min_eigenvalue >= -tol && r.hermiticity_residual <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Naimark extension

CVector NaimarkExtension::embed(const CVector& psi) const {
  if (psi.size() != system_dim) throw std::invalid_argument("NaimarkExtension: input dimension mismatch");
  return qmath::tensor(psi, qmath::basis(ancilla_dim, 0));
}

std::pair<std::vector<double>, double> NaimarkExtension::outcome_probabilities(const CVector& psi) const {
  const CVector out = unitary * embed(psi);
  std::size_t n_out = 0;
  for (const auto& o : outcome_of_basis) {
    if (o) n_out = std::max(n_out, *o + 1);
  }
  std::vector<double> probs(n_out, 0.0);
  double padding = 0.0;
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    const double pk = std::norm(out(k));
    if (const auto& o = outcome_of_basis[static_cast<std::size_t>(k)]) {
      probs[*o] += pk;
    } else {
      padding += pk;
    }
  }
  return {probs, padding};
}

NaimarkExtension naimark_extend(const Povm& m) {
  const Eigen::Index d = m.dim();
  const auto n = static_cast<Eigen::Index>(m.size());
  if (n == 0) throw std::invalid_argument("naimark_extend: empty POVM");

  // Rank-1 generators v_k with Pi_k = v_k v_k^dagger.
  std::vector<CVector> gens;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m.vectors[k]) {
      gens.push_back(*m.vectors[k]);
      continue;
    }
    const auto eig = qmath::eig_hermitian(m.elements[k], 1e-10);
    if (d > 1 && eig.values(1) > 1e-10) throw std::invalid_argument("naimark_extend: POVM element is not rank one");
    gens.push_back(std::sqrt(std::max(0.0, eig.values(0))) * eig.vectors.col(0));
  }

  NaimarkExtension ext;
  ext.system_dim = d;
  ext.ancilla_dim = std::max<Eigen::Index>(1, (n + d - 1) / d);
  const Eigen::Index big = d * ext.ancilla_dim;

  // Column (i, anc=0) of U carries conj(v_k[i]) in row k, so that
  // <k|U|psi,0> = <v_k|psi>. These d columns are orthonormal exactly when
  // sum_k v_k v_k^dagger = I.
  CMatrix u = CMatrix::Zero(big, big);
  std::vector<bool> filled(static_cast<std::size_t>(big), false);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::Index col = i * ext.ancilla_dim;
    for (Eigen::Index k = 0; k < n; ++k) u(k, col) = std::conj(gens[static_cast<std::size_t>(k)](i));
    filled[static_cast<std::size_t>(col)] = true;
  }
  {
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& g : gens) sum += qmath::outer(g);
    if ((sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8) {
      throw std::invalid_argument("naimark_extend: POVM does not resolve the identity");
    }
  }

  // Complete the remaining columns by Gram-Schmidt over standard basis
  // vectors, in index order.
  Eigen::Index candidate = 0;
  for (Eigen::Index col = 0; col < big; ++col) {
    if (filled[static_cast<std::size_t>(col)]) continue;
    for (;; ++candidate) {
      if (candidate >= big) throw std::runtime_error("naimark_extend: completion failed");
      CVector v = qmath::basis(big, candidate);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index c = 0; c < big; ++c) {
          if (filled[static_cast<std::size_t>(c)]) v -= u.col(c).dot(v) * u.col(c);
        }
      }
      const double nv = v.norm();
      if (nv > 1e-6) {
        u.col(col) = v / nv;
        filled[static_cast<std::size_t>(col)] = true;
        ++candidate;
        break;
      }
    }
  }

  ext.unitary = std::move(u);
  ext.outcome_of_basis.assign(static_cast<std::size_t>(big), std::nullopt);
  for (Eigen::Index k = 0; k < n; ++k) ext.outcome_of_basis[static_cast<std::size_t>(k)] = static_cast<std::size_t>(k);
  return ext;
}

ChannelMatrix naimark_channel(const Ensemble& e, const NaimarkExtension& ext, std::size_t outcomes) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(e.size()), static_cast<Eigen::Index>(outcomes));
  std::vector<std::string> in;
  for (std::size_t x = 0; x < e.size(); ++x) {
    in.push_back(e.states[x].label);
    const auto [probs, padding] = ext.outcome_probabilities(e.states[x].vector);
    (void)padding;
    for (std::size_t y = 0; y < std::min(outcomes, probs.size()); ++y) {
      p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = probs[y];
    }
  }
  return ChannelMatrix(std::move(p), std::move(in));
}

std::pair<Povm, std::vector<std::optional<OutcomePair>>> tensor(const Povm& a, const Povm& b) {
  Povm out;
  std::vector<std::optional<OutcomePair>> pairs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out.elements.push_back(qmath::tensor(a.elements[i], b.elements[j]));
      if (a.vectors[i] && b.vectors[j]) {
        out.vectors.emplace_back(qmath::tensor(*a.vectors[i], *b.vectors[j]));
      } else {
        out.vectors.emplace_back(std::nullopt);
      }
      out.labels.push_back(a.labels[i] + b.labels[j]);
      out.null.push_back(a.null[i] || b.null[j]);
      pairs.emplace_back(OutcomePair{static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return {std::move(out), std::move(pairs)};
}

Ensemble product_ensemble(const Ensemble& letters) {
  std::vector<LabeledState> states;
  std::vector<double> priors;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t j = 0; j < letters.size(); ++j) {
      states.push_back({letters.states[i].label + letters.states[j].label,
                        qmath::tensor(letters.states[i].vector, letters.states[j].vector)});
      priors.push_back(letters.priors[i] * letters.priors[j]);
    }
  }
  // Renormalise to absorb rounding in the prior products.
  const double total = std::accumulate(priors.begin(), priors.end(), 0.0);
  for (double& q : priors) q /= total;
  return Ensemble(std::move(states), std::move(priors));
}

double factorization_check(const Ensemble& letters, const Povm& m,
                           std::span<const std::optional<OutcomePair>> pairs, int letter_outcomes) {
  if (pairs.size() != m.size()) throw std::invalid_argument("factorization_check: one pair label per outcome required");
  if (letter_outcomes <= 0) throw std::invalid_argument("factorization_check: letter_outcomes must be positive");
  const Ensemble e2 = product_ensemble(letters);
  const ChannelMatrix joint = born_channel(e2, m);
  const auto nx = static_cast<Eigen::Index>(letters.size());
  const Eigen::Index ny = letter_outcomes;

  // P(y1 y2 | x1 x2) on the pair grid.
  std::vector<double> table(static_cast<std::size_t>(nx * nx * ny * ny), 0.0);
  auto at = [&](Eigen::Index x1, Eigen::Index x2, Eigen::Index y1, Eigen::Index y2) -> double& {
    return table[static_cast<std::size_t>(((x1 * nx + x2) * ny + y1) * ny + y2)];
  };
  for (Eigen::Index x1 = 0; x1 < nx; ++x1) {
    for (Eigen::Index x2 = 0; x2 < nx; ++x2) {
      for (std::size_t o = 0; o < m.size(); ++o) {
        if (!pairs[o]) continue;
        const auto [y1, y2] = *pairs[o];
        if (y1 < 0 || y1 >= ny || y2 < 0 || y2 >= ny) throw std::invalid_argument("factorization_check: pair label out of range");
        at(x1, x2, y1, y2) += joint(x1 * nx + x2, static_cast<Eigen::Index>(o));
      }
    }
  }

  Eigen::MatrixXd first = Eigen::MatrixXd::Zero(nx, ny);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(nx, ny);
  for (Eigen::Index x1 = 0; x1 < nx; ++x1) {
    for (Eigen::Index x2 = 0; x2 < nx; ++x2) {
      for (Eigen::Index y1 = 0; y1 < ny; ++y1) {
        for (Eigen::Index y2 = 0; y2 < ny; ++y2) {
          first(x1, y1) += at(x1, x2, y1, y2) / static_cast<double>(nx);
          second(x2, y2) += at(x1, x2, y1, y2) / static_cast<double>(nx);
        }
      }
    }
  }

  double worst = 0.0;
  for (Eigen::Index x1 = 0; x1 < nx; ++x1) {
    for (Eigen::Index x2 = 0; x2 < nx; ++x2) {
      for (Eigen::Index y1 = 0; y1 < ny; ++y1) {
        for (Eigen::Index y2 = 0; y2 < ny; ++y2) {
          worst = std::max(worst, std::abs(at(x1, x2, y1, y2) - first(x1, y1) * second(x2, y2)));
        }
      }
    }
  }
  return worst;
}

}  // namespace trinecode
