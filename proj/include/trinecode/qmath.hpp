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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

/// Small dense complex linear algebra used throughout the toolkit.
///
/// Everything here is templated on the real scalar type so the same code runs
/// in `double` (the default everywhere else) or `long double` for spot
/// checks. Dimensions are tiny (the largest operator is 8x8), so all routines
/// favour clarity over blocking or vectorisation.
namespace trinecode::qmath {

template <typename Scalar>
using CVectorX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMatrixX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RVectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CVector = CVectorX<double>;
using CMatrix = CMatrixX<double>;
using RVector = RVectorX<double>;
using Complex = std::complex<double>;

inline constexpr double kKernelTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

/// Kronecker product; index i*dim(b)+j holds a_i*b_j.
template <typename Derived1, typename Derived2>
auto tensor(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using S = typename Derived1::Scalar;
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Scalar>
CVectorX<Scalar> tensor(const CVectorX<Scalar>& a, const CVectorX<Scalar>& b) {
  CVectorX<Scalar> out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

/// |v><v|
template <typename Scalar>
CMatrixX<Scalar> outer(const CVectorX<Scalar>& v) {
  return v * v.adjoint();
}

template <typename Scalar>
Scalar hermiticity_residual(const CMatrixX<Scalar>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<Scalar>::infinity();
  if (m.size() == 0) return Scalar(0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
bool is_hermitian(const CMatrixX<Scalar>& m, Scalar tol = Scalar(kHermitianTol)) {
  return hermiticity_residual(m) <= tol;
}

template <typename Scalar>
Scalar unitarity_residual(const CMatrixX<Scalar>& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<Scalar>::infinity();
  const auto id = CMatrixX<Scalar>::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

template <typename Scalar>
struct HermitianEigen {
  RVectorX<Scalar> values;         // descending
  CMatrixX<Scalar> vectors;        // column k pairs with values(k)
};

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order. Throws std::invalid_argument if `m` is not Hermitian
/// within `tol`.
template <typename Scalar>
HermitianEigen<Scalar> eig_hermitian(const CMatrixX<Scalar>& m, Scalar tol = Scalar(kHermitianTol)) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_hermitian: matrix is not square");
  if (!is_hermitian(m, tol)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  // Symmetrise so the solver sees an exactly Hermitian input.
  const CMatrixX<Scalar> h = (m + m.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<CMatrixX<Scalar>> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");

  const Eigen::Index n = h.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return solver.eigenvalues()(a) > solver.eigenvalues()(b);
  });
  HermitianEigen<Scalar> out{RVectorX<Scalar>(n), CMatrixX<Scalar>(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

/// Inverse square root of a PSD matrix restricted to its support.
///
/// Eigenvalues at or below `tol` are treated as kernel and mapped to zero, so
/// the result R satisfies R*m*R = projector onto supp(m). Throws
/// std::domain_error if any eigenvalue is below -tol.
template <typename Scalar>
CMatrixX<Scalar> psd_inv_sqrt(const CMatrixX<Scalar>& m, Scalar tol = Scalar(kKernelTol)) {
  const auto eig = eig_hermitian(m);
  const Eigen::Index n = m.rows();
  RVectorX<Scalar> d(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar lam = eig.values(k);
    if (lam < -tol) throw std::domain_error("psd_inv_sqrt: matrix is not positive semidefinite");
    d(k) = lam > tol ? Scalar(1) / std::sqrt(lam) : Scalar(0);
  }
  return eig.vectors * d.template cast<std::complex<Scalar>>().asDiagonal() * eig.vectors.adjoint();
}

/// Projector onto the eigenspace of `m` with eigenvalue above `tol`.
template <typename Scalar>
CMatrixX<Scalar> support_projector(const CMatrixX<Scalar>& m, Scalar tol = Scalar(kKernelTol)) {
  const auto eig = eig_hermitian(m);
  CMatrixX<Scalar> p = CMatrixX<Scalar>::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    if (eig.values(k) > tol) p += outer<Scalar>(eig.vectors.col(k));
  }
  return p;
}

/// Rotates `v` by a global phase so its first entry with modulus above `tol`
/// is real and non-negative.
template <typename Scalar>
CVectorX<Scalar> fix_global_phase(CVectorX<Scalar> v, Scalar tol = Scalar(1e-14)) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Scalar mag = std::abs(v(i));
    if (mag > tol) {
      v *= std::conj(v(i)) / mag;
      v(i) = std::complex<Scalar>(mag, Scalar(0));
      break;
    }
  }
  return v;
}

/// min over phases theta of max_i |a_i - e^{i theta} b_i|, evaluated at the
/// phase that aligns <b|a>.
template <typename Scalar>
Scalar phase_free_distance(const CVectorX<Scalar>& a, const CVectorX<Scalar>& b) {
  const std::complex<Scalar> ov = b.dot(a);
  const std::complex<Scalar> phase = std::abs(ov) > Scalar(0) ? ov / std::abs(ov) : std::complex<Scalar>(1);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

template <typename Scalar>
CVectorX<Scalar> basis_vector(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw std::out_of_range("basis_vector: index out of range");
  CVectorX<Scalar> v = CVectorX<Scalar>::Zero(dim);
  v(k) = std::complex<Scalar>(1);
  return v;
}

inline CVector basis(Eigen::Index dim, Eigen::Index k) { return basis_vector<double>(dim, k); }

/// Real amplitudes to a complex vector.
inline CVector cvec(std::initializer_list<double> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (double a : amps) v(i++) = Complex(a, 0.0);
  return v;
}

template <typename Scalar>
Scalar max_imag(const CMatrixX<Scalar>& m) {
  if (m.size() == 0) return Scalar(0);
  return m.imag().cwiseAbs().maxCoeff();
}

}  // namespace trinecode::qmath
