// Copyright 2026 The ioncav Authors
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

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ioncav/state.hpp"

namespace ioncav {

/// Operator tied to a basis descriptor, with an optional Hermiticity promise
/// checked at construction. Stored dense, or as a diagonal when the operator
/// is a function of number operators only.
class LabeledOperator {
 public:
  LabeledOperator(BasisDescriptor basis, Eigen::MatrixXcd matrix, bool hermitian)
      : basis_(std::move(basis)), mat_(std::move(matrix)), hermitian_(hermitian) {
    if (mat_.rows() != mat_.cols() || mat_.rows() != basis_.dim())
      throw std::invalid_argument("LabeledOperator: matrix does not match basis");
    if (hermitian_ && (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() >= 1e-12)
      throw std::invalid_argument("LabeledOperator: hermitian flag set on non-Hermitian matrix");
  }

  LabeledOperator(BasisDescriptor basis, Eigen::VectorXcd diagonal, bool hermitian)
      : basis_(std::move(basis)), diag_(std::move(diagonal)), diag_storage_(true),
        hermitian_(hermitian) {
    if (diag_.size() != basis_.dim())
      throw std::invalid_argument("LabeledOperator: diagonal does not match basis");
    if (hermitian_ && diag_.imag().cwiseAbs().maxCoeff() >= 1e-12)
      throw std::invalid_argument("LabeledOperator: hermitian flag set on complex diagonal");
  }

  const BasisDescriptor& basis() const { return basis_; }
  int64_t dim() const { return basis_.dim(); }
  bool hermitian() const { return hermitian_; }
  bool diag_storage() const { return diag_storage_; }

  const Eigen::MatrixXcd& matrix() const {
    if (diag_storage_) throw std::logic_error("LabeledOperator: diagonal storage, use diagonal()");
    return mat_;
  }

  const Eigen::VectorXcd& diagonal() const {
    if (!diag_storage_) throw std::logic_error("LabeledOperator: dense storage, use matrix()");
    return diag_;
  }

  /// Dense copy regardless of storage (small dimensions only).
  Eigen::MatrixXcd dense() const {
    if (!diag_storage_) return mat_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    m.diagonal() = diag_;
    return m;
  }

  /// True when every off-diagonal entry has magnitude <= tol.
  bool is_diagonal(double tol = 0.0) const {
    if (diag_storage_) return true;
    for (int64_t r = 0; r < mat_.rows(); ++r)
      for (int64_t c = 0; c < mat_.cols(); ++c)
        if (r != c && std::abs(mat_(r, c)) > tol) return false;
    return true;
  }

  /// Diagonal entries regardless of storage.
  Eigen::VectorXcd diagonal_entries() const {
    if (diag_storage_) return diag_;
    return mat_.diagonal();
  }

 private:
  BasisDescriptor basis_;
  Eigen::MatrixXcd mat_;
  Eigen::VectorXcd diag_;
  bool diag_storage_ = false;
  bool hermitian_;
};

inline StateVector apply(const LabeledOperator& op, const StateVector& psi) {
  if (!(op.basis() == psi.basis()))
    throw std::invalid_argument("apply: basis mismatch");
  if (op.diag_storage())
    return StateVector(psi.basis(), op.diagonal().cwiseProduct(psi.amplitudes()),
                       psi.truncation_deficit());
  return StateVector(psi.basis(), op.matrix() * psi.amplitudes(), psi.truncation_deficit());
}

inline cplx expectation(const LabeledOperator& op, const StateVector& psi) {
  return overlap(psi, apply(op, psi));
}

// ---------------------------------------------------------------------------
// Elementary single-subsystem matrices
// ---------------------------------------------------------------------------

namespace ops {

inline Eigen::MatrixXcd annihilation(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

inline Eigen::MatrixXcd creation(int dim) { return annihilation(dim).adjoint(); }

inline Eigen::MatrixXcd number(int dim) {
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = double(k);
  return n;
}

inline Eigen::MatrixXcd identity(int dim) { return Eigen::MatrixXcd::Identity(dim, dim); }

// Qubit ordering is {|g>, |e>}.
inline Eigen::MatrixXcd sigma_z() {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
  s(0, 0) = -1.0;
  s(1, 1) = 1.0;
  return s;
}

inline Eigen::MatrixXcd sigma_plus() {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
  s(1, 0) = 1.0;  // |e><g|
  return s;
}

inline Eigen::MatrixXcd sigma_minus() { return sigma_plus().adjoint(); }

inline Eigen::MatrixXcd excited_projector() {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
  s(1, 1) = 1.0;
  return s;
}

inline Eigen::MatrixXcd ground_projector() {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
  s(0, 0) = 1.0;
  return s;
}

}  // namespace ops

// ---------------------------------------------------------------------------
// Embedding into a tensor-product basis
// ---------------------------------------------------------------------------

/// Product of single-subsystem factors embedded into the full basis, with
/// identity on every unlisted subsystem. Each subsystem may appear at most
/// once. Assembled entry-wise, never through full-dimension matrix products.
inline Eigen::MatrixXcd embed_product(
    const BasisDescriptor& basis,
    std::span<const std::pair<int, Eigen::MatrixXcd>> factors) {
  const int ns = basis.subsystem_count();
  std::vector<const Eigen::MatrixXcd*> on(size_t(ns), nullptr);
  for (const auto& [idx, mat] : factors) {
    if (idx < 0 || idx >= ns) throw std::out_of_range("embed_product: subsystem index");
    if (mat.rows() != basis.subsystem(idx).dim || mat.cols() != mat.rows())
      throw std::invalid_argument("embed_product: factor dimension mismatch");
    if (on[size_t(idx)]) throw std::invalid_argument("embed_product: duplicate subsystem");
    on[size_t(idx)] = &mat;
  }

  const int64_t d = basis.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  std::vector<int> rm(size_t(ns)), cm(size_t(ns));
  for (int64_t r = 0; r < d; ++r) {
    basis.multi_index(r, rm);
    for (int64_t c = 0; c < d; ++c) {
      basis.multi_index(c, cm);
      cplx v = 1.0;
      bool zero = false;
      for (int s = 0; s < ns; ++s) {
        if (on[size_t(s)]) {
          v *= (*on[size_t(s)])(rm[size_t(s)], cm[size_t(s)]);
          if (v == cplx(0.0, 0.0)) { zero = true; break; }
        } else if (rm[size_t(s)] != cm[size_t(s)]) {
          zero = true;
          break;
        }
      }
      if (!zero) out(r, c) = v;
    }
  }
  return out;
}

inline Eigen::MatrixXcd embed_product(
    const BasisDescriptor& basis,
    std::initializer_list<std::pair<int, Eigen::MatrixXcd>> factors) {
  std::vector<std::pair<int, Eigen::MatrixXcd>> v(factors);
  return embed_product(basis, std::span<const std::pair<int, Eigen::MatrixXcd>>(v));
}

/// Single factor embedded with identities elsewhere.
inline Eigen::MatrixXcd embed(const BasisDescriptor& basis, int subsystem,
                              const Eigen::MatrixXcd& mat) {
  return embed_product(basis, {{subsystem, mat}});
}

}  // namespace ioncav
