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
#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "ioncav/state.hpp"

namespace ioncav {

/// Density operator on the basis of the kept subsystems.
class DensityMatrix {
 public:
  DensityMatrix(BasisDescriptor basis, Eigen::MatrixXcd matrix)
      : basis_(std::move(basis)), mat_(std::move(matrix)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() != basis_.dim())
      throw std::invalid_argument("DensityMatrix: matrix does not match basis");
  }

  const BasisDescriptor& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  int64_t dim() const { return mat_.rows(); }

  double trace() const { return mat_.trace().real(); }
  double hermiticity_defect() const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  }

 private:
  BasisDescriptor basis_;
  Eigen::MatrixXcd mat_;
};

inline DensityMatrix to_density(const StateVector& psi) {
  return DensityMatrix(psi.basis(), psi.amplitudes() * psi.amplitudes().adjoint());
}

namespace detail {

inline void check_keep(const BasisDescriptor& basis, std::span<const int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= basis.subsystem_count())
      throw std::out_of_range("partial_trace: subsystem index out of range");
    for (size_t j = i + 1; j < keep.size(); ++j)
      if (keep[i] == keep[j]) throw std::invalid_argument("partial_trace: duplicate keep index");
  }
}

// Flat index split into (kept part, traced part) for a given keep list.
struct IndexSplit {
  std::vector<int64_t> keep_of_flat;
  std::vector<int64_t> rest_of_flat;
  int64_t keep_dim = 1;
  int64_t rest_dim = 1;
};

inline IndexSplit split_indices(const BasisDescriptor& basis, std::span<const int> keep) {
  IndexSplit s;
  const int ns = basis.subsystem_count();
  std::vector<bool> kept(size_t(ns), false);
  for (int k : keep) kept[size_t(k)] = true;
  for (int i = 0; i < ns; ++i)
    (kept[size_t(i)] ? s.keep_dim : s.rest_dim) *= basis.subsystem(i).dim;

  // keep digits are composed in the order given by `keep`, rest digits in
  // ascending subsystem order.
  s.keep_of_flat.resize(size_t(basis.dim()));
  s.rest_of_flat.resize(size_t(basis.dim()));
  std::vector<int> multi(size_t(ns));
  for (int64_t f = 0; f < basis.dim(); ++f) {
    basis.multi_index(f, multi);
    int64_t ik = 0;
    for (int k : keep) ik = ik * basis.subsystem(k).dim + multi[size_t(k)];
    int64_t ir = 0;
    for (int i = 0; i < ns; ++i)
      if (!kept[size_t(i)]) ir = ir * basis.subsystem(i).dim + multi[size_t(i)];
    s.keep_of_flat[size_t(f)] = ik;
    s.rest_of_flat[size_t(f)] = ir;
  }
  return s;
}

}  // namespace detail

/// Reduced density matrix of a pure state over the kept subsystems.
inline DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep) {
  detail::check_keep(psi.basis(), keep);
  const auto split = detail::split_indices(psi.basis(), keep);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(split.keep_dim, split.rest_dim);
  for (int64_t f = 0; f < psi.dim(); ++f)
    m(split.keep_of_flat[size_t(f)], split.rest_of_flat[size_t(f)]) = psi[f];
  Eigen::MatrixXcd rho = m * m.adjoint();
  return DensityMatrix(psi.basis().subset(keep), std::move(rho));
}

/// Reduced density matrix of a density matrix over the kept subsystems.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  detail::check_keep(rho.basis(), keep);
  const auto split = detail::split_indices(rho.basis(), keep);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(split.keep_dim, split.keep_dim);
  const int64_t d = rho.dim();
  std::vector<std::vector<int64_t>> flats_by_rest(size_t(split.rest_dim));
  for (int64_t f = 0; f < d; ++f) flats_by_rest[size_t(split.rest_of_flat[size_t(f)])].push_back(f);
  for (const auto& group : flats_by_rest)
    for (int64_t fr : group)
      for (int64_t fc : group)
        out(split.keep_of_flat[size_t(fr)], split.keep_of_flat[size_t(fc)]) += rho.matrix()(fr, fc);
  return DensityMatrix(rho.basis().subset(keep), std::move(out));
}

inline DensityMatrix partial_trace(const StateVector& psi, std::initializer_list<int> keep) {
  std::vector<int> v(keep);
  return partial_trace(psi, std::span<const int>(v));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  std::vector<int> v(keep);
  return partial_trace(rho, std::span<const int>(v));
}

/// 1 - Tr rho^2. Zero iff rho is pure; bounded by 1 - 1/d.
inline double linear_entropy(const DensityMatrix& rho) {
  // Tr rho^2 = ||rho||_F^2 for Hermitian rho.
  return 1.0 - rho.matrix().squaredNorm();
}

/// Half the trace norm of the difference of two density matrices.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.basis() == b.basis()))
    throw std::invalid_argument("trace_distance: basis mismatch");
  Eigen::MatrixXcd diff = a.matrix() - b.matrix();
  diff = (diff + diff.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Overlap <psi|rho|psi>; equals fidelity for rho against a pure state.
inline double state_fidelity(const StateVector& psi, const DensityMatrix& rho) {
  if (!(psi.basis() == rho.basis()))
    throw std::invalid_argument("state_fidelity: basis mismatch");
  return (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0).real();
}

}  // namespace ioncav
