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
#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "ioncav/basis.hpp"

namespace ioncav {

using cplx = std::complex<double>;

/// Pure state on a labeled tensor-product basis.
///
/// Constructors renormalize after Fock truncation and record the dropped
/// probability weight in truncation_deficit(); no other operation ever
/// renormalizes silently.
class StateVector {
 public:
  StateVector(BasisDescriptor basis, Eigen::VectorXcd amplitudes, double deficit = 0.0)
      : basis_(std::move(basis)), amps_(std::move(amplitudes)), deficit_(deficit) {
    if (amps_.size() != basis_.dim())
      throw std::invalid_argument("StateVector: amplitude length does not match basis");
  }

  const BasisDescriptor& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  int64_t dim() const { return amps_.size(); }

  cplx operator[](int64_t i) const { return amps_(i); }
  cplx at(std::span<const int> multi) const { return amps_(basis_.flat_index(multi)); }

  double norm() const { return amps_.norm(); }

  void normalize() {
    const double n = amps_.norm();
    if (n == 0.0) throw std::domain_error("StateVector::normalize: zero vector");
    amps_ /= n;
  }

  /// Probability weight lost to Fock truncation before renormalization.
  double truncation_deficit() const { return deficit_; }
  void set_truncation_deficit(double d) { deficit_ = d; }

 private:
  BasisDescriptor basis_;
  Eigen::VectorXcd amps_;
  double deficit_ = 0.0;
};

inline cplx overlap(const StateVector& psi, const StateVector& phi) {
  if (!(psi.basis() == phi.basis()))
    throw std::invalid_argument("overlap: basis mismatch");
  return psi.amplitudes().dot(phi.amplitudes());  // conjugates psi
}

/// |<psi|phi>|^2.
inline double fidelity(const StateVector& psi, const StateVector& phi) {
  return std::norm(overlap(psi, phi));
}

// ---------------------------------------------------------------------------
// Single-subsystem constructors
// ---------------------------------------------------------------------------

/// Fock state |n> on a mode truncated at n_max.
inline StateVector make_fock(int n, int n_max) {
  if (n_max < 0) throw std::invalid_argument("make_fock: n_max < 0");
  if (n < 0 || n > n_max) throw std::out_of_range("make_fock: n outside [0, n_max]");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max + 1);
  v(n) = 1.0;
  return StateVector(BasisDescriptor({mode_subsystem(n_max)}), std::move(v));
}

/// Qubit basis state; index 0 is |g>, index 1 is |e>.
inline StateVector make_qubit(bool excited) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2);
  v(excited ? 1 : 0) = 1.0;
  return StateVector(BasisDescriptor({qubit_subsystem()}), std::move(v));
}

/// Recommended mode truncation for a coherent state of amplitude alpha.
inline int default_coherent_n_max(cplx alpha) {
  const double a = std::abs(alpha);
  return std::max(16, static_cast<int>(std::ceil(a * a + 6.0 * a)));
}

/// Recommended mode truncation for a squeezed vacuum of modulus r.
inline int default_squeezed_n_max(double r) {
  const double s = std::sinh(r);
  return std::max(16, static_cast<int>(std::ceil(8.0 * s * s)));
}

/// Coherent state |alpha> truncated at n_max, renormalized.
///
/// The exact Poissonian tail beyond n_max is recorded as the truncation
/// deficit. A deficit above ~1e-12 means n_max is below the recommended
/// |alpha|^2 + 6|alpha|.
inline StateVector make_coherent(cplx alpha, int n_max) {
  if (n_max < 0) throw std::invalid_argument("make_coherent: n_max < 0");
  Eigen::VectorXcd v(n_max + 1);
  const double a2 = std::norm(alpha);
  cplx c = std::exp(cplx(-a2 / 2.0, 0.0));
  for (int n = 0; n <= n_max; ++n) {
    v(n) = c;
    c *= alpha / std::sqrt(double(n + 1));
  }
  // Tail of the Poisson weights, continued past the cut until negligible.
  double p = std::exp(-a2);
  for (int n = 0; n < n_max + 1; ++n) p *= a2 / double(n + 1);
  double tail = 0.0;
  for (int n = n_max + 1; p > 1e-30 && n < 8 * n_max + 512; ++n) {
    tail += p;
    p *= a2 / double(n + 1);
  }
  StateVector s(BasisDescriptor({mode_subsystem(n_max)}), std::move(v), tail);
  s.normalize();
  return s;
}

/// Squeezed vacuum |0, xi> with xi = r e^{i phi}, truncated at n_max.
/// Only even Fock amplitudes are nonzero.
inline StateVector make_squeezed_vacuum(double r, double phi, int n_max) {
  if (n_max < 0) throw std::invalid_argument("make_squeezed_vacuum: n_max < 0");
  if (r < 0) throw std::invalid_argument("make_squeezed_vacuum: r < 0");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max + 1);
  const double th = std::tanh(r);
  const cplx step = -std::exp(cplx(0.0, phi)) * th;
  cplx c = cplx(1.0 / std::sqrt(std::cosh(r)), 0.0);
  for (int n = 0; n <= n_max; n += 2) {
    v(n) = c;
    // c_{n+2} = c_n * (-e^{i phi} tanh r) * sqrt((n+1)(n+2)) / (n+2)
    c *= step * std::sqrt(double(n + 1) * double(n + 2)) / double(n + 2);
  }
  double p = 1.0 / std::cosh(r);
  for (int n = 0; n + 2 <= n_max + 2; n += 2)
    p *= th * th * double(n + 1) * double(n + 2) / (4.0 * (n / 2 + 1.0) * (n / 2 + 1.0));
  double tail = 0.0;
  int start = (n_max % 2 == 0) ? n_max + 2 : n_max + 1;
  for (int n = start; p > 1e-30 && n < 16 * n_max + 4096; n += 2) {
    tail += p;
    p *= th * th * double(n + 1) * double(n + 2) / (4.0 * (n / 2 + 1.0) * (n / 2 + 1.0));
  }
  StateVector s(BasisDescriptor({mode_subsystem(n_max)}), std::move(v), tail);
  s.normalize();
  return s;
}

enum class CatParity { Even, Odd };

/// Normalized superposition (|alpha> ± |-alpha>), an eigenstate of the mode
/// parity with eigenvalue +1 (even) or -1 (odd).
inline StateVector make_cat(cplx alpha, CatParity parity, int n_max) {
  if (n_max < 0) throw std::invalid_argument("make_cat: n_max < 0");
  if (parity == CatParity::Odd && alpha == cplx(0.0, 0.0))
    throw std::domain_error("make_cat: odd cat at alpha = 0 is the zero vector");
  const StateVector coh = make_coherent(alpha, n_max);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max + 1);
  const int keep = (parity == CatParity::Even) ? 0 : 1;
  for (int n = 0; n <= n_max; ++n)
    if (n % 2 == keep) v(n) = coh[n];
  // Untruncated squared norm of (|a> ± |-a>)/2 restricted to one parity
  // sector: (1 ± e^{-2|a|^2}) / 2.
  const double q = std::exp(-2.0 * std::norm(alpha));
  const double exact = (parity == CatParity::Even) ? (1.0 + q) / 2.0 : (1.0 - q) / 2.0;
  const double kept = v.squaredNorm() * (1.0 - coh.truncation_deficit());
  double deficit = 1.0 - kept / exact;
  if (deficit < 0.0) deficit = 0.0;
  StateVector s(BasisDescriptor({mode_subsystem(n_max)}), std::move(v), deficit);
  s.normalize();
  return s;
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

/// Kronecker product of the factors in the given order; basis descriptors
/// concatenate, truncation deficits combine as 1 - prod(1 - d_i).
inline StateVector tensor(std::span<const StateVector> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor: no factors");
  BasisDescriptor basis = factors[0].basis();
  Eigen::VectorXcd amps = factors[0].amplitudes();
  double kept = 1.0 - factors[0].truncation_deficit();
  for (size_t f = 1; f < factors.size(); ++f) {
    const auto& next = factors[f].amplitudes();
    Eigen::VectorXcd joined(amps.size() * next.size());
    for (int64_t i = 0; i < amps.size(); ++i)
      joined.segment(i * next.size(), next.size()) = amps(i) * next;
    amps = std::move(joined);
    basis = basis.concat(factors[f].basis());
    kept *= 1.0 - factors[f].truncation_deficit();
  }
  return StateVector(std::move(basis), std::move(amps), 1.0 - kept);
}

inline StateVector tensor(std::initializer_list<StateVector> factors) {
  std::vector<StateVector> v(factors);
  return tensor(std::span<const StateVector>(v));
}

/// Expectation of the joint parity exp(i pi sum n_j) over the listed mode
/// subsystems. Real by construction.
inline double parity_expectation(const StateVector& psi, std::span<const int> modes) {
  const auto& basis = psi.basis();
  for (int m : modes)
    if (basis.subsystem(m).kind != SubsystemKind::Mode)
      throw std::invalid_argument("parity_expectation: subsystem is not a mode");
  std::vector<int> multi(size_t(basis.subsystem_count()));
  double acc = 0.0;
  for (int64_t i = 0; i < psi.dim(); ++i) {
    basis.multi_index(i, multi);
    int occ = 0;
    for (int m : modes) occ += multi[size_t(m)];
    const double sign = (occ % 2 == 0) ? 1.0 : -1.0;
    acc += sign * std::norm(psi[i]);
  }
  return acc;
}

inline double parity_expectation(const StateVector& psi, std::initializer_list<int> modes) {
  std::vector<int> v(modes);
  return parity_expectation(psi, std::span<const int>(v));
}

}  // namespace ioncav
