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
#include <vector>

#include "ioncav/config.hpp"
#include "ioncav/errors.hpp"
#include "ioncav/hamiltonian.hpp"
#include "ioncav/operators.hpp"

namespace ioncav {

enum class EvolveMethod { ExactDiagonalization, DiagonalPhase, DipoleBlock };

struct EvolutionResult {
  std::vector<double> times;
  std::vector<StateVector> states;
  EvolveMethod method = EvolveMethod::ExactDiagonalization;
};

/// psi(t) = e^{-iHt} psi0 through one spectral decomposition shared by all
/// time points. Optionally returns the interaction-picture state
/// e^{+i H_free t} psi(t) when a diagonal free part is supplied.
inline EvolutionResult evolve_exact(const LabeledOperator& h, const StateVector& psi0,
                                    std::span<const double> times,
                                    const LabeledOperator* strip_free = nullptr,
                                    int64_t dimension_cap = 4096) {
  if (!h.hermitian()) throw std::invalid_argument("evolve_exact: Hamiltonian not Hermitian");
  if (!(h.basis() == psi0.basis())) throw std::invalid_argument("evolve_exact: basis mismatch");
  if (h.dim() > dimension_cap)
    throw resource_error("evolve_exact: dimension exceeds cap");
  Eigen::VectorXd free_diag;
  if (strip_free) {
    if (!(strip_free->basis() == h.basis()))
      throw std::invalid_argument("evolve_exact: free-part basis mismatch");
    if (!strip_free->is_diagonal(1e-14))
      throw std::invalid_argument("evolve_exact: free part must be diagonal");
    free_diag = strip_free->diagonal_entries().real();
  }

  EvolutionResult result;
  result.method = EvolveMethod::ExactDiagonalization;
  result.times.assign(times.begin(), times.end());
  result.states.reserve(times.size());

  if (h.diag_storage()) {
    const Eigen::VectorXd d = h.diagonal().real();
    for (double t : times) {
      Eigen::VectorXcd amps = psi0.amplitudes();
      for (int64_t k = 0; k < amps.size(); ++k) {
        double phase = -d(k) * t;
        if (strip_free) phase += free_diag(k) * t;
        amps(k) *= std::polar(1.0, phase);
      }
      result.states.emplace_back(psi0.basis(), std::move(amps), psi0.truncation_deficit());
    }
    return result;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("evolve_exact: eigendecomposition failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  const Eigen::MatrixXcd& v = es.eigenvectors();
  const Eigen::VectorXcd coeffs = v.adjoint() * psi0.amplitudes();

  for (double t : times) {
    Eigen::VectorXcd rotated(coeffs.size());
    for (int64_t k = 0; k < coeffs.size(); ++k)
      rotated(k) = coeffs(k) * std::polar(1.0, -ev(k) * t);
    Eigen::VectorXcd amps = v * rotated;
    if (strip_free)
      for (int64_t k = 0; k < amps.size(); ++k)
        amps(k) *= std::polar(1.0, free_diag(k) * t);
    result.states.emplace_back(psi0.basis(), std::move(amps), psi0.truncation_deficit());
  }
  return result;
}

/// Phase evolution for a strictly diagonal Hamiltonian; cost is linear in the
/// dimension per time point.
inline EvolutionResult evolve_diagonal(const LabeledOperator& h, const StateVector& psi0,
                                       std::span<const double> times) {
  if (!(h.basis() == psi0.basis()))
    throw std::invalid_argument("evolve_diagonal: basis mismatch");
  if (!h.is_diagonal())
    throw std::invalid_argument("evolve_diagonal: off-diagonal element detected");
  const Eigen::VectorXd d = h.diagonal_entries().real();

  EvolutionResult result;
  result.method = EvolveMethod::DiagonalPhase;
  result.times.assign(times.begin(), times.end());
  result.states.reserve(times.size());
  for (double t : times) {
    Eigen::VectorXcd amps = psi0.amplitudes();
    for (int64_t k = 0; k < amps.size(); ++k) amps(k) *= std::polar(1.0, -d(k) * t);
    result.states.emplace_back(psi0.basis(), std::move(amps), psi0.truncation_deficit());
  }
  return result;
}

enum class OmegaMode { ExactF, LambDicke };

namespace detail {

/// Exchange rate Omega(n1, n2) for the two-ion dipole evolution.
inline double dipole_rate(const SystemConfig& config, int n1, int n2, OmegaMode mode) {
  const double g1 = config.g[0], g2 = config.g[1];
  const double delta = config.delta(0);
  const double eta = config.eta[0];
  if (mode == OmegaMode::ExactF)
    return g1 * g2 / delta * coupling_factor(n1, eta) * coupling_factor(n2, eta);
  return g1 * g2 / delta * (1.0 - eta * eta * (1.0 + n1 + n2));
}

}  // namespace detail

/// Closed-form evolution under Omega(n1,n2) (sigma_1^+ sigma_2^- + h.c.) for
/// two identical ions. The basis must start [qubit, qubit, mode, mode]; any
/// further subsystems ride along as spectators.
///
/// The initial state must lie in the single-excitation electronic sector
/// spanned by |e1 g2> and |g1 e2>; each joint motional Fock component then
/// rotates with cos(Omega t) and -i sin(Omega t) exactly.
inline EvolutionResult evolve_dipole_two_ion(const SystemConfig& config,
                                             const StateVector& psi0,
                                             std::span<const double> times,
                                             OmegaMode mode) {
  config.validate();
  if (config.ion_count != 2)
    throw std::invalid_argument("evolve_dipole_two_ion: needs ion_count == 2");
  if (std::abs(config.delta(0) - config.delta(1)) > 1e-12 * std::abs(config.delta(0)))
    throw std::invalid_argument("evolve_dipole_two_ion: detunings must be equal");
  if (std::abs(config.eta[0] - config.eta[1]) > 1e-12)
    throw std::invalid_argument("evolve_dipole_two_ion: Lamb-Dicke parameters must be equal");

  const BasisDescriptor& basis = psi0.basis();
  if (basis.subsystem_count() < 4 || basis.subsystem(0).kind != SubsystemKind::Qubit ||
      basis.subsystem(1).kind != SubsystemKind::Qubit ||
      basis.subsystem(2).kind != SubsystemKind::Mode ||
      basis.subsystem(3).kind != SubsystemKind::Mode)
    throw std::invalid_argument("evolve_dipole_two_ion: basis must start [qubit, qubit, mode, mode]");

  const int d1 = basis.subsystem(2).dim;
  const int d2 = basis.subsystem(3).dim;
  int64_t rest = 1;
  for (int s = 4; s < basis.subsystem_count(); ++s) rest *= basis.subsystem(s).dim;
  const int64_t block = int64_t(d1) * d2 * rest;  // amplitudes per electronic config

  const auto& a0 = psi0.amplitudes();
  // Electronic configs in flat order: (g,g), (g,e), (e,g), (e,e).
  double outside = 0.0;
  outside += a0.segment(0, block).squaredNorm();          // |g1 g2>
  outside += a0.segment(3 * block, block).squaredNorm();  // |e1 e2>
  if (outside > 1e-24)
    throw std::invalid_argument(
        "evolve_dipole_two_ion: initial state outside the {e1 g2, g1 e2} sector");

  Eigen::VectorXd omega(int64_t(d1) * d2);
  for (int n1 = 0; n1 < d1; ++n1)
    for (int n2 = 0; n2 < d2; ++n2)
      omega(int64_t(n1) * d2 + n2) = detail::dipole_rate(config, n1, n2, mode);

  EvolutionResult result;
  result.method = EvolveMethod::DipoleBlock;
  result.times.assign(times.begin(), times.end());
  result.states.reserve(times.size());
  const cplx mi(0.0, -1.0);
  for (double t : times) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(a0.size());
    for (int64_t nm = 0; nm < int64_t(d1) * d2; ++nm) {
      const double c = std::cos(omega(nm) * t);
      const double s = std::sin(omega(nm) * t);
      for (int64_t r = 0; r < rest; ++r) {
        const int64_t i_eg = 2 * block + nm * rest + r;
        const int64_t i_ge = 1 * block + nm * rest + r;
        const cplx eg = a0(i_eg), ge = a0(i_ge);
        amps(i_eg) = c * eg + mi * s * ge;
        amps(i_ge) = c * ge + mi * s * eg;
      }
    }
    result.states.emplace_back(basis, std::move(amps), psi0.truncation_deficit());
  }
  return result;
}

}  // namespace ioncav
