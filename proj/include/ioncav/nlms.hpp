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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "ioncav/density.hpp"
#include "ioncav/dynamics.hpp"
#include "ioncav/state.hpp"

namespace ioncav {

/// Derived parameters of the two-ion entangled-cat generation protocol.
///
/// The Lamb-Dicke parameter eta = sqrt(1/(1+2k)) makes the accumulated Rabi
/// angle at the interaction time a multiple of pi/2, so the post-selected
/// branches land exactly on the even/odd two-mode cat pair. Integer k sends
/// the |e1 g2> outcome to the even-parity target; half-integer k swaps the
/// assignments.
struct ProtocolParams {
  cplx alpha;            // initial coherent amplitude of both motional modes
  double k = 0.0;        // positive integer or half-integer
  double eta = 0.0;      // derived sqrt(1/(1+2k))
  double g1 = 1.0, g2 = 1.0;
  double delta = 0.0;
  double t_interaction = 0.0;  // pi delta / (2 eta^2 g1 g2)
  OmegaMode mode = OmegaMode::LambDicke;
  bool lamb_dicke_warning = false;  // eta above 0.3, expansion marginal
};

inline ProtocolParams derive_params(double k, cplx alpha, double g1, double g2,
                                    double delta, OmegaMode mode = OmegaMode::LambDicke) {
  if (!(k > 0.0)) throw std::invalid_argument("derive_params: k must be > 0");
  const double twice = 2.0 * k;
  if (std::abs(twice - std::round(twice)) > 1e-9)
    throw std::invalid_argument("derive_params: k must be integer or half-integer");
  if (g1 <= 0.0 || g2 <= 0.0) throw std::invalid_argument("derive_params: couplings must be > 0");
  if (delta == 0.0) throw std::invalid_argument("derive_params: delta must be nonzero");

  ProtocolParams p;
  p.alpha = alpha;
  p.k = k;
  p.eta = std::sqrt(1.0 / (1.0 + 2.0 * k));
  if (p.eta > 0.5)
    throw std::invalid_argument("derive_params: k too small, eta above 0.5 leaves the Lamb-Dicke regime");
  p.lamb_dicke_warning = p.eta > 0.3;
  p.g1 = g1;
  p.g2 = g2;
  p.delta = delta;
  p.t_interaction = std::numbers::pi * delta / (2.0 * p.eta * p.eta * g1 * g2);
  p.mode = mode;
  return p;
}

/// Default motional truncation for the protocol; cat tails need more room
/// than a bare coherent state.
inline int default_protocol_n_max(cplx alpha) {
  const double a = std::abs(alpha);
  return static_cast<int>(std::ceil(a * a + 8.0 * a + 10.0));
}

/// Two-mode target states: the even and odd joint-parity combinations
/// (|alpha,alpha> ± |-alpha,-alpha>) / N, normalized numerically.
inline std::pair<StateVector, StateVector> target_states(cplx alpha, int n_max) {
  if (alpha == cplx(0.0, 0.0))
    throw std::domain_error("target_states: degenerate at alpha = 0");
  const StateVector plus = make_coherent(alpha, n_max);
  const StateVector minus = make_coherent(-alpha, n_max);
  const StateVector pp = tensor({plus, plus});
  const StateVector mm = tensor({minus, minus});
  StateVector psi(pp.basis(), pp.amplitudes() + mm.amplitudes(), pp.truncation_deficit());
  StateVector phi(pp.basis(), pp.amplitudes() - mm.amplitudes(), pp.truncation_deficit());
  psi.normalize();
  phi.normalize();
  return {std::move(psi), std::move(phi)};
}

/// Outcome of one protocol run: electronic branch probabilities, the
/// post-selected motional states, their fidelities against both targets,
/// and joint-parity expectations.
struct ProtocolOutcome {
  double p_e1g2;
  double p_g1e2;
  StateVector branch_e1g2;
  StateVector branch_g1e2;
  double fid_e1g2_psi;
  double fid_e1g2_phi;
  double fid_g1e2_psi;
  double fid_g1e2_phi;
  double parity_e1g2;
  double parity_g1e2;
  double truncation_deficit;
};

/// Evolve |e1, alpha, g2, alpha> to the interaction time, post-select each
/// electronic outcome and compare against the cat targets (taken at the
/// rotated amplitude i alpha reached by the evolution).
inline ProtocolOutcome run_protocol(const ProtocolParams& params, int n_max = -1) {
  if (n_max < 0) n_max = default_protocol_n_max(params.alpha);

  const StateVector coh = make_coherent(params.alpha, n_max);
  const double kept = 1.0 - coh.truncation_deficit();
  const double deficit = 1.0 - kept * kept;
  if (deficit > 1e-6)
    throw truncation_error("run_protocol: truncation deficit above 1e-6, increase n_max");

  SystemConfig config = SystemConfig::uniform(2, 1.0, params.delta, 20.0 * params.delta,
                                              params.eta, n_max, 1);
  config.g = {params.g1, params.g2};

  const StateVector psi0 = tensor({make_qubit(true), make_qubit(false), coh, coh});
  const double times[1] = {params.t_interaction};
  const EvolutionResult evo = evolve_dipole_two_ion(config, psi0, times, params.mode);
  const StateVector& final_state = evo.states.front();

  // Flat layout (q1, q2, n1, n2): electronic blocks of (n_max+1)^2 amplitudes.
  const int64_t block = int64_t(n_max + 1) * (n_max + 1);
  const BasisDescriptor two_modes({mode_subsystem(n_max), mode_subsystem(n_max)});
  Eigen::VectorXcd eg = final_state.amplitudes().segment(2 * block, block);
  Eigen::VectorXcd ge = final_state.amplitudes().segment(1 * block, block);
  const double p_eg = eg.squaredNorm();
  const double p_ge = ge.squaredNorm();

  StateVector branch_eg(two_modes, std::move(eg), deficit);
  StateVector branch_ge(two_modes, std::move(ge), deficit);
  branch_eg.normalize();
  branch_ge.normalize();

  const cplx rotated = params.alpha * cplx(0.0, 1.0);
  const auto [psi_plus, phi_plus] = target_states(rotated, n_max);

  return ProtocolOutcome{
      p_eg,
      p_ge,
      branch_eg,
      branch_ge,
      fidelity(branch_eg, psi_plus),
      fidelity(branch_eg, phi_plus),
      fidelity(branch_ge, psi_plus),
      fidelity(branch_ge, phi_plus),
      parity_expectation(branch_eg, {0, 1}),
      parity_expectation(branch_ge, {0, 1}),
      deficit};
}

}  // namespace ioncav
