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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ioncav/basis.hpp"

namespace ioncav {

/// Physical parameters of the N-ion/cavity system plus numerical truncations.
///
/// All frequencies are in units of g_1 and times in units of 1/g_1. The
/// detunings Delta_i = omega_i - omega_c are always derived, never stored.
struct SystemConfig {
  int ion_count = 1;
  std::vector<double> nu;     // trap frequencies, one per ion
  std::vector<double> omega;  // ion transition frequencies
  std::vector<double> g;      // ion-field couplings
  std::vector<double> eta;    // Lamb-Dicke parameters
  double omega_c = 0.0;       // cavity frequency

  int n_max_motion = 16;      // per-mode Fock truncation
  int n_max_field = 16;       // cavity-mode Fock truncation
  int64_t dimension_cap = 4096;           // dense-operator guard
  int64_t dimension_cap_diagonal = 4194304;  // diagonal-operator guard

  double delta(int i) const { return omega.at(size_t(i)) - omega_c; }

  void validate() const {
    if (ion_count < 1) throw std::invalid_argument("SystemConfig: ion_count < 1");
    const size_t n = size_t(ion_count);
    if (nu.size() != n || omega.size() != n || g.size() != n || eta.size() != n)
      throw std::invalid_argument("SystemConfig: per-ion arrays must have ion_count entries");
    for (int i = 0; i < ion_count; ++i) {
      if (g[size_t(i)] <= 0) throw std::invalid_argument("SystemConfig: g must be > 0");
      if (eta[size_t(i)] < 0) throw std::invalid_argument("SystemConfig: eta must be >= 0");
      if (delta(i) == 0.0)
        throw std::invalid_argument("SystemConfig: zero detuning (dispersive model undefined)");
    }
    if (n_max_motion < 1 || n_max_field < 1)
      throw std::invalid_argument("SystemConfig: n_max must be >= 1");
  }

  /// Uniform cluster: every ion shares g, detuning, trap frequency and eta.
  static SystemConfig uniform(int n_ions, double g_val, double delta_val, double nu_val,
                              double eta_val, int n_max_motion_val = 16,
                              int n_max_field_val = 16) {
    SystemConfig c;
    c.ion_count = n_ions;
    c.nu.assign(size_t(n_ions), nu_val);
    c.omega.assign(size_t(n_ions), delta_val);  // omega_c = 0 => Delta = omega
    c.g.assign(size_t(n_ions), g_val);
    c.eta.assign(size_t(n_ions), eta_val);
    c.n_max_motion = n_max_motion_val;
    c.n_max_field = n_max_field_val;
    return c;
  }

  /// Basis [qubit_1..qubit_N, mode_1..mode_N, field].
  BasisDescriptor full_basis() const {
    std::vector<Subsystem> subs;
    for (int i = 0; i < ion_count; ++i) subs.push_back(qubit_subsystem());
    for (int i = 0; i < ion_count; ++i) subs.push_back(mode_subsystem(n_max_motion));
    subs.push_back(mode_subsystem(n_max_field));
    return BasisDescriptor(std::move(subs));
  }

  /// Basis [mode_1..mode_N, field] for electronic-ground-sector operators.
  BasisDescriptor motion_field_basis() const {
    std::vector<Subsystem> subs;
    for (int i = 0; i < ion_count; ++i) subs.push_back(mode_subsystem(n_max_motion));
    subs.push_back(mode_subsystem(n_max_field));
    return BasisDescriptor(std::move(subs));
  }
};

/// Per-ion electronic preparation.
struct ElectronicPrep {
  std::vector<bool> excited;  // length N; false = ground

  static ElectronicPrep all_ground(int n) { return {std::vector<bool>(size_t(n), false)}; }
};

// ---------------------------------------------------------------------------
// Dispersive-regime validation
// ---------------------------------------------------------------------------

/// Hierarchy checks nu_k >> Delta_k >> g_k plus the Lamb-Dicke condition.
/// Ratios below `soft` are warnings, below `hard` are rejections.
struct RegimeReport {
  struct IonEntry {
    double delta_over_g = 0.0;
    double nu_over_delta = 0.0;
    double eta = 0.0;
    bool soft_flag = false;  // any ratio below the soft threshold, or eta > eta_soft
    bool hard_flag = false;  // any ratio below the hard threshold
  };

  double soft_threshold = 10.0;
  double hard_threshold = 3.0;
  double eta_soft = 0.3;
  std::vector<IonEntry> ions;

  bool any_soft() const {
    for (const auto& e : ions)
      if (e.soft_flag) return true;
    return false;
  }
  bool any_hard() const {
    for (const auto& e : ions)
      if (e.hard_flag) return true;
    return false;
  }
};

/// Pure report of the parameter hierarchy; never mutates or throws on bad
/// ratios (structural validation still applies).
inline RegimeReport validate_regime(const SystemConfig& config) {
  config.validate();
  RegimeReport report;
  report.ions.resize(size_t(config.ion_count));
  for (int i = 0; i < config.ion_count; ++i) {
    auto& e = report.ions[size_t(i)];
    e.delta_over_g = std::abs(config.delta(i)) / config.g[size_t(i)];
    e.nu_over_delta = config.nu[size_t(i)] / std::abs(config.delta(i));
    e.eta = config.eta[size_t(i)];
    e.hard_flag = e.delta_over_g < report.hard_threshold || e.nu_over_delta < report.hard_threshold;
    e.soft_flag = e.delta_over_g < report.soft_threshold ||
                  e.nu_over_delta < report.soft_threshold || e.eta > report.eta_soft;
  }
  return report;
}

}  // namespace ioncav
