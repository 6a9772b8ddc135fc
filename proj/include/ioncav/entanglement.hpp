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
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "ioncav/photon.hpp"

namespace ioncav {

/// Initial-state family for the cross-Kerr entanglement dynamics.
enum class InitialCase {
  AllCoherent,    // ions and field coherent          (case A)
  SqueezedField,  // coherent ions, squeezed field    (case B)
  SqueezedIons,   // squeezed ions, coherent field    (case C)
};

/// Parameters of one entanglement-dynamics run. Couplings lambda_j and times
/// are in units of lambda_1 and 1/lambda_1.
struct CaseSpec {
  InitialCase kind = InitialCase::AllCoherent;
  std::vector<double> lambdas;     // per-ion cross-Kerr rates, lambda_j > 0
  std::vector<double> ion_params;  // alpha_j (A, B) or r_j (C)
  double field_param = 1.0;        // alpha_0 (A, C) or r_f (B)

  /// Series window for the pair sums; 0 auto-extends each distribution until
  /// its weights drop below 1e-14.
  int n_max_sum = 0;

  /// Renormalize the windowed distributions and evaluate every dephasing
  /// factor from the same windows. This makes the closed forms match a
  /// brute-force evolution truncated at n_max_sum to rounding accuracy.
  bool renormalize_window = false;

  int ion_count() const { return static_cast<int>(lambdas.size()); }

  void validate() const {
    if (lambdas.empty()) throw std::invalid_argument("CaseSpec: no ions");
    if (ion_params.size() != lambdas.size())
      throw std::invalid_argument("CaseSpec: ion_params size mismatch");
    for (double l : lambdas)
      if (!(l > 0.0) || !std::isfinite(l))
        throw std::invalid_argument("CaseSpec: lambda_j must be positive and finite");
    for (double p : ion_params)
      if (!(p >= 0.0) || !std::isfinite(p))
        throw std::invalid_argument("CaseSpec: ion parameters must be >= 0 and finite");
    if (!(field_param >= 0.0) || !std::isfinite(field_param))
      throw std::invalid_argument("CaseSpec: field parameter must be >= 0 and finite");
    if (n_max_sum < 0) throw std::invalid_argument("CaseSpec: n_max_sum < 0");
  }
};

namespace detail {

/// |<e^{i theta n}>|^2 for a coherent state of amplitude a.
inline double coherent_char_sq(double a, double theta) {
  return std::exp(-2.0 * a * a * (1.0 - std::cos(theta)));
}

/// |<e^{i theta n}>|^2 for a squeezed vacuum of modulus r, from the photon
/// number generating function (cosh^2 r - z^2 sinh^2 r)^{-1/2} at z = e^{i theta}.
inline double squeezed_char_sq(double r, double theta) {
  const double c2 = std::cosh(r) * std::cosh(r);
  const double s2 = std::sinh(r) * std::sinh(r);
  const double re = c2 - s2 * std::cos(2.0 * theta);
  const double im = s2 * std::sin(2.0 * theta);
  return 1.0 / std::sqrt(re * re + im * im);
}

/// |sum_n p_n e^{i theta n}|^2 over an explicit window.
inline double windowed_char_sq(const std::vector<double>& p, double theta) {
  double re = 0.0, im = 0.0;
  for (size_t n = 0; n < p.size(); ++n) {
    if (p[n] == 0.0) continue;
    re += p[n] * std::cos(theta * double(n));
    im += p[n] * std::sin(theta * double(n));
  }
  return re * re + im * im;
}

/// W_d = sum_n p_n p_{n+d} for d = 0..M.
inline std::vector<double> pair_weights(const std::vector<double>& p) {
  const size_t m = p.size();
  std::vector<double> w(m, 0.0);
  for (size_t d = 0; d < m; ++d) {
    double acc = 0.0;
    for (size_t n = 0; n + d < m; ++n) acc += p[n] * p[n + d];
    w[d] = acc;
  }
  return w;
}

}  // namespace detail

/// Closed-form linear entropies of the cross-Kerr dynamics, with the pair
/// sums over photon distributions reduced to occupation-difference weights.
class CaseEvaluator {
 public:
  explicit CaseEvaluator(CaseSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const int n = spec_.ion_count();

    const PhotonKind field_kind =
        (spec_.kind == InitialCase::SqueezedField) ? PhotonKind::SqueezedVacuum
                                                   : PhotonKind::Coherent;
    field_p_ = windowed(field_kind, spec_.field_param);
    field_w_ = detail::pair_weights(field_p_);
    tail_ += 2.0 * window_tail(field_kind, spec_.field_param, field_p_);

    if (spec_.kind == InitialCase::SqueezedIons) {
      ion_p_.resize(size_t(n));
      ion_w_.resize(size_t(n));
      for (int j = 0; j < n; ++j) {
        ion_p_[size_t(j)] = windowed(PhotonKind::SqueezedVacuum, spec_.ion_params[size_t(j)]);
        ion_w_[size_t(j)] = detail::pair_weights(ion_p_[size_t(j)]);
        tail_ += 2.0 * window_tail(PhotonKind::SqueezedVacuum, spec_.ion_params[size_t(j)],
                                   ion_p_[size_t(j)]);
      }
    } else if (spec_.renormalize_window) {
      ion_p_.resize(size_t(n));
      for (int j = 0; j < n; ++j)
        ion_p_[size_t(j)] = windowed(PhotonKind::Coherent, spec_.ion_params[size_t(j)]);
    }
  }

  const CaseSpec& spec() const { return spec_; }

  /// Upper bound on the series-truncation error of any entropy value.
  double tail_bound() const { return tail_; }

  /// Linear entropy of the field at time t (units of 1/lambda_1).
  double field_entropy(double t) const {
    double acc = 0.0;
    for (size_t d = 0; d < field_w_.size(); ++d) {
      if (field_w_[d] == 0.0) continue;
      double factor = 1.0;
      for (int j = 0; j < spec_.ion_count(); ++j) {
        factor *= ion_char_sq(j, spec_.lambdas[size_t(j)] * double(d) * t);
        if (factor == 0.0) break;
      }
      acc += (d == 0 ? 1.0 : 2.0) * field_w_[d] * factor;
    }
    return 1.0 - acc;
  }

  /// Linear entropy of ion k (1-based) at time t.
  double ion_entropy(int k, double t) const {
    if (k < 1 || k > spec_.ion_count())
      throw std::out_of_range("ion_entropy: ion index out of range");
    const double lam = spec_.lambdas[size_t(k - 1)];
    if (spec_.kind == InitialCase::SqueezedIons) {
      // Pair sum over ion k's own distribution, dephased by the coherent field.
      const auto& w = ion_w_[size_t(k - 1)];
      double acc = 0.0;
      for (size_t d = 0; d < w.size(); ++d) {
        if (w[d] == 0.0) continue;
        acc += (d == 0 ? 1.0 : 2.0) * w[d] * field_char_sq(lam * double(d) * t);
      }
      return 1.0 - acc;
    }
    // Pair sum over the field distribution, dephased by ion k's coherent state.
    const double a = spec_.ion_params[size_t(k - 1)];
    double acc = 0.0;
    for (size_t d = 0; d < field_w_.size(); ++d) {
      if (field_w_[d] == 0.0) continue;
      const double theta = lam * double(d) * t;
      const double factor = spec_.renormalize_window
                                ? detail::windowed_char_sq(ion_p_[size_t(k - 1)], theta)
                                : detail::coherent_char_sq(a, theta);
      acc += (d == 0 ? 1.0 : 2.0) * field_w_[d] * factor;
    }
    return 1.0 - acc;
  }

  /// Mean of the N+1 single-subsystem linear entropies (the d -> infinity
  /// prefactor of the global entanglement measure is 1).
  double global_entanglement(double t) const {
    double acc = field_entropy(t);
    for (int k = 1; k <= spec_.ion_count(); ++k) acc += ion_entropy(k, t);
    return acc / double(spec_.ion_count() + 1);
  }

 private:
  std::vector<double> windowed(PhotonKind kind, double parameter) const {
    const int window = (spec_.n_max_sum > 0) ? spec_.n_max_sum
                                             : photon_auto_window(kind, parameter);
    std::vector<double> p = photon_distribution(kind, parameter, window).probabilities;
    if (spec_.renormalize_window) {
      double s = 0.0;
      for (double v : p) s += v;
      for (double& v : p) v /= s;
    }
    return p;
  }

  double window_tail(PhotonKind, double, const std::vector<double>& p) const {
    if (spec_.renormalize_window) return 0.0;
    double s = 0.0;
    for (double v : p) s += v;
    return s < 1.0 ? 1.0 - s : 0.0;
  }

  /// Dephasing factor contributed by ion j at phase theta (field entropy).
  double ion_char_sq(int j, double theta) const {
    if (spec_.kind == InitialCase::SqueezedIons) {
      if (spec_.renormalize_window)
        return detail::windowed_char_sq(ion_p_[size_t(j)], theta);
      return detail::squeezed_char_sq(spec_.ion_params[size_t(j)], theta);
    }
    if (spec_.renormalize_window)
      return detail::windowed_char_sq(ion_p_[size_t(j)], theta);
    return detail::coherent_char_sq(spec_.ion_params[size_t(j)], theta);
  }

  /// Dephasing factor contributed by the field at phase theta (ion entropy,
  /// squeezed-ion case).
  double field_char_sq(double theta) const {
    if (spec_.renormalize_window) return detail::windowed_char_sq(field_p_, theta);
    return detail::coherent_char_sq(spec_.field_param, theta);
  }

  CaseSpec spec_;
  std::vector<double> field_p_;
  std::vector<double> field_w_;
  std::vector<std::vector<double>> ion_p_;
  std::vector<std::vector<double>> ion_w_;
  double tail_ = 0.0;
};

inline double field_entropy(const CaseSpec& spec, double t) {
  return CaseEvaluator(spec).field_entropy(t);
}

inline double ion_entropy(const CaseSpec& spec, int k, double t) {
  return CaseEvaluator(spec).ion_entropy(k, t);
}

inline double global_entanglement(const CaseSpec& spec, double t) {
  return CaseEvaluator(spec).global_entanglement(t);
}

/// Field, per-ion and global entropy curves over a time grid.
struct EntropySeries {
  std::vector<double> times;
  std::vector<double> field;
  std::vector<std::vector<double>> ions;  // ions[k-1][i]
  std::vector<double> global;
  double tail_bound = 0.0;
  bool tail_warning = false;
};

inline EntropySeries entropy_series(const CaseSpec& spec, std::span<const double> times) {
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("entropy_series: time grid must be strictly increasing");
  const CaseEvaluator eval(spec);
  EntropySeries s;
  s.times.assign(times.begin(), times.end());
  s.tail_bound = eval.tail_bound();
  s.tail_warning = s.tail_bound > 1e-10;
  s.field.reserve(times.size());
  s.global.reserve(times.size());
  s.ions.assign(size_t(spec.ion_count()), {});
  for (auto& v : s.ions) v.reserve(times.size());
  for (double t : times) {
    double mean = 0.0;
    const double f = eval.field_entropy(t);
    s.field.push_back(f);
    mean += f;
    for (int k = 1; k <= spec.ion_count(); ++k) {
      const double e = eval.ion_entropy(k, t);
      s.ions[size_t(k - 1)].push_back(e);
      mean += e;
    }
    s.global.push_back(mean / double(spec.ion_count() + 1));
  }
  return s;
}

}  // namespace ioncav
