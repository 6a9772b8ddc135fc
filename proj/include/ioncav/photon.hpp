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
#include <stdexcept>
#include <vector>

namespace ioncav {

enum class PhotonKind { Coherent, SqueezedVacuum };

/// Fock occupation probabilities P_0..P_nmax of a coherent state (parameter
/// |alpha|) or a squeezed vacuum (parameter r). Probabilities are not
/// renormalized; 1 - sum is the truncation tail.
struct PhotonDistribution {
  PhotonKind kind = PhotonKind::Coherent;
  double parameter = 0.0;
  std::vector<double> probabilities;

  double tail() const {
    double s = 0.0;
    for (double p : probabilities) s += p;
    return s < 1.0 ? 1.0 - s : 0.0;
  }
};

/// P_n of |alpha|: e^{-a^2} a^{2n} / n!, by upward ratio recurrence.
inline PhotonDistribution photon_distribution_coherent(double alpha, int n_max) {
  if (alpha < 0) throw std::invalid_argument("photon_distribution: negative parameter");
  if (n_max < 0) throw std::invalid_argument("photon_distribution: n_max < 0");
  PhotonDistribution d;
  d.kind = PhotonKind::Coherent;
  d.parameter = alpha;
  d.probabilities.resize(size_t(n_max) + 1);
  const double a2 = alpha * alpha;
  double p = std::exp(-a2);
  for (int n = 0; n <= n_max; ++n) {
    d.probabilities[size_t(n)] = p;
    p *= a2 / double(n + 1);
  }
  return d;
}

/// P_n of a squeezed vacuum with modulus r: zero at odd n, and at even n
/// (1/cosh r) n!/[((n/2)!)^2] (tanh r / 2)^n, by upward ratio recurrence.
inline PhotonDistribution photon_distribution_squeezed(double r, int n_max) {
  if (r < 0) throw std::invalid_argument("photon_distribution: negative parameter");
  if (n_max < 0) throw std::invalid_argument("photon_distribution: n_max < 0");
  PhotonDistribution d;
  d.kind = PhotonKind::SqueezedVacuum;
  d.parameter = r;
  d.probabilities.assign(size_t(n_max) + 1, 0.0);
  const double t2 = std::tanh(r) * std::tanh(r);
  double p = 1.0 / std::cosh(r);
  for (int n = 0; n <= n_max; n += 2) {
    d.probabilities[size_t(n)] = p;
    p *= t2 * double(n + 1) * double(n + 2) / (4.0 * (n / 2 + 1.0) * (n / 2 + 1.0));
  }
  return d;
}

inline PhotonDistribution photon_distribution(PhotonKind kind, double parameter, int n_max) {
  return kind == PhotonKind::Coherent ? photon_distribution_coherent(parameter, n_max)
                                      : photon_distribution_squeezed(parameter, n_max);
}

/// Smallest window whose excess probabilities fall below 1e-14.
inline int photon_auto_window(PhotonKind kind, double parameter, int hard_cap = 4096) {
  const PhotonDistribution probe = photon_distribution(kind, parameter, hard_cap);
  int last = 0;
  for (int n = 0; n <= hard_cap; ++n)
    if (probe.probabilities[size_t(n)] >= 1e-14) last = n;
  return std::max(last, 2);
}

}  // namespace ioncav
