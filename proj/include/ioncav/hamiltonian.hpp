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
#include <sstream>
#include <vector>

#include "ioncav/config.hpp"
#include "ioncav/errors.hpp"
#include "ioncav/operators.hpp"

namespace ioncav {

/// Diagonal matrix element <n| e^{-eta^2/2} :J_0(2 eta sqrt(n^dag n)): |n> of
/// the motional coupling nonlinearity, equal to e^{-eta^2/2} L_n(eta^2).
///
/// Evaluated through the Laguerre three-term recurrence, which stays accurate
/// for n up to several hundred where the direct alternating sum loses digits
/// to cancellation.
inline double coupling_factor(int n, double eta) {
  if (n < 0) throw std::invalid_argument("coupling_factor: n < 0");
  if (eta < 0) throw std::invalid_argument("coupling_factor: eta < 0");
  const double x = eta * eta;
  double prev = 1.0;      // L_0
  double cur = 1.0 - x;   // L_1
  if (n == 0) cur = 1.0;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return std::exp(-x / 2.0) * cur;
}

/// Values f(0..n_max) for one eta.
inline Eigen::VectorXd coupling_factor_table(int n_max, double eta) {
  Eigen::VectorXd f(n_max + 1);
  const double x = eta * eta;
  const double scale = std::exp(-x / 2.0);
  double prev = 1.0, cur = 1.0 - x;
  f(0) = scale;
  if (n_max >= 1) f(1) = scale * cur;
  for (int k = 1; k < n_max; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    f(k + 1) = scale * cur;
  }
  return f;
}

/// cos(eta (a^dag + a)) on a mode truncated at dim, computed as a matrix
/// cosine on a padded space and cropped so the boundary rows are clean.
inline Eigen::MatrixXcd cosine_position_factor(double eta, int dim, int pad = 8) {
  if (dim < 1) throw std::invalid_argument("cosine_position_factor: dim < 1");
  const int big = dim + pad;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(big, big);
  for (int n = 1; n < big; ++n) {
    x(n - 1, n) = std::sqrt(double(n));
    x(n, n - 1) = std::sqrt(double(n));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
  Eigen::VectorXd c = (eta * es.eigenvalues().array()).cos();
  Eigen::MatrixXd full = es.eigenvectors() * c.asDiagonal() * es.eigenvectors().transpose();
  Eigen::MatrixXd crop = full.topLeftCorner(dim, dim);
  crop = (crop + crop.transpose()) / 2.0;
  return crop.cast<cplx>();
}

namespace detail {

inline void guard_dense_dim(const SystemConfig& config, const BasisDescriptor& basis) {
  if (basis.dim() > config.dimension_cap) {
    std::ostringstream os;
    os << "operator dimension " << basis.dim() << " exceeds cap " << config.dimension_cap;
    throw resource_error(os.str());
  }
}

/// Free part sum_i nu_i n_i + omega_c b^dag b + sum_i omega_i sigma_z_i / 2
/// as a diagonal over the full basis [qubits, modes, field].
inline Eigen::VectorXcd free_diagonal(const SystemConfig& config,
                                      const BasisDescriptor& basis) {
  const int n = config.ion_count;
  Eigen::VectorXcd d(basis.dim());
  std::vector<int> multi(size_t(basis.subsystem_count()));
  for (int64_t i = 0; i < basis.dim(); ++i) {
    basis.multi_index(i, multi);
    double e = config.omega_c * multi[size_t(2 * n)];
    for (int k = 0; k < n; ++k) {
      e += config.omega[size_t(k)] * (multi[size_t(k)] == 1 ? 0.5 : -0.5);
      e += config.nu[size_t(k)] * multi[size_t(n + k)];
    }
    d(i) = e;
  }
  return d;
}

}  // namespace detail

/// Full Hamiltonian: free part plus sum_i g_i cos[eta_i (a_i^dag + a_i)]
/// (sigma_i^+ b + sigma_i^- b^dag) on [qubits, modes, field].
inline LabeledOperator build_full(const SystemConfig& config) {
  config.validate();
  const BasisDescriptor basis = config.full_basis();
  detail::guard_dense_dim(config, basis);
  const int n = config.ion_count;

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  h.diagonal() = detail::free_diagonal(config, basis);

  const Eigen::MatrixXcd b = ops::annihilation(config.n_max_field + 1);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXcd cosx =
        cosine_position_factor(config.eta[size_t(i)], config.n_max_motion + 1);
    Eigen::MatrixXcd e = embed_product(
        basis, {{i, ops::sigma_plus()}, {n + i, cosx}, {2 * n, b}});
    h += config.g[size_t(i)] * (e + e.adjoint()).eval();
  }
  return LabeledOperator(basis, std::move(h), /*hermitian=*/true);
}

/// Coupling nonlinearity replaced by the number-diagonal factor f(n_i),
/// valid for Delta_i << nu_i. Same basis and structure as build_full.
inline LabeledOperator build_bessel_approx(const SystemConfig& config) {
  config.validate();
  const BasisDescriptor basis = config.full_basis();
  detail::guard_dense_dim(config, basis);
  const int n = config.ion_count;

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  h.diagonal() = detail::free_diagonal(config, basis);

  const Eigen::MatrixXcd b = ops::annihilation(config.n_max_field + 1);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(config.n_max_motion + 1, config.n_max_motion + 1);
    f.diagonal() = coupling_factor_table(config.n_max_motion, config.eta[size_t(i)]).cast<cplx>();
    Eigen::MatrixXcd e = embed_product(basis, {{i, ops::sigma_plus()}, {n + i, f}, {2 * n, b}});
    h += config.g[size_t(i)] * (e + e.adjoint()).eval();
  }
  return LabeledOperator(basis, std::move(h), /*hermitian=*/true);
}

/// The three parts of the adiabatically eliminated Hamiltonian.
struct EffectiveParts {
  LabeledOperator h0;     // free part, diagonal
  LabeledOperator stark;  // motion-dependent Stark shifts, diagonal
  LabeledOperator dipole; // field-mediated dipole-dipole exchange
};

/// Effective Hamiltonian parts on the full basis. Requires the dispersive
/// hierarchy nu_k >> Delta_k >> g_k; a hard violation is refused with the
/// offending ratios in the message.
///
/// The exchange term is written per unordered pair with the symmetrized
/// prefactor (g_i g_j / 2)(1/Delta_i + 1/Delta_j), which reduces to
/// g1 g2 / Delta for two identical ions.
inline EffectiveParts build_effective(const SystemConfig& config) {
  const RegimeReport report = validate_regime(config);
  if (report.any_hard()) {
    std::ostringstream os;
    os << "dispersive hierarchy violated:";
    for (size_t i = 0; i < report.ions.size(); ++i)
      os << " ion" << i + 1 << "(Delta/g=" << report.ions[i].delta_over_g
         << ", nu/Delta=" << report.ions[i].nu_over_delta << ")";
    throw regime_error(os.str());
  }
  const BasisDescriptor basis = config.full_basis();
  detail::guard_dense_dim(config, basis);
  const int n = config.ion_count;

  std::vector<Eigen::VectorXd> f2(size_t(n));
  std::vector<Eigen::VectorXd> f1(size_t(n));
  for (int i = 0; i < n; ++i) {
    f1[size_t(i)] = coupling_factor_table(config.n_max_motion, config.eta[size_t(i)]);
    f2[size_t(i)] = f1[size_t(i)].cwiseProduct(f1[size_t(i)]);
  }

  // Stark part: sum_i (g_i^2/Delta_i) f^2(n_i) [(1 + b b^dag) |e_i><e_i|
  //                                             - b^dag b |g_i><g_i|].
  Eigen::VectorXcd stark(basis.dim());
  std::vector<int> multi(size_t(basis.subsystem_count()));
  for (int64_t k = 0; k < basis.dim(); ++k) {
    basis.multi_index(k, multi);
    const int m = multi[size_t(2 * n)];
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      const double coef = config.g[size_t(i)] * config.g[size_t(i)] / config.delta(i) *
                          f2[size_t(i)](multi[size_t(n + i)]);
      e += coef * (multi[size_t(i)] == 1 ? double(m + 2) : -double(m));
    }
    stark(k) = e;
  }

  Eigen::MatrixXcd dip = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double pref = 0.5 * config.g[size_t(i)] * config.g[size_t(j)] *
                          (1.0 / config.delta(i) + 1.0 / config.delta(j));
      Eigen::MatrixXcd fi = Eigen::MatrixXcd::Zero(config.n_max_motion + 1, config.n_max_motion + 1);
      fi.diagonal() = f1[size_t(i)].cast<cplx>();
      Eigen::MatrixXcd fj = Eigen::MatrixXcd::Zero(config.n_max_motion + 1, config.n_max_motion + 1);
      fj.diagonal() = f1[size_t(j)].cast<cplx>();
      Eigen::MatrixXcd e = embed_product(
          basis,
          {{i, ops::sigma_plus()}, {j, ops::sigma_minus()}, {n + i, fi}, {n + j, fj}});
      dip += pref * (e + e.adjoint()).eval();
    }
  }

  return EffectiveParts{
      LabeledOperator(basis, detail::free_diagonal(config, basis), true),
      LabeledOperator(basis, std::move(stark), true),
      LabeledOperator(basis, std::move(dip), true)};
}

/// Lamb-Dicke cross-Kerr rate 2 eta_i^2 g_i^2 / Delta_i.
inline double cross_kerr_lambda(const SystemConfig& config, int i) {
  const double eta = config.eta.at(size_t(i));
  const double g = config.g.at(size_t(i));
  return 2.0 * eta * eta * g * g / config.delta(i);
}

/// Electronic-ground-sector Hamiltonian on [modes, field], diagonal in the
/// joint Fock basis.
///
/// lamb_dicke = true:  -sum_i lambda_i n_i b^dag b with lambda_i from
///                      cross_kerr_lambda;
/// lamb_dicke = false: -sum_i (g_i^2/Delta_i) f^2(n_i) b^dag b.
inline LabeledOperator build_cross_kerr(const SystemConfig& config, bool lamb_dicke) {
  config.validate();
  const BasisDescriptor basis = config.motion_field_basis();
  if (basis.dim() > config.dimension_cap_diagonal) {
    std::ostringstream os;
    os << "diagonal operator dimension " << basis.dim() << " exceeds cap "
       << config.dimension_cap_diagonal;
    throw resource_error(os.str());
  }
  const int n = config.ion_count;

  std::vector<Eigen::VectorXd> rate(size_t(n));
  for (int i = 0; i < n; ++i) {
    if (lamb_dicke) {
      const double lam = cross_kerr_lambda(config, i);
      rate[size_t(i)] = lam * Eigen::VectorXd::LinSpaced(config.n_max_motion + 1, 0.0,
                                                         double(config.n_max_motion));
    } else {
      Eigen::VectorXd f = coupling_factor_table(config.n_max_motion, config.eta[size_t(i)]);
      rate[size_t(i)] = (config.g[size_t(i)] * config.g[size_t(i)] / config.delta(i)) *
                        f.cwiseProduct(f);
    }
  }

  Eigen::VectorXcd diag(basis.dim());
  std::vector<int> multi(size_t(basis.subsystem_count()));
  for (int64_t k = 0; k < basis.dim(); ++k) {
    basis.multi_index(k, multi);
    const int m = multi[size_t(n)];
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += rate[size_t(i)](multi[size_t(i)]);
    diag(k) = -e * double(m);
  }
  return LabeledOperator(basis, std::move(diag), /*hermitian=*/true);
}

}  // namespace ioncav
