// redfield.hpp — Fourier blocks of the Bloch-Redfield generator in the
// Floquet basis and the periodic steady state they define.

#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "lzsm/floquet.hpp"
#include "lzsm/model.hpp"

namespace lzsm::redfield {

// Ohmic rate function N(omega) = alpha * omega * n_th(omega) with
// n_th(omega) = 1/(exp(beta omega) - 1), continued through omega = 0 where
// it equals alpha/beta; for omega < 0 this is alpha |omega| (1 + n_th(|omega|)).
double bath_rate(double omega, const model::BathParams& bath);

struct LiouvillianBlocks {
  int K{0};  // steady-state sideband cutoff; blocks stored for |k| <= 2K
  double omega{1.0};
  double alpha{0.0};  // dissipation strength (steady_state rejects 0)
  std::array<double, 2> quasienergy{{0.0, 0.0}};
  // block[k + 2K](p, p') with pair index p = 2*alpha + beta.
  std::vector<Eigen::Matrix4cd> block;

  const Eigen::Matrix4cd& at(int k) const {
    return block[static_cast<std::size_t>(k + 2 * K)];
  }
  Eigen::Matrix4cd& at(int k) {
    return block[static_cast<std::size_t>(k + 2 * K)];
  }
};

// Assembles the Fourier blocks of the generator: the coherent quasienergy
// term plus the three dissipative sums over transition elements, weighted by
// the bath rate at the sideband-shifted quasienergy gaps. Requires
// X_elems.K_X >= 2K; inner sums run over all sidebands available in X_elems.
LiouvillianBlocks build_liouvillian(const floquet::FloquetSolution& sol,
                                    const floquet::TransitionElements& X_elems,
                                    const model::BathParams& bath, int K = 5);

struct SteadyState {
  int K{0};
  double omega{1.0};
  // rho[k + K] = rho^(k), coefficients of rho(t) = sum_k e^{-i k Omega t} rho^(k).
  std::vector<Eigen::Matrix2cd> rho;
  double residual{0.0};       // replaced population row evaluated on the solution
  double cond_estimate{0.0};  // 1-norm-scale condition estimate of the solved system
  double trace_defect{0.0};   // max |tr rho(t) - 1| over sampled times
  double min_eigenvalue{0.0}; // most negative eigenvalue of rho(t) over samples

  const Eigen::Matrix2cd& at(int k) const {
    return rho[static_cast<std::size_t>(k + K)];
  }
  Eigen::Matrix2cd at_time(double t) const;
};

// Solves the periodic stationarity condition
//   -i k Omega rho^(k) = sum_k' L^(k-k') rho^(k')
// for |k| <= K by dense LU; the redundant row (k = 0, first population) is
// replaced by the trace normalization. K must not exceed blocks.K.
SteadyState steady_state(const LiouvillianBlocks& blocks, int K);

// Time-averaged population of the excited eigenstate of the static qubit
// Hamiltonian (eps0/2) sigma_z + (delta/2) sigma_x, evaluated exactly from
// the Fourier coefficients of rho and of the projector in the Floquet basis.
double excited_population(const SteadyState& state,
                          const floquet::FloquetSolution& sol,
                          const model::QubitParams& q);

// Excited eigenstate of the static qubit Hamiltonian (exposed for tests).
Eigen::Vector2cd excited_state(const model::QubitParams& q);

}  // namespace lzsm::redfield
