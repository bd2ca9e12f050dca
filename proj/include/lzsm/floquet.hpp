// floquet.hpp — Quasienergies, Floquet modes, and periodic transition
// elements of the driven two-level system, obtained from the one-period
// propagator (monodromy matrix).

#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lzsm/model.hpp"

namespace lzsm::floquet {

// Thrown when the adaptive integrator's step size underflows.
class StepUnderflow : public std::runtime_error {
 public:
  StepUnderflow(double t, double h);
  double time() const { return t_; }

 private:
  double t_;
};

struct PropagationResult {
  Eigen::Matrix2cd monodromy;             // U(T, 0)
  std::vector<Eigen::Matrix2cd> samples;  // U(t_m, 0) at t_m = m T / M
  double max_local_error{0.0};            // largest accepted step-error estimate
  double unitarity_defect{0.0};           // ||U^dag U - 1||_F of the monodromy
  long steps{0};
};

// Integrates i dU/dt = H(t) U over one period with a fourth-order
// commutator-free scheme built from exact 2x2 Pauli exponentials, so every
// factor (and hence U) is unitary to rounding. tol is the local error target
// per step; M sample propagators are returned at equidistant times.
PropagationResult propagate_period(const model::QubitParams& q,
                                   const model::DrivingShape& shape,
                                   double tol, int M = 512);

struct FloquetSolution {
  double omega{1.0};
  int M{0};
  int K_modes{0};
  // Quasienergies folded into [-Omega/2, Omega/2), ascending.
  std::array<double, 2> quasienergy{{0.0, 0.0}};
  // c[alpha][k + K_modes]: Fourier coefficients of |Phi_alpha(t)>,
  // |Phi_alpha(t)> = sum_k exp(-i k Omega t) c_{alpha,k}.
  std::array<std::vector<Eigen::Vector2cd>, 2> c;
  // |Phi_alpha(t_m)> at the M sample times (kept for transition elements).
  std::array<std::vector<Eigen::Vector2cd>, 2> mode_samples;
  bool near_degenerate{false};  // eigenphase separation below 1e-10
  double max_local_error{0.0};
  double unitarity_defect{0.0};

  const Eigen::Vector2cd& coefficient(int alpha, int k) const {
    return c[static_cast<std::size_t>(alpha)]
            [static_cast<std::size_t>(k + K_modes)];
  }
  Eigen::Vector2cd mode_at(int alpha, double t) const;  // Fourier synthesis
};

// Solves the Floquet eigenproblem via the monodromy matrix. M must be a
// power of two with M >= 4 (K_modes + 1). Degenerate eigenphases are flagged
// and an orthonormal (Schur) eigenvector pair is used regardless.
FloquetSolution floquet_solve(const model::QubitParams& q,
                              const model::DrivingShape& shape,
                              double tol = 1e-10, int M = 512,
                              int K_modes = 64);

struct TransitionElements {
  int K_X{0};
  double omega{1.0};
  std::array<double, 2> quasienergy{{0.0, 0.0}};
  // comp[k + K_X](alpha, beta) = X_{alpha beta, k}
  //   = (1/T) int_0^T dt exp(i k Omega t) <Phi_alpha(t)|X|Phi_beta(t)>.
  std::vector<Eigen::Matrix2cd> comp;

  const Eigen::Matrix2cd& at(int k) const {
    return comp[static_cast<std::size_t>(k + K_X)];
  }
};

// Discrete Fourier transform of the sampled matrix elements of X in the
// Floquet-mode basis, truncated at |k| <= K_X (requires 2 K_X < M).
TransitionElements transition_elements(const FloquetSolution& sol,
                                       const Eigen::Matrix2cd& X,
                                       int K_X = 32);

// Mode overlap |sum_k c_a^dag c_b| between two solutions (label matching).
double mode_overlap(const FloquetSolution& a, int alpha,
                    const FloquetSolution& b, int beta);

// Swaps the labels of `cur` in place when the swapped assignment has larger
// total overlap with `prev`; returns true if a swap occurred. Keeps branch
// labels continuous across parameter scans.
bool match_labels(const FloquetSolution& prev, FloquetSolution& cur);

}  // namespace lzsm::floquet
