// analytic.hpp — Closed-form results: generalized sideband couplings
// Delta_n, stationary Bloch vectors for both coupling types, off-resonant
// background, static-limit rates, and the Fourier-space arc predictor.

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lzsm/grids.hpp"
#include "lzsm/model.hpp"

namespace lzsm::analytic {

// Delta_n(A) = (delta/T) int_0^T dt exp(i n Omega t - i A F(t)),
// evaluated by FFT over M samples of the unimodular integrand.
std::complex<double> delta_n(const model::QubitParams& q,
                             const model::DrivingShape& shape, int n,
                             int M = 512);

// All coefficients n = -n_max .. n_max from one transform.
std::vector<std::complex<double>> delta_n_range(const model::QubitParams& q,
                                                const model::DrivingShape& shape,
                                                int n_max, int M = 512);

struct BlochVector {
  double x{0.0}, y{0.0}, z{0.0};
  double norm() const;
};

struct BlochSteady {
  BlochVector s;
  double population;  // P = (1 + s_z)/2
};

// Stationary solution of the rotating-frame Bloch equations near the nth
// resonance, detuning = eps0 - n Omega, for transverse (sigma_x) coupling.
// Solves the 3x3 linear system; requires gamma > 0.
BlochSteady bloch_steady_transverse(double detuning, double delta_n,
                                    double gamma);
// Same for longitudinal (sigma_z) coupling.  Relaxation drives the Bloch
// vector toward the rotating-frame ground state, whose transverse orientation
// tracks the sign of delta_n; the population therefore depends on |delta_n|
// and exceeds 1/2 on the low-|eps0| side of each positive resonance.
BlochSteady bloch_steady_longitudinal(double detuning, double delta_n,
                                      double gamma);

// Closed-form populations of the same stationary states (valid at gamma >= 0):
//   transverse:   P = 0.5 (delta_n^2/2) / (detuning^2 + delta_n^2/2 + gamma^2/4)
//   longitudinal: P = 1/2 - detuning |delta_n| / (detuning^2 + 2 delta_n^2 + gamma^2/2)
double peak_transverse(double detuning, double delta_n, double gamma);
double peak_longitudinal(double detuning, double delta_n, double gamma);

// Off-resonant background P_bg = 1/2 - pi eps0 A / (4 A^2 + 2 eps0^2);
// requires A > 0.
double background(const model::QubitParams& q);

struct Rates {
  double gamma;      // relaxation: pi alpha E coth(beta E / 2)
  double gamma_phi;  // pure dephasing: 4 pi alpha / beta
};
Rates golden_rule_rates(double E, const model::BathParams& bath);

enum class Coupling { transverse, longitudinal };

// Closed-form interference pattern. Transverse: sum of peak_transverse over
// |n| <= n_max (optionally with the background layer added). Longitudinal:
// the per-resonance curve of the nearest n only; the rotating-frame
// derivation does not justify summing those globally.
spectra::PatternGrid analytic_pattern(const Eigen::VectorXd& eps_axis,
                                      const Eigen::VectorXd& A_axis,
                                      double delta_tunnel,
                                      const model::DrivingShape& shape,
                                      double gamma, Coupling coupling,
                                      int n_max,
                                      bool include_background = false);

// Least-squares fit of the phenomenological width gamma: minimizes the RMS
// between the transverse analytic model (sum over |n| <= n_max) and the
// sampled slice P(eps0) at fixed amplitude. Scalar golden-section search.
double fit_gamma(const std::vector<double>& eps0, const std::vector<double>& P,
                 double delta_tunnel, const model::DrivingShape& shape,
                 double amplitude, int n_max);

// One branch of an arc locus in the (tau_eps, tau_A) plane.
struct ArcCurve {
  int id{0};
  int order_k{1};   // generic arcs: tau_A = 2k F(tau_eps/2k + k' T/2k)
  int shift_kp{0};
  std::vector<std::array<double, 2>> samples;  // (tau_eps, tau_A), increasing
  std::vector<double> root_times;              // stationary time per sample
};

// Principal stationary-phase arcs of a time-reversal symmetric drive:
// tau_A^(1) = 2 F(tau_eps/2), tau_A^(2) = 2 F(tau_eps/2 + T/2).
std::array<double, 2> arc_generic(const model::DrivingShape& shape,
                                  double tau_eps);

// Higher-order arc tau_A = 2k F(tau_eps/2k + k' T/2k), k >= 1,
// 0 <= k' <= 2k - 1; symmetric shapes only.
double arc_higher_order(const model::DrivingShape& shape, double tau_eps,
                        int k, int kp);

// Full arc predictor for arbitrary shapes: for every tau_eps, all roots
// t_i in [0, 2T) of g(t) = f(t + tau_eps/2) - f(t - tau_eps/2), refined by
// bisection and threaded into branches by nearest-neighbor continuation.
std::vector<ArcCurve> arc_full(const model::DrivingShape& shape,
                               const std::vector<double>& tau_eps_grid,
                               int scan_points = 4096);

// Over-damped spectral profile W(tau_eps, .): normalized histogram of
// G(t, tau_eps) = F(t + tau_eps/2) - F(t - tau_eps/2) over t in [0, T),
// binned as a density on the given uniform tau_A grid.
std::vector<double> overdamped_spectrum(const model::DrivingShape& shape,
                                        double tau_eps,
                                        const std::vector<double>& tau_A_grid);

}  // namespace lzsm::analytic
