// spectra.hpp — Pipeline products: parallel pattern sweeps, the 2D Fourier
// transform and its inverse, arc sampling, exponential decay fits, and the
// mixed-coupling overlap metric.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lzsm/analytic.hpp"
#include "lzsm/grids.hpp"
#include "lzsm/model.hpp"

namespace lzsm::spectra {

// Solver knobs shared by every grid point of a sweep.
struct SolverOptions {
  double tol{1e-10};  // local integration error target per step
  int M{512};         // period samples (power of two, >= 4 (K_modes + 1))
  int K_modes{64};    // Floquet-mode Fourier cutoff
  int K_X{32};        // transition-element sideband cutoff (>= 2 K)
  int K{5};           // steady-state sideband cutoff
  int workers{4};     // sweep thread count

  void validate() const;
};

// One steady-state solve with its diagnostics.
struct PointResult {
  double population{0.0};
  double residual{0.0};
  double cond_estimate{0.0};
  double trace_defect{0.0};
  double min_eigenvalue{0.0};
  bool near_degenerate{false};
  std::array<double, 2> quasienergy{{0.0, 0.0}};
};

// Full pipeline at a single parameter point:
// floquet_solve -> transition_elements -> build_liouvillian -> steady_state
// -> excited_population.
PointResult solve_point(const model::QubitParams& q,
                        const model::DrivingShape& shape,
                        const model::BathParams& bath,
                        const SolverOptions& opts = {});

// Data-parallel sweep of P_ex over the (eps0, A) grid; q_template supplies
// the tunneling amplitude while eps0 and A are taken from the axes. Grid
// points are independent and each worker writes only its own slots, so the
// result is bit-identical for a given config regardless of the worker
// count. Failed points are recorded, filled by nearest neighbor, and
// counted in failed_points; more than 1% failures aborts with a summary.
PatternGrid sweep_pattern(const model::QubitParams& q_template,
                          const model::DrivingShape& shape,
                          const model::BathParams& bath,
                          const Eigen::VectorXd& eps_axis,
                          const Eigen::VectorXd& A_axis,
                          const SolverOptions& opts = {},
                          std::string provenance = {});

// W(tau_eps, tau_A) = deps dA sum_{ij} P(eps_i, A_j)
//                     exp(-i [eps_i tau_eps + A_j tau_A]),
// evaluated by zero-padded FFT (pad in {1, 2, 4}) on fft-shifted tau axes
// (tau = 0 sits at index n/2). The pattern mean is subtracted by default so
// the origin bin does not drown the arc structure.
SpectrumGrid fourier2d(const PatternGrid& p, int pad = 2,
                       bool subtract_mean = true);

// Exact inverse of fourier2d: reproduces the source pattern, including the
// removed mean, up to rounding.
PatternGrid inverse_fourier2d(const SpectrumGrid& s);

// |W| along an arc, by bilinear interpolation between spectrum bins.
struct ArcProfile {
  std::vector<double> tau_eps;
  std::vector<double> amplitude;
  int dropped{0};  // curve samples outside the spectrum bounds
};
ArcProfile sample_arc(const SpectrumGrid& s, const analytic::ArcCurve& curve);

struct DecayFit {
  double lambda{0.0};     // decay rate, units of Omega
  double intercept{0.0};  // log-amplitude extrapolated to tau_eps = 0
  double window_lo{0.0};
  double window_hi{0.0};
  double residual_rms{0.0};  // RMS of log-residuals over the window
  double uncertainty{0.0};   // spread under +-10% window-endpoint shifts
};

// Least-squares line through log|W| over [window_lo, window_hi]; lambda is
// minus the slope. Requires >= 8 strictly positive samples in the window.
DecayFit fit_decay(const ArcProfile& profile, double window_lo,
                   double window_hi);

// Default fit window: centered at T/4 with half-width T/8.
std::array<double, 2> default_decay_window(double period);

// Normalized inner product r = <a, b> / (|a| |b|) over raw grid values
// (optionally mean-subtracted); requires identical axes. Equal inputs give
// exactly 1.
double pattern_overlap(const PatternGrid& a, const PatternGrid& b,
                       bool subtract_mean = false);

// tau_A position of the interior local maximum of |W| along the tau_A
// column nearest tau_eps, searched within +-halfwidth of tau_A_guess and
// refined parabolically; nullopt when the window holds no local maximum.
std::optional<double> ridge_near(const SpectrumGrid& s, double tau_eps,
                                 double tau_A_guess, double halfwidth);

}  // namespace lzsm::spectra
