#include "lzsm/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lzsm/fft.hpp"

namespace lzsm::floquet {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// exp(-i (nx sigma_x + nz sigma_z) h), exact and exactly unitary:
// cos(r h) 1 - i sin(r h) (nx sigma_x + nz sigma_z)/r with r = |(nx, nz)|.
Eigen::Matrix2cd pauli_exp(double nx, double nz, double h) {
  const double r = std::hypot(nx, nz);
  const double c = std::cos(r * h);
  // sin(r h)/r, finite as r -> 0.
  const double s = (r > 0.0) ? std::sin(r * h) / r : h;
  Eigen::Matrix2cd u;
  u << std::complex<double>(c, -s * nz), std::complex<double>(0.0, -s * nx),
      std::complex<double>(0.0, -s * nx), std::complex<double>(c, s * nz);
  return u;
}

// sigma_z coefficient of the symmetrized Hamiltonian at time t.
double nz_at(const model::QubitParams& q, const model::DrivingShape& shape,
             double t) {
  return 0.5 * (q.eps0 - q.amplitude * model::evaluate_driving(shape, t));
}

// One fourth-order commutator-free step over [t, t+h]: two Pauli
// exponentials built from the Gauss nodes, later node weighted last.
Eigen::Matrix2cd cf4_step(const model::QubitParams& q,
                          const model::DrivingShape& shape, double t,
                          double h) {
  constexpr double root3_6 = 0.28867513459481288225;  // sqrt(3)/6
  const double c1 = 0.5 - root3_6;
  const double c2 = 0.5 + root3_6;
  const double ap = 0.25 + root3_6;
  const double am = 0.25 - root3_6;
  const double nx = 0.5 * q.delta;
  const double nz1 = nz_at(q, shape, t + c1 * h);
  const double nz2 = nz_at(q, shape, t + c2 * h);
  const Eigen::Matrix2cd first = pauli_exp(0.5 * nx, ap * nz1 + am * nz2, h);
  const Eigen::Matrix2cd second = pauli_exp(0.5 * nx, am * nz1 + ap * nz2, h);
  return second * first;
}

double fold(double eps, double omega) {
  double y = std::remainder(eps, omega);
  if (y >= 0.5 * omega) y -= omega;
  if (y < -0.5 * omega) y += omega;
  return y;
}

}  // namespace

StepUnderflow::StepUnderflow(double t, double h)
    : std::runtime_error("propagator step size underflow at t = " +
                         std::to_string(t) + " (h = " + std::to_string(h) +
                         ")"),
      t_(t) {}

PropagationResult propagate_period(const model::QubitParams& q,
                                   const model::DrivingShape& shape,
                                   double tol, int M) {
  q.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("propagate_period: tol <= 0");
  if (M < 1) throw std::invalid_argument("propagate_period: M < 1");

  const double T = shape.period();
  const double h_min = 1e-14 * T;
  PropagationResult out;
  out.samples.reserve(static_cast<std::size_t>(M));

  Eigen::Matrix2cd U = Eigen::Matrix2cd::Identity();
  double h = T / M;
  for (int m = 0; m < M; ++m) {
    out.samples.push_back(U);
    const double t_end = (m + 1) * T / M;
    double t = m * T / M;
    while (t < t_end - 1e-15 * T) {
      h = std::min(h, t_end - t);
      // Step doubling: accept the two-half-step result, estimate the error
      // from the difference to the single full step.
      const Eigen::Matrix2cd full = cf4_step(q, shape, t, h);
      const Eigen::Matrix2cd half2 =
          cf4_step(q, shape, t + 0.5 * h, 0.5 * h) *
          cf4_step(q, shape, t, 0.5 * h);
      const double err = (full - half2).norm() / 15.0;
      if (err <= tol) {
        U = half2 * U;
        t += h;
        out.steps += 2;
        out.max_local_error = std::max(out.max_local_error, err);
        const double grow =
            (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
      } else {
        h *= std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 0.9);
        if (h < h_min) throw StepUnderflow(t, h);
      }
    }
  }
  out.monodromy = U;
  out.unitarity_defect =
      (U.adjoint() * U - Eigen::Matrix2cd::Identity()).norm();
  return out;
}

Eigen::Vector2cd FloquetSolution::mode_at(int alpha, double t) const {
  Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
  for (int k = -K_modes; k <= K_modes; ++k)
    v += std::exp(-kI * (k * omega * t)) * coefficient(alpha, k);
  return v;
}

FloquetSolution floquet_solve(const model::QubitParams& q,
                              const model::DrivingShape& shape, double tol,
                              int M, int K_modes) {
  if (!fft::is_power_of_two(M))
    throw std::invalid_argument("floquet_solve: M must be a power of two");
  if (M < 4 * (K_modes + 1))
    throw std::invalid_argument("floquet_solve: M must be >= 4 (K_modes + 1)");

  const auto prop = propagate_period(q, shape, tol, M);
  const double omega = shape.omega();
  const double T = shape.period();

  // Schur form of the (normal) monodromy matrix: the columns of Q are an
  // exactly orthonormal eigenvector pair even at quasienergy degeneracies.
  Eigen::ComplexSchur<Eigen::Matrix2cd> schur(prop.monodromy, true);
  const Eigen::Matrix2cd Q = schur.matrixU();
  const Eigen::Matrix2cd Tm = schur.matrixT();

  FloquetSolution sol;
  sol.omega = omega;
  sol.M = M;
  sol.K_modes = K_modes;
  sol.max_local_error = prop.max_local_error;
  sol.unitarity_defect = prop.unitarity_defect;

  std::array<double, 2> eps;
  std::array<Eigen::Vector2cd, 2> vec;
  for (int a = 0; a < 2; ++a) {
    // Eigenvalue exp(-i eps T): fold -arg/T into [-Omega/2, Omega/2).
    eps[a] = fold(-std::arg(Tm(a, a)) / T, omega);
    vec[a] = Q.col(a);
  }
  const double dphi = std::abs(std::arg(Tm(0, 0) * std::conj(Tm(1, 1))));
  sol.near_degenerate = (std::min(dphi, 2.0 * std::numbers::pi - dphi) / T <
                         1e-10);
  if (eps[1] < eps[0]) {
    std::swap(eps[0], eps[1]);
    std::swap(vec[0], vec[1]);
  }
  sol.quasienergy = eps;

  // Mode samples |Phi_a(t_m)> = exp(+i eps_a t_m) U(t_m, 0) |u_a>, then one
  // DFT per component for the Fourier coefficients.
  for (int a = 0; a < 2; ++a) {
    auto& samples = sol.mode_samples[static_cast<std::size_t>(a)];
    samples.resize(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
      const double tm = m * T / M;
      samples[static_cast<std::size_t>(m)] =
          std::exp(kI * (eps[a] * tm)) * (prop.samples[static_cast<std::size_t>(m)] * vec[a]);
    }
    std::array<std::vector<std::complex<double>>, 2> comp;
    for (int j = 0; j < 2; ++j) {
      comp[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(M));
      for (int m = 0; m < M; ++m)
        comp[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] =
            samples[static_cast<std::size_t>(m)](j);
      fft::forward(comp[static_cast<std::size_t>(j)]);
    }
    auto& coeffs = sol.c[static_cast<std::size_t>(a)];
    coeffs.resize(static_cast<std::size_t>(2 * K_modes + 1));
    for (int k = -K_modes; k <= K_modes; ++k) {
      Eigen::Vector2cd v;
      v << fft::positive_coefficient(comp[0], k),
          fft::positive_coefficient(comp[1], k);
      coeffs[static_cast<std::size_t>(k + K_modes)] = v;
    }
  }
  return sol;
}

TransitionElements transition_elements(const FloquetSolution& sol,
                                       const Eigen::Matrix2cd& X, int K_X) {
  if (2 * K_X >= sol.M)
    throw std::invalid_argument("transition_elements: need 2 K_X < M");
  TransitionElements out;
  out.K_X = K_X;
  out.omega = sol.omega;
  out.quasienergy = sol.quasienergy;
  out.comp.resize(static_cast<std::size_t>(2 * K_X + 1));

  const int M = sol.M;
  std::vector<std::complex<double>> work(static_cast<std::size_t>(M));
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int m = 0; m < M; ++m) {
        const auto& pa = sol.mode_samples[static_cast<std::size_t>(a)]
                                         [static_cast<std::size_t>(m)];
        const auto& pb = sol.mode_samples[static_cast<std::size_t>(b)]
                                         [static_cast<std::size_t>(m)];
        work[static_cast<std::size_t>(m)] = pa.dot(X * pb);
      }
      fft::forward(work);
      for (int k = -K_X; k <= K_X; ++k)
        out.comp[static_cast<std::size_t>(k + K_X)](a, b) =
            fft::positive_coefficient(work, k);
    }
  }
  return out;
}

double mode_overlap(const FloquetSolution& a, int alpha,
                    const FloquetSolution& b, int beta) {
  const int K = std::min(a.K_modes, b.K_modes);
  std::complex<double> s = 0.0;
  for (int k = -K; k <= K; ++k)
    s += a.coefficient(alpha, k).dot(b.coefficient(beta, k));
  return std::abs(s);
}

bool match_labels(const FloquetSolution& prev, FloquetSolution& cur) {
  const double keep =
      mode_overlap(prev, 0, cur, 0) + mode_overlap(prev, 1, cur, 1);
  const double swap =
      mode_overlap(prev, 0, cur, 1) + mode_overlap(prev, 1, cur, 0);
  if (swap <= keep) return false;
  std::swap(cur.quasienergy[0], cur.quasienergy[1]);
  std::swap(cur.c[0], cur.c[1]);
  std::swap(cur.mode_samples[0], cur.mode_samples[1]);
  return true;
}

}  // namespace lzsm::floquet
