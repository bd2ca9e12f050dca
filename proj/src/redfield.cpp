#include "lzsm/redfield.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lzsm::redfield {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Calibrates the generator to the golden-rule relaxation rate of the static
// limit, Gamma = pi alpha E coth(beta E / 2) for transverse coupling.
constexpr double kRateScale = std::numbers::pi / 2.0;

}  // namespace

double bath_rate(double omega, const model::BathParams& bath) {
  bath.validate();
  if (omega == 0.0) return bath.alpha / bath.beta;
  // alpha omega / (exp(beta omega) - 1) is stable for both signs: expm1
  // keeps the omega -> 0 cancellation exact and underflows cleanly to
  // alpha |omega| for large negative arguments.
  return bath.alpha * omega / std::expm1(bath.beta * omega);
}

LiouvillianBlocks build_liouvillian(const floquet::FloquetSolution& sol,
                                    const floquet::TransitionElements& X,
                                    const model::BathParams& bath, int K) {
  bath.validate();
  if (K < 1) throw std::invalid_argument("build_liouvillian: K must be >= 1");
  if (X.K_X < 2 * K)
    throw std::invalid_argument(
        "build_liouvillian: transition elements truncated at K_X = " +
        std::to_string(X.K_X) + ", need K_X >= 2K = " + std::to_string(2 * K));

  const int KX = X.K_X;
  const double omega = sol.omega;
  const auto& eps = sol.quasienergy;

  // Rate table N(eps_i - eps_j - m Omega) for every argument the sums
  // visit. The minus sign tracks the e^{-i k Omega t} mode convention: the
  // (i, j, m) component of X oscillates at eps_i - eps_j - m Omega, and the
  // bath must be sampled at that physical frequency (negative = emission).
  const int Mmax = KX + 2 * K;
  std::array<std::array<std::vector<double>, 2>, 2> N;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto& row = N[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      row.resize(static_cast<std::size_t>(2 * Mmax + 1));
      for (int m = -Mmax; m <= Mmax; ++m)
        row[static_cast<std::size_t>(m + Mmax)] =
            kRateScale * bath_rate(eps[static_cast<std::size_t>(i)] -
                                       eps[static_cast<std::size_t>(j)] -
                                       m * omega,
                                   bath);
    }
  auto rate = [&](int i, int j, int m) {
    return N[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
            [static_cast<std::size_t>(m + Mmax)];
  };
  auto Xel = [&](int k, int a, int b) { return X.at(k)(a, b); };

  LiouvillianBlocks out;
  out.K = K;
  out.omega = omega;
  out.alpha = bath.alpha;
  out.quasienergy = eps;
  out.block.assign(static_cast<std::size_t>(4 * K + 1),
                   Eigen::Matrix4cd::Zero());

  for (int k = -2 * K; k <= 2 * K; ++k) {
    Eigen::Matrix4cd& L = out.at(k);
    const int lo = std::max(-KX, k - KX);
    const int hi = std::min(KX, k + KX);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int p = 2 * a + b;
        for (int ap = 0; ap < 2; ++ap)
          for (int bp = 0; bp < 2; ++bp) {
            const int pp = 2 * ap + bp;
            std::complex<double> acc = 0.0;
            if (k == 0 && a == ap && b == bp)
              acc -= kI * (eps[static_cast<std::size_t>(a)] -
                           eps[static_cast<std::size_t>(b)]);
            for (int kp = lo; kp <= hi; ++kp)
              acc += (rate(a, ap, kp) + rate(b, bp, kp - k)) *
                     Xel(kp, a, ap) * Xel(k - kp, bp, b);
            if (b == bp)
              for (int g = 0; g < 2; ++g)
                for (int kp = lo; kp <= hi; ++kp)
                  acc -= rate(g, ap, k - kp) * Xel(kp, a, g) *
                         Xel(k - kp, g, ap);
            if (a == ap)
              for (int g = 0; g < 2; ++g)
                for (int kp = lo; kp <= hi; ++kp)
                  acc -= rate(g, bp, kp - k) * Xel(k - kp, bp, g) *
                         Xel(kp, g, b);
            L(p, pp) = acc;
          }
      }
  }
  return out;
}

Eigen::Matrix2cd SteadyState::at_time(double t) const {
  Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
  for (int k = -K; k <= K; ++k) r += std::exp(-kI * (k * omega * t)) * at(k);
  return r;
}

namespace {

// Power iteration on (A^dag A)^{-1} via the LU factors gives 1/sigma_min^2;
// paired with the Frobenius norm this yields a cheap condition estimate.
double condition_estimate(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu,
                          const Eigen::MatrixXcd& A) {
  const auto n = A.rows();
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = std::complex<double>(1.0 + 0.1 * static_cast<double>(i % 7), 0.0);
  v.normalize();
  double inv_sigma_min = 0.0;
  for (int it = 0; it < 8; ++it) {
    Eigen::VectorXcd w = lu.solve(v);
    Eigen::VectorXcd u = lu.adjoint().solve(w);
    const double norm = u.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) return 1e300;
    inv_sigma_min = std::sqrt(norm);
    v = u / norm;
  }
  return A.norm() * inv_sigma_min;
}

}  // namespace

SteadyState steady_state(const LiouvillianBlocks& blocks, int K) {
  if (blocks.alpha == 0.0)
    throw std::invalid_argument(
        "steady_state: alpha = 0 leaves the steady state undetermined");
  if (K < 1 || K > blocks.K)
    throw std::invalid_argument(
        "steady_state: K must lie in [1, blocks.K]");

  const double omega = blocks.omega;
  const int n = 4 * (2 * K + 1);
  auto id = [&](int k, int p) { return (k + K) * 4 + p; };

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (int k = -K; k <= K; ++k) {
    for (int kp = std::max(-K, k - 2 * K); kp <= std::min(K, k + 2 * K); ++kp) {
      const Eigen::Matrix4cd& L = blocks.at(k - kp);
      for (int p = 0; p < 4; ++p)
        for (int pp = 0; pp < 4; ++pp) A(id(k, p), id(kp, pp)) += L(p, pp);
    }
    for (int p = 0; p < 4; ++p) A(id(k, p), id(k, p)) += kI * (k * omega);
  }

  // The system is singular by trace conservation; replace the k = 0 first
  // population row with the normalization and keep it for the residual.
  const int row0 = id(0, 0);
  const Eigen::RowVectorXcd replaced = A.row(row0);
  A.row(row0).setZero();
  A(row0, id(0, 0)) = 1.0;
  A(row0, id(0, 3)) = 1.0;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(row0) = 1.0;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::VectorXcd x = lu.solve(rhs);

  SteadyState st;
  st.K = K;
  st.omega = omega;
  st.rho.resize(static_cast<std::size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k) {
    Eigen::Matrix2cd r;
    r << x(id(k, 0)), x(id(k, 1)), x(id(k, 2)), x(id(k, 3));
    st.rho[static_cast<std::size_t>(k + K)] = r;
  }
  st.residual = std::abs((replaced * x)(0, 0));
  st.cond_estimate = condition_estimate(lu, A);

  const double T = 2.0 * std::numbers::pi / omega;
  for (int m = 0; m < 64; ++m) {
    const Eigen::Matrix2cd r = st.at_time(m * T / 64.0);
    st.trace_defect =
        std::max(st.trace_defect, std::abs(r.trace() - 1.0));
    // Eigenvalues of the Hermitian part; the Fourier-truncated rho(t) can
    // carry a tiny anti-Hermitian remainder.
    const Eigen::Matrix2cd h = 0.5 * (r + r.adjoint());
    const double tr2 = 0.5 * std::real(h.trace());
    const double rad = std::sqrt(std::norm(h(0, 1)) +
                                 0.25 * std::norm(h(0, 0) - h(1, 1)));
    st.min_eigenvalue = std::min(st.min_eigenvalue, tr2 - rad);
  }
  return st;
}

Eigen::Vector2cd excited_state(const model::QubitParams& q) {
  const double a = 0.5 * q.eps0;
  const double b = 0.5 * q.delta;
  const double E = std::hypot(a, b);
  Eigen::Vector2cd v;
  if (E == 0.0) {
    v << 1.0, 0.0;  // degenerate static Hamiltonian; any state qualifies
    return v;
  }
  // Eigenvector of [[a, b], [b, -a]] for eigenvalue +E.
  if (E + a > 1e-12 * E) {
    v << E + a, b;
  } else {
    v << b, E - a;  // eps0 < 0 branch, avoids cancellation
  }
  v.normalize();
  return v;
}

double excited_population(const SteadyState& state,
                          const floquet::FloquetSolution& sol,
                          const model::QubitParams& q) {
  const Eigen::Vector2cd e = excited_state(q);
  const Eigen::Matrix2cd proj = e * e.adjoint();
  const auto E = floquet::transition_elements(sol, proj, state.K);
  std::complex<double> p = 0.0;
  for (int k = -state.K; k <= state.K; ++k)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        p += state.at(k)(a, b) * E.at(-k)(b, a);
  return std::real(p);
}

}  // namespace lzsm::redfield
