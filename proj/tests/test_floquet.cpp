// Unit tests for the Floquet layer, checked against independent oracles: a
// fixed-step RK4 propagator, the exact static spectrum at A = 0, and the
// tunneling suppression at the first Bessel zero.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lzsm/floquet.hpp"
#include "lzsm/model.hpp"

using namespace lzsm;
using std::numbers::pi;

namespace {

constexpr double kTwoPi = 2.0 * pi;

// Independent oracle: classic fixed-step RK4 for i dU/dt = H(t) U.
Eigen::Matrix2cd rk4_monodromy(const model::QubitParams& q,
                               const model::DrivingShape& shape, int steps) {
  const double T = shape.period();
  const double h = T / steps;
  const std::complex<double> mi(0.0, -1.0);
  Eigen::Matrix2cd U = Eigen::Matrix2cd::Identity();
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    const auto f = [&](double tt, const Eigen::Matrix2cd& V) {
      return (mi * model::symmetrized_hamiltonian(q, shape, tt) * V).eval();
    };
    const Eigen::Matrix2cd k1 = f(t, U);
    const Eigen::Matrix2cd k2 = f(t + 0.5 * h, U + 0.5 * h * k1);
    const Eigen::Matrix2cd k3 = f(t + 0.5 * h, U + 0.5 * h * k2);
    const Eigen::Matrix2cd k4 = f(t + h, U + h * k3);
    U = U + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return U;
}

// Folds an energy into the first Brillouin zone [-Omega/2, Omega/2).
double fold(double e, double omega) {
  double r = std::fmod(e + omega / 2.0, omega);
  if (r < 0.0) r += omega;
  return r - omega / 2.0;
}

}  // namespace

TEST_SUITE_BEGIN("floquet");

TEST_CASE("one-period propagator matches a fixed-step RK4 oracle") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ue(-2.0, 2.0);
  std::uniform_real_distribution<double> ua(0.0, 3.0);
  for (const char* name : {"cos", "f2", "f3"}) {
    CAPTURE(name);
    const auto shape = model::DrivingShape::preset(name);
    for (int i = 0; i < 3; ++i) {
      const model::QubitParams q{ue(rng), 0.5, ua(rng)};
      const auto prop = floquet::propagate_period(q, shape, 1e-12, 16);
      const Eigen::Matrix2cd oracle = rk4_monodromy(q, shape, 40000);
      CHECK((prop.monodromy - oracle).norm() <= 1e-8);
      CHECK(prop.unitarity_defect <= 1e-12);
      CHECK((prop.monodromy.adjoint() * prop.monodromy -
             Eigen::Matrix2cd::Identity())
                .norm() <= 1e-12);
    }
  }
}

TEST_CASE("sampled propagators are unitary and ordered") {
  const auto shape = model::DrivingShape::preset("cos");
  const model::QubitParams q{1.0, 0.5, 10.0};
  const int M = 64;
  const auto prop = floquet::propagate_period(q, shape, 1e-10, M);
  REQUIRE(static_cast<int>(prop.samples.size()) == M);
  // U(t_0) = U(0) = 1 and every sample is unitary.
  CHECK((prop.samples[0] - Eigen::Matrix2cd::Identity()).norm() <= 1e-14);
  for (const auto& U : prop.samples)
    CHECK((U.adjoint() * U - Eigen::Matrix2cd::Identity()).norm() <= 1e-12);
  // The last stored sample times one more step of size T/M reaches U(T):
  // U(T) U(t)^... instead simply check consistency against the RK4 oracle at
  // the midpoint sample.
  const Eigen::Matrix2cd mid_oracle = [&] {
    const double T = shape.period();
    const int steps = 20000;
    const double h = (T / 2.0) / steps;
    const std::complex<double> mi(0.0, -1.0);
    Eigen::Matrix2cd U = Eigen::Matrix2cd::Identity();
    for (int s = 0; s < steps; ++s) {
      const double t = s * h;
      const auto f = [&](double tt, const Eigen::Matrix2cd& V) {
        return (mi * model::symmetrized_hamiltonian(q, shape, tt) * V).eval();
      };
      const Eigen::Matrix2cd k1 = f(t, U);
      const Eigen::Matrix2cd k2 = f(t + 0.5 * h, U + 0.5 * h * k1);
      const Eigen::Matrix2cd k3 = f(t + 0.5 * h, U + 0.5 * h * k2);
      const Eigen::Matrix2cd k4 = f(t + h, U + h * k3);
      U = U + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return U;
  }();
  CHECK((prop.samples[M / 2] - mid_oracle).norm() <= 1e-7);
}

TEST_CASE("tolerance and sample-count preconditions") {
  const auto shape = model::DrivingShape::preset("cos");
  const model::QubitParams q{0.0, 0.5, 5.0};
  CHECK_THROWS_AS(floquet::propagate_period(q, shape, 0.0, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(floquet::propagate_period(q, shape, -1e-8, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(floquet::propagate_period(q, shape, 1e-8, 0),
                  std::invalid_argument);
  // An unreachable error target drives the step size below the underflow
  // guard.
  CHECK_THROWS_AS(floquet::propagate_period(q, shape, 1e-300, 16),
                  floquet::StepUnderflow);
}

TEST_CASE("static limit: quasienergies are the folded eigenenergies") {
  const auto shape = model::DrivingShape::preset("cos");
  for (const auto& [eps0, delta] : {std::pair{0.3, 0.4}, {3.0, 0.5},
                                    {0.0, 0.5}, {-1.7, 0.25}}) {
    CAPTURE(eps0);
    CAPTURE(delta);
    const model::QubitParams q{eps0, delta, 0.0};
    const auto sol = floquet::floquet_solve(q, shape, 1e-12, 256, 32);
    const double E = std::hypot(eps0, delta);
    double lo = fold(-E / 2.0, 1.0);
    double hi = fold(E / 2.0, 1.0);
    if (lo > hi) std::swap(lo, hi);
    CHECK(std::abs(sol.quasienergy[0] - lo) <= 1e-10);
    CHECK(std::abs(sol.quasienergy[1] - hi) <= 1e-10);
  }
}

TEST_CASE("quasienergies live in the first Brillouin zone, ascending") {
  const auto shape = model::DrivingShape::preset("f2");
  for (double A : {0.5, 4.0, 11.0}) {
    const model::QubitParams q{1.3, 0.5, A};
    const auto sol = floquet::floquet_solve(q, shape, 1e-10, 512, 64);
    CHECK(sol.quasienergy[0] >= -0.5);
    CHECK(sol.quasienergy[0] < 0.5);
    CHECK(sol.quasienergy[1] >= -0.5);
    CHECK(sol.quasienergy[1] < 0.5);
    CHECK(sol.quasienergy[0] <= sol.quasienergy[1]);
  }
}

TEST_CASE("tunneling suppression at the first zero of J0") {
  // At eps0 = 0 the quasienergy gap is the effective splitting |Delta J0(A)|
  // up to higher-order corrections; at the first Bessel zero it collapses.
  const auto shape = model::DrivingShape::preset("cos");
  const double delta = 0.02;
  const double bessel_zero = 2.404825557695773;
  const auto gap_at = [&](double A) {
    const model::QubitParams q{0.0, delta, A};
    const auto sol = floquet::floquet_solve(q, shape, 1e-12, 512, 64);
    double g = sol.quasienergy[1] - sol.quasienergy[0];
    // The pair may straddle the zone edge; use the circle distance.
    return std::min(g, 1.0 - g);
  };
  const double suppressed = gap_at(bessel_zero);
  const double generic = gap_at(1.2);
  const double j0_12 = 0.6711327442643626;  // J0(1.2)
  CHECK(generic == doctest::Approx(delta * j0_12).epsilon(0.02).scale(0.0));
  CHECK(suppressed <= 0.02 * delta);
  CHECK(generic >= 10.0 * suppressed);
}

TEST_CASE("modes are orthonormal at every sample time") {
  const auto shape = model::DrivingShape::preset("f1");
  const model::QubitParams q{2.0, 0.5, 8.0};
  const auto sol = floquet::floquet_solve(q, shape, 1e-10, 512, 64);
  REQUIRE(sol.mode_samples[0].size() == sol.mode_samples[1].size());
  for (std::size_t m = 0; m < sol.mode_samples[0].size(); ++m) {
    const auto& u = sol.mode_samples[0][m];
    const auto& v = sol.mode_samples[1][m];
    CHECK(std::abs(u.norm() - 1.0) <= 1e-10);
    CHECK(std::abs(v.norm() - 1.0) <= 1e-10);
    CHECK(std::abs(u.dot(v)) <= 1e-10);
  }
}

TEST_CASE("Fourier synthesis reproduces the sampled modes") {
  const auto shape = model::DrivingShape::preset("cos");
  const model::QubitParams q{1.0, 0.5, 10.0};
  const int M = 512;
  const auto sol = floquet::floquet_solve(q, shape, 1e-10, M, 64);
  const double T = shape.period();
  double worst = 0.0;
  for (int m : {0, 37, 200, 511}) {
    const double t = m * T / M;
    for (int alpha : {0, 1}) {
      const Eigen::Vector2cd synth = sol.mode_at(alpha, t);
      const Eigen::Vector2cd& direct =
          sol.mode_samples[static_cast<std::size_t>(alpha)]
                          [static_cast<std::size_t>(m)];
      worst = std::max(worst, (synth - direct).norm());
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("solver precondition checks") {
  const auto shape = model::DrivingShape::preset("cos");
  const model::QubitParams q{0.0, 0.5, 5.0};
  CHECK_THROWS_AS(floquet::floquet_solve(q, shape, 1e-10, 500, 64),
                  std::invalid_argument);  // M not a power of two
  CHECK_THROWS_AS(floquet::floquet_solve(q, shape, 1e-10, 128, 64),
                  std::invalid_argument);  // M < 4 (K_modes + 1)
}

TEST_CASE("transition elements: Hermiticity and completeness") {
  const auto shape = model::DrivingShape::preset("cos");
  const model::QubitParams q{1.0, 0.5, 10.0};
  const auto sol = floquet::floquet_solve(q, shape, 1e-10, 512, 64);
  for (const double theta : {0.0, pi / 2.0, pi / 5.0}) {
    CAPTURE(theta);
    const model::BathParams bath{1e-3, 10.0, theta};
    const auto X = floquet::transition_elements(
        sol, model::coupling_operator(bath), 32);
    // X_{alpha beta, k} = conj(X_{beta alpha, -k}) because X is Hermitian.
    for (int k = -32; k <= 32; ++k)
      CHECK((X.at(k) - X.at(-k).adjoint().eval()).norm() <= 1e-12);
    // Completeness: sum_k ||X_k||_F^2 = tr(X^dag X) = 2 for any involution.
    double total = 0.0;
    for (int k = -32; k <= 32; ++k) total += X.at(k).squaredNorm();
    CHECK(total == doctest::Approx(2.0).epsilon(1e-8));
  }
  CHECK_THROWS_AS(
      floquet::transition_elements(sol, model::sigma_x(), 256),
      std::invalid_argument);  // needs 2 K_X < M
}

TEST_CASE("label matching keeps branches continuous") {
  const auto shape = model::DrivingShape::preset("cos");
  const model::QubitParams q1{1.0, 0.5, 6.00};
  const model::QubitParams q2{1.0, 0.5, 6.05};
  const auto a = floquet::floquet_solve(q1, shape, 1e-10, 512, 64);
  auto b = floquet::floquet_solve(q2, shape, 1e-10, 512, 64);
  floquet::match_labels(a, b);
  // After matching, same-label overlaps dominate cross-label ones.
  const double same = floquet::mode_overlap(a, 0, b, 0) +
                      floquet::mode_overlap(a, 1, b, 1);
  const double cross = floquet::mode_overlap(a, 0, b, 1) +
                       floquet::mode_overlap(a, 1, b, 0);
  CHECK(same > cross);

  // Force-swap the labels of a copy; match_labels must undo it.
  auto swapped = b;
  std::swap(swapped.quasienergy[0], swapped.quasienergy[1]);
  std::swap(swapped.c[0], swapped.c[1]);
  std::swap(swapped.mode_samples[0], swapped.mode_samples[1]);
  const bool did = floquet::match_labels(b, swapped);
  CHECK(did);
  CHECK(swapped.quasienergy[0] == b.quasienergy[0]);
  CHECK(swapped.quasienergy[1] == b.quasienergy[1]);
}

TEST_CASE("self overlap is maximal") {
  const auto shape = model::DrivingShape::preset("f3");
  const model::QubitParams q{0.7, 0.5, 4.0};
  const auto sol = floquet::floquet_solve(q, shape, 1e-10, 512, 64);
  CHECK(floquet::mode_overlap(sol, 0, sol, 0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(floquet::mode_overlap(sol, 1, sol, 1) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(floquet::mode_overlap(sol, 0, sol, 1) <= 1e-8);
}

TEST_SUITE_END();
