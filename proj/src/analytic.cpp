#include "lzsm/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lzsm/fft.hpp"

namespace lzsm::analytic {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

std::vector<std::complex<double>> delta_n_range(const model::QubitParams& q,
                                                const model::DrivingShape& shape,
                                                int n_max, int M) {
  q.validate();
  if (n_max < 0) throw std::invalid_argument("delta_n_range: n_max < 0");
  if (!fft::is_power_of_two(M) || M < 2 * (n_max + 1))
    throw std::invalid_argument(
        "delta_n_range: M must be a power of two with M >= 2 (n_max + 1)");
  const double T = shape.period();
  std::vector<std::complex<double>> g(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    const double t = m * T / M;
    g[static_cast<std::size_t>(m)] =
        std::exp(-kI * (q.amplitude * model::driving_integral(shape, t)));
  }
  fft::forward(g);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n)
    out[static_cast<std::size_t>(n + n_max)] =
        q.delta * fft::positive_coefficient(g, n);
  return out;
}

std::complex<double> delta_n(const model::QubitParams& q,
                             const model::DrivingShape& shape, int n, int M) {
  const int a = std::abs(n);
  return delta_n_range(q, shape, a, M)[static_cast<std::size_t>(n + a)];
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

namespace {

BlochSteady solve_bloch(const Eigen::Matrix3d& m, const Eigen::Vector3d& c) {
  const Eigen::Vector3d s = m.partialPivLu().solve(-c);
  BlochSteady out;
  out.s = {s(0), s(1), s(2)};
  out.population = 0.5 * (1.0 + s(2));
  return out;
}

}  // namespace

BlochSteady bloch_steady_transverse(double detuning, double delta_n,
                                    double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("bloch_steady_transverse: gamma must be > 0");
  Eigen::Matrix3d m;
  m << -0.5 * gamma, -detuning, 0.0,
       detuning, -0.5 * gamma, delta_n,
       0.0, -delta_n, -gamma;
  return solve_bloch(m, Eigen::Vector3d(0.0, 0.0, -gamma));
}

BlochSteady bloch_steady_longitudinal(double detuning, double delta_n,
                                      double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument(
        "bloch_steady_longitudinal: gamma must be > 0");
  // Relaxation target is the transverse ground direction, which flips with
  // the sign of the effective coupling.
  const double target = delta_n < 0.0 ? 1.0 : -1.0;
  Eigen::Matrix3d m;
  m << -gamma, -detuning, 0.0,
       detuning, -0.5 * gamma, -delta_n,
       0.0, delta_n, -0.5 * gamma;
  return solve_bloch(m, Eigen::Vector3d(target * gamma, 0.0, 0.0));
}

double peak_transverse(double detuning, double delta_n, double gamma) {
  const double num = 0.5 * delta_n * delta_n;
  const double den =
      detuning * detuning + num + 0.25 * gamma * gamma;
  if (den == 0.0) return 0.5;  // detuned Rabi limit at zero width
  return 0.5 * num / den;
}

double peak_longitudinal(double detuning, double delta_n, double gamma) {
  const double den = detuning * detuning + 2.0 * delta_n * delta_n +
                     0.5 * gamma * gamma;
  if (den == 0.0) return 0.5;
  return 0.5 - detuning * std::abs(delta_n) / den;
}

double background(const model::QubitParams& q) {
  q.validate();
  if (!(q.amplitude > 0.0))
    throw std::invalid_argument("background: requires amplitude A > 0");
  const double a = q.amplitude;
  const double e = q.eps0;
  return 0.5 - std::numbers::pi * e * a / (4.0 * a * a + 2.0 * e * e);
}

Rates golden_rule_rates(double E, const model::BathParams& bath) {
  bath.validate();
  const double x = 0.5 * bath.beta * E;
  Rates r;
  // E coth(beta E / 2) is even in E and tends to 2/beta at E = 0.
  r.gamma = (x == 0.0)
                ? 2.0 * std::numbers::pi * bath.alpha / bath.beta
                : std::numbers::pi * bath.alpha * E / std::tanh(x);
  r.gamma_phi = 4.0 * std::numbers::pi * bath.alpha / bath.beta;
  return r;
}

spectra::PatternGrid analytic_pattern(const Eigen::VectorXd& eps_axis,
                                      const Eigen::VectorXd& A_axis,
                                      double delta_tunnel,
                                      const model::DrivingShape& shape,
                                      double gamma, Coupling coupling,
                                      int n_max, bool include_background) {
  if (n_max < 1) throw std::invalid_argument("analytic_pattern: n_max < 1");
  if (eps_axis.size() == 0 || A_axis.size() == 0)
    throw std::invalid_argument("analytic_pattern: empty axis");
  const double omega = shape.omega();

  spectra::PatternGrid grid;
  grid.eps_axis = eps_axis;
  grid.A_axis = A_axis;
  grid.values.resize(eps_axis.size(), A_axis.size());
  grid.provenance = "analytic_pattern gamma=" + std::to_string(gamma) +
                    " n_max=" + std::to_string(n_max);

  for (Eigen::Index j = 0; j < A_axis.size(); ++j) {
    model::QubitParams q{0.0, delta_tunnel, A_axis(j)};
    const auto dn = delta_n_range(q, shape, n_max);
    for (Eigen::Index i = 0; i < eps_axis.size(); ++i) {
      const double e = eps_axis(i);
      double p = 0.0;
      if (coupling == Coupling::transverse) {
        for (int n = -n_max; n <= n_max; ++n)
          p += peak_transverse(e - n * omega,
                               std::abs(dn[static_cast<std::size_t>(n + n_max)]),
                               gamma);
        if (include_background && A_axis(j) > 0.0) {
          q.eps0 = e;
          p += background(q) - 0.5;
        }
      } else {
        int n = static_cast<int>(std::lround(e / omega));
        n = std::clamp(n, -n_max, n_max);
        // Fold the detuning so the enhanced side always faces zero static
        // bias, mirroring the resonance structure for negative eps0.
        double d = e - n * omega;
        if (n < 0) d = -d;
        if (n == 0) d = std::abs(d);
        p = peak_longitudinal(
            d, std::abs(dn[static_cast<std::size_t>(n + n_max)]), gamma);
      }
      grid.values(i, j) = p;
    }
  }
  return grid;
}

double fit_gamma(const std::vector<double>& eps0, const std::vector<double>& P,
                 double delta_tunnel, const model::DrivingShape& shape,
                 double amplitude, int n_max) {
  if (eps0.size() != P.size() || eps0.size() < 3)
    throw std::invalid_argument("fit_gamma: need >= 3 matched samples");
  const double omega = shape.omega();
  const model::QubitParams q{0.0, delta_tunnel, amplitude};
  const auto dn = delta_n_range(q, shape, n_max);

  auto rms = [&](double log_gamma) {
    const double gamma = std::exp(log_gamma);
    double acc = 0.0;
    for (std::size_t i = 0; i < eps0.size(); ++i) {
      double predicted = 0.0;
      for (int n = -n_max; n <= n_max; ++n)
        predicted += peak_transverse(
            eps0[i] - n * omega,
            std::abs(dn[static_cast<std::size_t>(n + n_max)]), gamma);
      const double d = predicted - P[i];
      acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(eps0.size()));
  };

  // Golden-section search over log gamma: the RMS is smooth and unimodal
  // on any physically sensible bracket.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::log(1e-5), hi = std::log(10.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = rms(x1), f2 = rms(x2);
  for (int it = 0; it < 120; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = rms(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = rms(x2);
    }
  }
  return std::exp(0.5 * (lo + hi));
}

std::array<double, 2> arc_generic(const model::DrivingShape& shape,
                                  double tau_eps) {
  if (!shape.symmetric())
    throw std::invalid_argument(
        "arc_generic: shape is not time-reversal symmetric; use arc_full");
  const double T = shape.period();
  return {2.0 * model::driving_integral(shape, 0.5 * tau_eps),
          2.0 * model::driving_integral(shape, 0.5 * tau_eps + 0.5 * T)};
}

double arc_higher_order(const model::DrivingShape& shape, double tau_eps,
                        int k, int kp) {
  if (!shape.symmetric())
    throw std::invalid_argument(
        "arc_higher_order: shape is not time-reversal symmetric");
  if (k < 1 || kp < 0 || kp > 2 * k - 1)
    throw std::invalid_argument(
        "arc_higher_order: need k >= 1 and 0 <= k' <= 2k - 1");
  const double T = shape.period();
  return 2.0 * k *
         model::driving_integral(shape,
                                 tau_eps / (2.0 * k) + kp * T / (2.0 * k));
}

namespace {

// Bisection refinement of a sign change of fn on [a, b] down to |b-a| < tol.
template <typename F>
double bisect(F&& fn, double a, double b, double fa, double tol) {
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = mid;
    } else {
      a = mid;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

// All roots of a T2-periodic function on [0, T2) by dense scan + bisection;
// tangencies (no sign change, |g| below tangency_tol at a local minimum)
// become single points at the parabolic vertex.
template <typename F>
std::vector<double> periodic_roots(F&& fn, double T2, int scan_points,
                                   double refine_tol, double tangency_tol) {
  const int N = scan_points;
  std::vector<double> g(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j)
    g[static_cast<std::size_t>(j)] = fn(j * T2 / N);

  std::vector<double> roots;
  std::vector<bool> exact(static_cast<std::size_t>(N), false);
  for (int j = 0; j < N; ++j) {
    const double t0 = j * T2 / N;
    const double t1 = (j + 1) * T2 / N;
    const double g0 = g[static_cast<std::size_t>(j)];
    const double g1 = g[static_cast<std::size_t>((j + 1) % N)];
    if (g0 == 0.0) {
      if (!exact[static_cast<std::size_t>(j)]) {
        roots.push_back(t0);
        exact[static_cast<std::size_t>(j)] = true;
      }
      continue;
    }
    if (g1 == 0.0) continue;  // handled when the loop reaches it
    if ((g0 < 0.0) != (g1 < 0.0))
      roots.push_back(bisect(fn, t0, t1, g0, refine_tol));
  }
  // Tangency sweep: local minima of |g| without an adjacent sign change.
  for (int j = 0; j < N; ++j) {
    const double gp = g[static_cast<std::size_t>((j + N - 1) % N)];
    const double g0 = g[static_cast<std::size_t>(j)];
    const double gn = g[static_cast<std::size_t>((j + 1) % N)];
    if (g0 == 0.0) continue;
    if (std::abs(g0) >= tangency_tol) continue;
    if ((gp < 0.0) != (g0 < 0.0) || (gn < 0.0) != (g0 < 0.0)) continue;
    if (std::abs(g0) > std::abs(gp) || std::abs(g0) > std::abs(gn)) continue;
    // Parabolic vertex through the three scan samples of g.
    const double h = T2 / N;
    const double denom = gp - 2.0 * g0 + gn;
    double t = j * h;
    if (denom != 0.0) t += 0.5 * h * (gp - gn) / denom;
    const double step = T2 / N;
    const bool dup = std::any_of(roots.begin(), roots.end(), [&](double r) {
      double d = std::abs(r - t);
      d = std::min(d, T2 - d);
      return d < step;
    });
    if (!dup) roots.push_back(std::fmod(t + T2, T2));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<ArcCurve> arc_full(const model::DrivingShape& shape,
                               const std::vector<double>& tau_eps_grid,
                               int scan_points) {
  if (tau_eps_grid.empty())
    throw std::invalid_argument("arc_full: empty tau_eps grid");
  if (!std::is_sorted(tau_eps_grid.begin(), tau_eps_grid.end()))
    throw std::invalid_argument("arc_full: tau_eps grid must be ascending");
  if (scan_points < 16)
    throw std::invalid_argument("arc_full: scan_points too small");

  const double T = shape.period();
  const double T2 = 2.0 * T;
  const double refine_tol = 1e-10;
  const double tangency_tol = 1e-8;
  // Roots move continuously with tau_eps; anything further than this is a
  // different branch (loop open/close), not continuation.
  const double match_threshold = 0.2 * T;

  struct Branch {
    int id;
    double last_t;
    bool active;
    ArcCurve curve;
  };
  std::vector<Branch> branches;
  int next_id = 0;

  for (double te : tau_eps_grid) {
    const double he = 0.5 * te;
    auto g = [&](double t) {
      return model::evaluate_driving(shape, t + he) -
             model::evaluate_driving(shape, t - he);
    };
    // Detect the identically-zero slices (tau_eps = 0 or T): fall back to
    // the limiting condition, roots of d/d tau_eps g = (f'(t+he)+f'(t-he))/2.
    double gmax = 0.0;
    for (int j = 0; j < 64; ++j)
      gmax = std::max(gmax, std::abs(g(j * T2 / 64 + 0.123 * T2 / 64)));
    std::vector<double> roots;
    if (gmax < 1e-12) {
      auto h = [&](double t) {
        return model::driving_derivative(shape, t + he) +
               model::driving_derivative(shape, t - he);
      };
      roots = periodic_roots(h, T2, scan_points, refine_tol, 0.0);
    } else {
      roots = periodic_roots(g, T2, scan_points, refine_tol, tangency_tol);
    }

    // Thread roots onto branches by smallest periodic |t| displacement.
    struct Cand {
      double cost;
      std::size_t branch;
      std::size_t root;
    };
    std::vector<Cand> cands;
    for (std::size_t bi = 0; bi < branches.size(); ++bi) {
      if (!branches[bi].active) continue;
      for (std::size_t ri = 0; ri < roots.size(); ++ri) {
        double d = std::abs(roots[ri] - branches[bi].last_t);
        d = std::min(d, T2 - d);
        if (d <= match_threshold) cands.push_back({d, bi, ri});
      }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& l, const Cand& r) { return l.cost < r.cost; });
    std::vector<bool> branch_used(branches.size(), false);
    std::vector<bool> root_used(roots.size(), false);
    for (const auto& cd : cands) {
      if (branch_used[cd.branch] || root_used[cd.root]) continue;
      branch_used[cd.branch] = true;
      root_used[cd.root] = true;
      Branch& b = branches[cd.branch];
      const double t = roots[cd.root];
      b.last_t = t;
      b.curve.samples.push_back(
          {te, model::driving_integral(shape, t + he) -
                   model::driving_integral(shape, t - he)});
      b.curve.root_times.push_back(t);
    }
    for (std::size_t bi = 0; bi < branches.size(); ++bi)
      if (branches[bi].active && !branch_used[bi]) branches[bi].active = false;
    for (std::size_t ri = 0; ri < roots.size(); ++ri) {
      if (root_used[ri]) continue;
      Branch b;
      b.id = next_id++;
      b.last_t = roots[ri];
      b.active = true;
      b.curve.id = b.id;
      b.curve.samples.push_back(
          {te, model::driving_integral(shape, roots[ri] + he) -
                   model::driving_integral(shape, roots[ri] - he)});
      b.curve.root_times.push_back(roots[ri]);
      branches.push_back(std::move(b));
    }
  }

  std::vector<ArcCurve> out;
  out.reserve(branches.size());
  for (auto& b : branches) out.push_back(std::move(b.curve));
  std::sort(out.begin(), out.end(),
            [](const ArcCurve& l, const ArcCurve& r) { return l.id < r.id; });
  return out;
}

std::vector<double> overdamped_spectrum(const model::DrivingShape& shape,
                                        double tau_eps,
                                        const std::vector<double>& tau_A_grid) {
  if (tau_A_grid.size() < 2)
    throw std::invalid_argument("overdamped_spectrum: grid too small");
  const double d = tau_A_grid[1] - tau_A_grid[0];
  if (!(d > 0.0))
    throw std::invalid_argument("overdamped_spectrum: grid must ascend");
  for (std::size_t i = 1; i + 1 < tau_A_grid.size(); ++i)
    if (std::abs((tau_A_grid[i + 1] - tau_A_grid[i]) - d) > 1e-9 * d)
      throw std::invalid_argument("overdamped_spectrum: grid must be uniform");

  const double T = shape.period();
  const double he = 0.5 * tau_eps;
  const int N = 1 << 16;
  std::vector<double> w(tau_A_grid.size(), 0.0);
  const double mass = 1.0 / (static_cast<double>(N) * d);
  for (int j = 0; j < N; ++j) {
    const double t = j * T / N;
    const double G = model::driving_integral(shape, t + he) -
                     model::driving_integral(shape, t - he);
    const double pos = (G - tau_A_grid[0]) / d;
    const auto idx = static_cast<long>(std::lround(pos));
    if (idx >= 0 && idx < static_cast<long>(w.size()))
      w[static_cast<std::size_t>(idx)] += mass;
  }
  return w;
}

}  // namespace lzsm::analytic
