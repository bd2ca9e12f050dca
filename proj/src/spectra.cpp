#include "lzsm/spectra.hpp"

#include <fftw3.h>

#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lzsm/floquet.hpp"
#include "lzsm/redfield.hpp"

namespace lzsm::spectra {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_axis(const char* name, const Eigen::VectorXd& axis,
                Eigen::Index min_size) {
  if (axis.size() < min_size)
    throw std::invalid_argument(std::string(name) + ": axis too short");
  if (!axis.allFinite())
    throw std::invalid_argument(std::string(name) + ": non-finite axis");
  if (axis.size() < 2) return;
  const double d = axis(1) - axis(0);
  if (!(d > 0.0))
    throw std::invalid_argument(std::string(name) +
                                ": axis not strictly increasing");
  for (Eigen::Index i = 0; i + 1 < axis.size(); ++i)
    if (std::abs((axis(i + 1) - axis(i)) - d) > 1e-9 * d)
      throw std::invalid_argument(std::string(name) + ": axis not uniform");
}

// FFTW plan creation/destruction shares global state; serialize it.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void PatternGrid::validate() const {
  check_axis("PatternGrid.eps_axis", eps_axis, 1);
  check_axis("PatternGrid.A_axis", A_axis, 1);
  if (values.rows() != eps_axis.size() || values.cols() != A_axis.size())
    throw std::invalid_argument("PatternGrid: values shape mismatch");
  if (!values.allFinite())
    throw std::invalid_argument("PatternGrid: non-finite values");
}

double PatternGrid::eps_step() const {
  if (eps_axis.size() < 2)
    throw std::invalid_argument("PatternGrid.eps_step: axis too short");
  return eps_axis(1) - eps_axis(0);
}

double PatternGrid::A_step() const {
  if (A_axis.size() < 2)
    throw std::invalid_argument("PatternGrid.A_step: axis too short");
  return A_axis(1) - A_axis(0);
}

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("SolverOptions: tol <= 0");
  if (K < 1) throw std::invalid_argument("SolverOptions: K < 1");
  if (K_X < 2 * K)
    throw std::invalid_argument("SolverOptions: K_X must be >= 2 K");
  if (K_modes < K_X)
    throw std::invalid_argument("SolverOptions: K_modes must be >= K_X");
  if (M < 4 * (K_modes + 1) || (M & (M - 1)) != 0)
    throw std::invalid_argument(
        "SolverOptions: M must be a power of two >= 4 (K_modes + 1)");
  if (workers < 1) throw std::invalid_argument("SolverOptions: workers < 1");
}

PointResult solve_point(const model::QubitParams& q,
                        const model::DrivingShape& shape,
                        const model::BathParams& bath,
                        const SolverOptions& opts) {
  opts.validate();
  const auto sol = floquet::floquet_solve(q, shape, opts.tol, opts.M,
                                          opts.K_modes);
  const auto X = floquet::transition_elements(
      sol, model::coupling_operator(bath), opts.K_X);
  const auto blocks = redfield::build_liouvillian(sol, X, bath, opts.K);
  const auto state = redfield::steady_state(blocks, opts.K);

  PointResult r;
  r.population = redfield::excited_population(state, sol, q);
  r.residual = state.residual;
  r.cond_estimate = state.cond_estimate;
  r.trace_defect = state.trace_defect;
  r.min_eigenvalue = state.min_eigenvalue;
  r.near_degenerate = sol.near_degenerate;
  r.quasienergy = sol.quasienergy;
  return r;
}

namespace {

std::string default_provenance(const model::QubitParams& q,
                               const model::DrivingShape& shape,
                               const model::BathParams& bath,
                               const Eigen::VectorXd& eps_axis,
                               const Eigen::VectorXd& A_axis,
                               const SolverOptions& opts) {
  std::ostringstream os;
  os.precision(17);
  os << "sweep delta=" << q.delta << " alpha=" << bath.alpha
     << " beta=" << bath.beta << " theta=" << bath.theta
     << " omega=" << shape.omega() << " harmonics=";
  bool first = true;
  for (const auto& h : shape.harmonics()) {
    if (!first) os << ";";
    first = false;
    os << h.k << ":" << h.a << ":" << h.b;
  }
  os << " eps=[" << eps_axis(0) << "," << eps_axis(eps_axis.size() - 1) << "]x"
     << eps_axis.size() << " A=[" << A_axis(0) << ","
     << A_axis(A_axis.size() - 1) << "]x" << A_axis.size()
     << " tol=" << opts.tol << " M=" << opts.M << " K_modes=" << opts.K_modes
     << " K_X=" << opts.K_X << " K=" << opts.K;
  return os.str();
}

void fill_nearest(Eigen::MatrixXd& values) {
  const Eigen::Index nr = values.rows(), nc = values.cols();
  Eigen::MatrixXd filled = values;
  for (Eigen::Index i = 0; i < nr; ++i) {
    for (Eigen::Index j = 0; j < nc; ++j) {
      if (std::isfinite(values(i, j))) continue;
      // Expanding square search; nearest finite donor by index distance,
      // ties broken by smaller row then column for determinism.
      long best = -1;
      Eigen::Index bi = 0, bj = 0;
      const Eigen::Index rmax = std::max(nr, nc);
      for (Eigen::Index r = 1; r <= rmax; ++r) {
        for (Eigen::Index di = -r; di <= r; ++di) {
          for (Eigen::Index dj = -r; dj <= r; ++dj) {
            if (std::max(std::abs(di), std::abs(dj)) != r) continue;
            const Eigen::Index ii = i + di, jj = j + dj;
            if (ii < 0 || ii >= nr || jj < 0 || jj >= nc) continue;
            if (!std::isfinite(values(ii, jj))) continue;
            const long d2 = static_cast<long>(di * di + dj * dj);
            if (best < 0 || d2 < best ||
                (d2 == best && (ii < bi || (ii == bi && jj < bj)))) {
              best = d2;
              bi = ii;
              bj = jj;
            }
          }
        }
        if (best >= 0 && static_cast<long>(r) * static_cast<long>(r) >= best)
          break;  // no closer donor can exist outside this ring
      }
      if (best < 0)
        throw std::runtime_error("sweep_pattern: no finite values to fill from");
      filled(i, j) = values(bi, bj);
    }
  }
  values = filled;
}

}  // namespace

PatternGrid sweep_pattern(const model::QubitParams& q_template,
                          const model::DrivingShape& shape,
                          const model::BathParams& bath,
                          const Eigen::VectorXd& eps_axis,
                          const Eigen::VectorXd& A_axis,
                          const SolverOptions& opts, std::string provenance) {
  opts.validate();
  bath.validate();
  if (!(bath.alpha > 0.0))
    throw std::invalid_argument("sweep_pattern: requires alpha > 0");
  check_axis("sweep_pattern.eps_axis", eps_axis, 1);
  check_axis("sweep_pattern.A_axis", A_axis, 1);

  const Eigen::Index n_eps = eps_axis.size();
  const Eigen::Index n_A = A_axis.size();
  const std::size_t total = static_cast<std::size_t>(n_eps * n_A);

  PatternGrid grid;
  grid.eps_axis = eps_axis;
  grid.A_axis = A_axis;
  grid.values.setConstant(n_eps, n_A,
                          std::numeric_limits<double>::quiet_NaN());
  grid.provenance =
      provenance.empty()
          ? default_provenance(q_template, shape, bath, eps_axis, A_axis, opts)
          : std::move(provenance);

  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  std::mutex log_mutex;
  std::vector<std::string> failure_log;

  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      const Eigen::Index i = static_cast<Eigen::Index>(idx) / n_A;
      const Eigen::Index j = static_cast<Eigen::Index>(idx) % n_A;
      model::QubitParams q = q_template;
      q.eps0 = eps_axis(i);
      q.amplitude = A_axis(j);
      try {
        grid.values(i, j) = solve_point(q, shape, bath, opts).population;
      } catch (const std::exception& e) {
        failures.fetch_add(1);
        std::lock_guard<std::mutex> lock(log_mutex);
        if (failure_log.size() < 8) {
          std::ostringstream os;
          os << "(eps0=" << eps_axis(i) << ", A=" << A_axis(j)
             << "): " << e.what();
          failure_log.push_back(os.str());
        }
      }
    }
  };

  const int n_threads = std::max(1, opts.workers);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads - 1));
  for (int t = 0; t + 1 < n_threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  grid.failed_points = failures.load();
  if (static_cast<double>(grid.failed_points) >
      0.01 * static_cast<double>(total)) {
    std::ostringstream os;
    os << "sweep_pattern: " << grid.failed_points << " of " << total
       << " grid points failed";
    for (const auto& line : failure_log) os << "\n  " << line;
    throw std::runtime_error(os.str());
  }
  if (grid.failed_points > 0) fill_nearest(grid.values);
  grid.validate();
  return grid;
}

SpectrumGrid fourier2d(const PatternGrid& p, int pad, bool subtract_mean) {
  p.validate();
  if (pad != 1 && pad != 2 && pad != 4)
    throw std::invalid_argument("fourier2d: pad must be 1, 2, or 4");
  if (p.eps_axis.size() < 2 || p.A_axis.size() < 2)
    throw std::invalid_argument("fourier2d: need >= 2 points per axis");

  const int ne = static_cast<int>(p.eps_axis.size());
  const int na = static_cast<int>(p.A_axis.size());
  const int Me = ne * pad;
  const int Na = na * pad;
  const double de = p.eps_step();
  const double dA = p.A_step();
  const double mean = subtract_mean ? p.values.mean() : 0.0;

  std::vector<std::complex<double>> in(static_cast<std::size_t>(Me) * Na,
                                       {0.0, 0.0});
  std::vector<std::complex<double>> out(in.size());
  for (int i = 0; i < ne; ++i)
    for (int j = 0; j < na; ++j)
      in[static_cast<std::size_t>(i) * Na + j] = p.values(i, j) - mean;

  {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(fftw_mutex());
      plan = fftw_plan_dft_2d(Me, Na,
                              reinterpret_cast<fftw_complex*>(in.data()),
                              reinterpret_cast<fftw_complex*>(out.data()),
                              FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("fourier2d: fftw plan failed");
    fftw_execute(plan);
    {
      std::lock_guard<std::mutex> lock(fftw_mutex());
      fftw_destroy_plan(plan);
    }
  }

  SpectrumGrid s;
  s.tau_eps_axis.resize(Me);
  s.tau_A_axis.resize(Na);
  for (int i = 0; i < Me; ++i)
    s.tau_eps_axis(i) =
        2.0 * std::numbers::pi * (i - Me / 2) / (Me * de);
  for (int j = 0; j < Na; ++j)
    s.tau_A_axis(j) = 2.0 * std::numbers::pi * (j - Na / 2) / (Na * dA);

  s.values.resize(Me, Na);
  for (int i = 0; i < Me; ++i) {
    const int src_i = (i + Me / 2) % Me;  // fftshift
    for (int j = 0; j < Na; ++j) {
      const int src_j = (j + Na / 2) % Na;
      const std::complex<double> phase =
          std::exp(-kI * (p.eps_axis(0) * s.tau_eps_axis(i) +
                          p.A_axis(0) * s.tau_A_axis(j)));
      s.values(i, j) =
          de * dA * phase * out[static_cast<std::size_t>(src_i) * Na + src_j];
    }
  }

  s.eps_origin = p.eps_axis(0);
  s.A_origin = p.A_axis(0);
  s.eps_step = de;
  s.A_step = dA;
  s.n_eps = ne;
  s.n_A = na;
  s.pad = pad;
  s.mean_removed = mean;
  s.provenance = p.provenance + " | fourier2d pad=" + std::to_string(pad) +
                 (subtract_mean ? " mean_subtracted=1" : " mean_subtracted=0");
  return s;
}

PatternGrid inverse_fourier2d(const SpectrumGrid& s) {
  if (s.n_eps < 2 || s.n_A < 2 || s.pad < 1)
    throw std::invalid_argument("inverse_fourier2d: invalid geometry");
  const int Me = s.n_eps * s.pad;
  const int Na = s.n_A * s.pad;
  if (s.values.rows() != Me || s.values.cols() != Na ||
      s.tau_eps_axis.size() != Me || s.tau_A_axis.size() != Na)
    throw std::invalid_argument("inverse_fourier2d: shape mismatch");
  if (!(s.eps_step > 0.0) || !(s.A_step > 0.0))
    throw std::invalid_argument("inverse_fourier2d: invalid steps");

  std::vector<std::complex<double>> in(static_cast<std::size_t>(Me) * Na);
  std::vector<std::complex<double>> out(in.size());
  const double norm = s.eps_step * s.A_step;
  for (int i = 0; i < Me; ++i) {
    const int src_i = (i + Me / 2) % Me;
    for (int j = 0; j < Na; ++j) {
      const int src_j = (j + Na / 2) % Na;
      const std::complex<double> phase =
          std::exp(kI * (s.eps_origin * s.tau_eps_axis(i) +
                         s.A_origin * s.tau_A_axis(j)));
      in[static_cast<std::size_t>(src_i) * Na + src_j] =
          s.values(i, j) * phase / norm;
    }
  }

  {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(fftw_mutex());
      plan = fftw_plan_dft_2d(Me, Na,
                              reinterpret_cast<fftw_complex*>(in.data()),
                              reinterpret_cast<fftw_complex*>(out.data()),
                              FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr)
      throw std::runtime_error("inverse_fourier2d: fftw plan failed");
    fftw_execute(plan);
    {
      std::lock_guard<std::mutex> lock(fftw_mutex());
      fftw_destroy_plan(plan);
    }
  }

  PatternGrid p;
  p.eps_axis.resize(s.n_eps);
  p.A_axis.resize(s.n_A);
  for (int i = 0; i < s.n_eps; ++i)
    p.eps_axis(i) = s.eps_origin + i * s.eps_step;
  for (int j = 0; j < s.n_A; ++j) p.A_axis(j) = s.A_origin + j * s.A_step;
  p.values.resize(s.n_eps, s.n_A);
  const double scale = 1.0 / (static_cast<double>(Me) * Na);
  for (int i = 0; i < s.n_eps; ++i)
    for (int j = 0; j < s.n_A; ++j)
      p.values(i, j) =
          out[static_cast<std::size_t>(i) * Na + j].real() * scale +
          s.mean_removed;
  p.provenance = s.provenance + " | inverse";
  p.validate();
  return p;
}

ArcProfile sample_arc(const SpectrumGrid& s, const analytic::ArcCurve& curve) {
  if (s.tau_eps_axis.size() < 2 || s.tau_A_axis.size() < 2)
    throw std::invalid_argument("sample_arc: spectrum too small");
  const double e0 = s.tau_eps_axis(0);
  const double a0 = s.tau_A_axis(0);
  const double dte = s.tau_eps_axis(1) - s.tau_eps_axis(0);
  const double dta = s.tau_A_axis(1) - s.tau_A_axis(0);
  const Eigen::Index ne = s.tau_eps_axis.size();
  const Eigen::Index na = s.tau_A_axis.size();

  ArcProfile prof;
  for (const auto& pt : curve.samples) {
    const double u = (pt[0] - e0) / dte;
    const double v = (pt[1] - a0) / dta;
    const auto i0 = static_cast<Eigen::Index>(std::floor(u));
    const auto j0 = static_cast<Eigen::Index>(std::floor(v));
    if (i0 < 0 || i0 + 1 >= ne || j0 < 0 || j0 + 1 >= na) {
      ++prof.dropped;
      continue;
    }
    const double fu = u - static_cast<double>(i0);
    const double fv = v - static_cast<double>(j0);
    const double m00 = std::abs(s.values(i0, j0));
    const double m10 = std::abs(s.values(i0 + 1, j0));
    const double m01 = std::abs(s.values(i0, j0 + 1));
    const double m11 = std::abs(s.values(i0 + 1, j0 + 1));
    prof.tau_eps.push_back(pt[0]);
    prof.amplitude.push_back((1.0 - fu) * (1.0 - fv) * m00 +
                             fu * (1.0 - fv) * m10 + (1.0 - fu) * fv * m01 +
                             fu * fv * m11);
  }
  return prof;
}

namespace {

struct LineFit {
  double slope;
  double intercept;
  double rms;
  int count;
};

std::optional<LineFit> fit_log_line(const ArcProfile& profile, double lo,
                                    double hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < profile.tau_eps.size(); ++i) {
    const double x = profile.tau_eps[i];
    if (x < lo || x > hi) continue;
    if (!(profile.amplitude[i] > 0.0)) return std::nullopt;
    const double y = std::log(profile.amplitude[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 8) return std::nullopt;
  const double det = n * sxx - sx * sx;
  if (!(det > 0.0)) return std::nullopt;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  f.count = n;
  double acc = 0.0;
  for (std::size_t i = 0; i < profile.tau_eps.size(); ++i) {
    const double x = profile.tau_eps[i];
    if (x < lo || x > hi) continue;
    const double r = std::log(profile.amplitude[i]) - (f.intercept + f.slope * x);
    acc += r * r;
  }
  f.rms = std::sqrt(acc / n);
  return f;
}

}  // namespace

DecayFit fit_decay(const ArcProfile& profile, double window_lo,
                   double window_hi) {
  if (!(window_hi > window_lo))
    throw std::invalid_argument("fit_decay: degenerate window");
  const auto base = fit_log_line(profile, window_lo, window_hi);
  if (!base)
    throw std::invalid_argument(
        "fit_decay: window needs >= 8 strictly positive samples");

  DecayFit fit;
  fit.lambda = -base->slope;
  fit.intercept = base->intercept;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.residual_rms = base->rms;

  const double shift = 0.1 * (window_hi - window_lo);
  double spread = 0.0;
  const std::array<std::array<double, 2>, 4> variants{{
      {{window_lo + shift, window_hi}},
      {{window_lo - shift, window_hi}},
      {{window_lo, window_hi + shift}},
      {{window_lo, window_hi - shift}},
  }};
  for (const auto& w : variants) {
    const auto alt = fit_log_line(profile, w[0], w[1]);
    if (alt) spread = std::max(spread, std::abs(-alt->slope - fit.lambda));
  }
  fit.uncertainty = spread;
  return fit;
}

std::array<double, 2> default_decay_window(double period) {
  if (!(period > 0.0))
    throw std::invalid_argument("default_decay_window: period <= 0");
  return {period / 8.0, 3.0 * period / 8.0};
}

double pattern_overlap(const PatternGrid& a, const PatternGrid& b,
                       bool subtract_mean) {
  if (a.eps_axis.size() != b.eps_axis.size() ||
      a.A_axis.size() != b.A_axis.size() ||
      (a.eps_axis.array() != b.eps_axis.array()).any() ||
      (a.A_axis.array() != b.A_axis.array()).any())
    throw std::invalid_argument("pattern_overlap: axes differ");
  a.validate();
  b.validate();

  const double ma = subtract_mean ? a.values.mean() : 0.0;
  const double mb = subtract_mean ? b.values.mean() : 0.0;
  double uv = 0.0, uu = 0.0, vv = 0.0;
  for (Eigen::Index j = 0; j < a.values.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.values.rows(); ++i) {
      const double x = a.values(i, j) - ma;
      const double y = b.values(i, j) - mb;
      uv += x * y;
      uu += x * x;
      vv += y * y;
    }
  }
  if (!(uu > 0.0) || !(vv > 0.0))
    throw std::invalid_argument("pattern_overlap: zero-norm pattern");
  // Cauchy-Schwarz equality (identical up to scale) must give exactly +-1.
  if (uv * uv == uu * vv) return uv > 0.0 ? 1.0 : -1.0;
  const double r = uv / std::sqrt(uu * vv);
  return std::clamp(r, -1.0, 1.0);
}

std::optional<double> ridge_near(const SpectrumGrid& s, double tau_eps,
                                 double tau_A_guess, double halfwidth) {
  if (s.tau_eps_axis.size() < 2 || s.tau_A_axis.size() < 3)
    throw std::invalid_argument("ridge_near: spectrum too small");
  if (!(halfwidth > 0.0))
    throw std::invalid_argument("ridge_near: halfwidth <= 0");
  const double dte = s.tau_eps_axis(1) - s.tau_eps_axis(0);
  const double dta = s.tau_A_axis(1) - s.tau_A_axis(0);
  const auto ie = static_cast<Eigen::Index>(
      std::lround((tau_eps - s.tau_eps_axis(0)) / dte));
  if (ie < 0 || ie >= s.tau_eps_axis.size()) return std::nullopt;

  const auto lo = static_cast<Eigen::Index>(
      std::ceil((tau_A_guess - halfwidth - s.tau_A_axis(0)) / dta));
  const auto hi = static_cast<Eigen::Index>(
      std::floor((tau_A_guess + halfwidth - s.tau_A_axis(0)) / dta));
  const Eigen::Index jlo = std::max<Eigen::Index>(lo, 1);
  const Eigen::Index jhi = std::min<Eigen::Index>(hi, s.tau_A_axis.size() - 2);
  if (jhi < jlo) return std::nullopt;

  Eigen::Index best = -1;
  double best_mag = -1.0;
  for (Eigen::Index j = jlo; j <= jhi; ++j) {
    const double m = std::abs(s.values(ie, j));
    if (std::abs(s.values(ie, j - 1)) <= m &&
        std::abs(s.values(ie, j + 1)) <= m && m > best_mag) {
      best = j;
      best_mag = m;
    }
  }
  if (best < 0) return std::nullopt;

  const double mm = std::abs(s.values(ie, best - 1));
  const double m0 = std::abs(s.values(ie, best));
  const double mp = std::abs(s.values(ie, best + 1));
  const double denom = mm - 2.0 * m0 + mp;
  double offset = 0.0;
  if (denom != 0.0) offset = 0.5 * (mm - mp) / denom;
  if (std::abs(offset) > 1.0) offset = 0.0;
  return s.tau_A_axis(best) + offset * dta;
}

}  // namespace lzsm::spectra
