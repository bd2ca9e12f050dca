// lzsm_cli.cpp — Batch front end: config-driven pipelines and canned
// figure-scale reproduction runs.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lzsm/analytic.hpp"
#include "lzsm/config.hpp"
#include "lzsm/floquet.hpp"
#include "lzsm/io.hpp"
#include "lzsm/model.hpp"
#include "lzsm/spectra.hpp"

namespace {

using lzsm::config::RunConfig;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_pattern_any(const std::string& path,
                       const lzsm::spectra::PatternGrid& grid) {
  if (ends_with(path, ".csv"))
    lzsm::io::write_pattern_csv(path, grid);
  else
    lzsm::io::write_pattern(path, grid);
  std::cout << "wrote " << path << "\n";
}

void write_spectrum_any(const std::string& path,
                        const lzsm::spectra::SpectrumGrid& s) {
  if (ends_with(path, ".csv"))
    lzsm::io::write_spectrum_csv(path, s);
  else
    lzsm::io::write_spectrum(path, s);
  std::cout << "wrote " << path << "\n";
}

double parse_coupling(const std::string& v) {
  if (v == "x") return 0.0;
  if (v == "z") return std::numbers::pi / 2.0;
  if (v.rfind("mixed:", 0) == 0) return std::stod(v.substr(6));
  throw CLI::ValidationError("--coupling", "must be x, z, or mixed:<theta>");
}

std::ofstream open_text(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << std::setprecision(17);
  return os;
}

void run_floquet(const RunConfig& cfg) {
  const auto shape = cfg.shape();
  const auto A_axis = cfg.A_axis();
  auto os = open_text(cfg.out_path);
  std::istringstream echo_lines(cfg.echo());
  std::string line;
  while (std::getline(echo_lines, line)) os << "# " << line << "\n";
  os << "A,quasienergy_0,quasienergy_1,near_degenerate,max_local_error,"
        "unitarity_defect\n";
  std::optional<lzsm::floquet::FloquetSolution> prev;
  for (Eigen::Index j = 0; j < A_axis.size(); ++j) {
    lzsm::model::QubitParams q = cfg.qubit;
    q.amplitude = A_axis(j);
    auto sol = lzsm::floquet::floquet_solve(q, shape, cfg.solver.tol,
                                            cfg.solver.M, cfg.solver.K_modes);
    if (prev) lzsm::floquet::match_labels(*prev, sol);
    os << A_axis(j) << "," << sol.quasienergy[0] << "," << sol.quasienergy[1]
       << "," << (sol.near_degenerate ? 1 : 0) << "," << sol.max_local_error
       << "," << sol.unitarity_defect << "\n";
    prev = std::move(sol);
  }
  std::cout << "wrote " << cfg.out_path << "\n";
}

lzsm::spectra::PatternGrid sweep_from_config(const RunConfig& cfg,
                                             const std::string& note) {
  return lzsm::spectra::sweep_pattern(cfg.qubit, cfg.shape(), cfg.bath,
                                      cfg.eps_axis(), cfg.A_axis(), cfg.solver,
                                      cfg.echo() + note);
}

void run_pattern(const RunConfig& cfg) {
  const auto grid = sweep_from_config(cfg, "\n# pipeline: pattern");
  if (grid.failed_points > 0)
    std::cerr << "warning: " << grid.failed_points
              << " grid points failed and were filled by nearest neighbor\n";
  write_pattern_any(cfg.out_path, grid);
}

void run_fft(const RunConfig& cfg, const std::string& in_path) {
  const auto grid = lzsm::io::read_pattern(in_path);
  const auto spec = lzsm::spectra::fourier2d(grid, cfg.pad);
  write_spectrum_any(cfg.out_path, spec);
}

void run_arcs(const RunConfig& cfg, int points) {
  const auto shape = cfg.shape();
  const double T = shape.period();
  std::vector<double> tau_eps(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    tau_eps[static_cast<std::size_t>(i)] = i * T / (points - 1);
  const auto arcs = lzsm::analytic::arc_full(shape, tau_eps);
  lzsm::io::write_arcs_csv(cfg.out_path, arcs, cfg.echo());
  std::cout << "wrote " << cfg.out_path << " (" << arcs.size()
            << " branches)\n";
}

void run_analytic(const RunConfig& cfg, std::optional<double> gamma_flag,
                  int n_max) {
  using lzsm::analytic::Coupling;
  Coupling coupling;
  if (cfg.bath.theta == 0.0)
    coupling = Coupling::transverse;
  else if (cfg.bath.theta == std::numbers::pi / 2.0)
    coupling = Coupling::longitudinal;
  else
    throw std::runtime_error(
        "analytic: closed forms exist for coupling x or z only");
  const double gamma =
      gamma_flag ? *gamma_flag
                 : lzsm::analytic::golden_rule_rates(cfg.omega, cfg.bath).gamma;
  auto grid = lzsm::analytic::analytic_pattern(
      cfg.eps_axis(), cfg.A_axis(), cfg.qubit.delta, cfg.shape(), gamma,
      coupling, n_max, coupling == Coupling::transverse);
  grid.provenance = cfg.echo() + "\n# pipeline: analytic gamma=" +
                    std::to_string(gamma) + " n_max=" + std::to_string(n_max);
  write_pattern_any(cfg.out_path, grid);
}

void run_decay(const RunConfig& cfg) {
  const auto shape = cfg.shape();
  const double T = shape.period();
  const auto grid = sweep_from_config(cfg, "\n# pipeline: decay");
  const auto spec = lzsm::spectra::fourier2d(grid, cfg.pad);

  lzsm::analytic::ArcCurve curve;
  curve.id = 0;
  const int n_samples = 129;
  for (int i = 0; i < n_samples; ++i) {
    const double te = 0.5 * T * i / (n_samples - 1);
    curve.samples.push_back({te, lzsm::analytic::arc_generic(shape, te)[0]});
  }
  const auto profile = lzsm::spectra::sample_arc(spec, curve);
  const auto window = lzsm::spectra::default_decay_window(T);
  const auto fit = lzsm::spectra::fit_decay(profile, window[0], window[1]);

  std::ostringstream note;
  note.precision(17);
  note << cfg.echo() << "\n# pipeline: decay\n# lambda=" << fit.lambda
       << " uncertainty=" << fit.uncertainty
       << " residual_rms=" << fit.residual_rms << " window=[" << fit.window_lo
       << "," << fit.window_hi << "]";
  lzsm::io::write_profile_csv(cfg.out_path, profile, note.str());
  std::printf("lambda = %.6f +- %.6f (residual rms %.3g, window [%.4f, %.4f])\n",
              fit.lambda, fit.uncertainty, fit.residual_rms, fit.window_lo,
              fit.window_hi);
  std::cout << "wrote " << cfg.out_path << "\n";
}

void run_overlap(const RunConfig& cfg, int n_theta) {
  if (n_theta < 2) throw std::runtime_error("overlap: need >= 2 theta points");
  RunConfig ref_cfg = cfg;
  ref_cfg.bath.theta = 0.0;
  const auto ref_x = sweep_from_config(ref_cfg, "\n# overlap reference x");
  ref_cfg.bath.theta = std::numbers::pi / 2.0;
  const auto ref_z = sweep_from_config(ref_cfg, "\n# overlap reference z");

  auto os = open_text(cfg.out_path);
  std::istringstream echo_lines(cfg.echo());
  std::string line;
  while (std::getline(echo_lines, line)) os << "# " << line << "\n";
  os << "theta,r_x,r_z\n";
  for (int i = 0; i < n_theta; ++i) {
    RunConfig point_cfg = cfg;
    point_cfg.bath.theta =
        (std::numbers::pi / 2.0) * i / (n_theta - 1);
    if (i == 0) point_cfg.bath.theta = 0.0;
    if (i == n_theta - 1) point_cfg.bath.theta = std::numbers::pi / 2.0;
    const auto p = sweep_from_config(point_cfg, "\n# overlap scan point");
    os << point_cfg.bath.theta << ","
       << lzsm::spectra::pattern_overlap(p, ref_x) << ","
       << lzsm::spectra::pattern_overlap(p, ref_z) << "\n";
  }
  std::cout << "wrote " << cfg.out_path << "\n";
}

RunConfig desk_config(const RunConfig& base) {
  RunConfig cfg = base;
  cfg.qubit = {0.0, 0.5, 10.0};
  cfg.bath = {1e-3, 10.0, 0.0};
  cfg.eps_min = -10.0;
  cfg.eps_max = 10.0;
  cfg.eps_points = 61;
  cfg.A_min = 0.0;
  cfg.A_max = 15.0;
  cfg.A_points = 41;
  return cfg;
}

void write_slice_comparison(const std::string& path, const RunConfig& cfg,
                            const lzsm::spectra::PatternGrid& numeric,
                            bool transverse) {
  const auto shape = cfg.shape();
  const double A = cfg.A_max;
  const int n_max = 14;
  const lzsm::model::QubitParams q{0.0, cfg.qubit.delta, A};
  const auto dn = lzsm::analytic::delta_n_range(q, shape, n_max);

  // One global width fitted to the slice (transverse); z-coupling uses the
  // static-limit rate at the drive frequency.
  double gamma;
  if (transverse) {
    std::vector<double> es(static_cast<std::size_t>(numeric.eps_axis.size()));
    std::vector<double> ps(es.size());
    for (Eigen::Index i = 0; i < numeric.eps_axis.size(); ++i) {
      es[static_cast<std::size_t>(i)] = numeric.eps_axis(i);
      ps[static_cast<std::size_t>(i)] = numeric.values(i, 0);
    }
    gamma = lzsm::analytic::fit_gamma(es, ps, cfg.qubit.delta, shape, A, n_max);
  } else {
    gamma = lzsm::analytic::golden_rule_rates(cfg.omega, cfg.bath).gamma;
  }

  auto os = open_text(path);
  std::istringstream echo_lines(cfg.echo());
  std::string line;
  while (std::getline(echo_lines, line)) os << "# " << line << "\n";
  os << "# fitted_gamma = " << gamma << "\n";
  os << "eps0,P_numeric,P_analytic,P_background\n";
  for (Eigen::Index i = 0; i < numeric.eps_axis.size(); ++i) {
    const double e = numeric.eps_axis(i);
    double p_an;
    if (transverse) {
      p_an = 0.0;
      for (int n = -n_max; n <= n_max; ++n)
        p_an += lzsm::analytic::peak_transverse(
            e - n * cfg.omega,
            std::abs(dn[static_cast<std::size_t>(n + n_max)]), gamma);
    } else {
      const int n = std::clamp(
          static_cast<int>(std::lround(e / cfg.omega)), -n_max, n_max);
      const auto& c = dn[static_cast<std::size_t>(n + n_max)];
      p_an = lzsm::analytic::peak_longitudinal(
          e - n * cfg.omega, shape.symmetric() ? c.real() : std::abs(c), gamma);
    }
    lzsm::model::QubitParams qe{e, cfg.qubit.delta, A};
    os << e << "," << numeric.values(i, 0) << "," << p_an << ","
       << lzsm::analytic::background(qe) << "\n";
  }
  std::cout << "wrote " << path << "\n";
}

void run_reproduce(const RunConfig& base, const std::string& target,
                   const std::string& stem_flag) {
  const std::string stem = stem_flag.empty() ? target : stem_flag;
  if (target == "fig1") {
    for (const std::string name : {"cos", "f2", "f3"}) {
      RunConfig cfg = desk_config(base);
      cfg.shape_name = name;
      const auto grid = sweep_from_config(cfg, "\n# reproduce fig1 " + name);
      lzsm::io::write_pattern(stem + "_" + name + ".lzsm", grid);
      lzsm::io::write_spectrum(stem + "_" + name + "_spec.lzsm",
                               lzsm::spectra::fourier2d(grid, 2));
      std::cout << "wrote " << stem << "_" << name << ".lzsm and _spec.lzsm\n";
    }
  } else if (target == "fig2") {
    for (const std::string name : {"f1", "f3"}) {
      RunConfig cfg = desk_config(base);
      cfg.shape_name = name;
      cfg.out_path = stem + "_" + name + "_arcs.csv";
      run_arcs(cfg, 129);
    }
  } else if (target == "fig3") {
    RunConfig cfg = desk_config(base);
    cfg.eps_points = 41;
    cfg.A_points = 31;
    cfg.out_path = stem + "_overlap.csv";
    run_overlap(cfg, 5);
  } else if (target == "fig4" || target == "fig4a" || target == "fig4b" ||
             target == "fig4c") {
    RunConfig cfg = desk_config(base);
    cfg.eps_points = 161;
    cfg.A_min = cfg.A_max = 10.0;
    cfg.A_points = 1;
    const bool transverse = (target != "fig4b");
    cfg.bath.theta = transverse ? 0.0 : std::numbers::pi / 2.0;
    const auto grid = sweep_from_config(cfg, "\n# reproduce " + target);
    write_slice_comparison(stem + "_slice.csv", cfg, grid, transverse);
  } else if (target == "fig5") {
    RunConfig cfg = desk_config(base);
    cfg.bath = {0.05, 20.0, 0.0};
    cfg.eps_points = 161;
    cfg.A_points = 121;
    cfg.out_path = stem + "_profile.csv";
    run_decay(cfg);
  } else {
    throw std::runtime_error("reproduce: unknown target '" + target +
                             "' (use fig1..fig5, fig4a, fig4b, fig4c)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Driven-qubit interference toolkit: Floquet + Bloch-Redfield pattern "
      "sweeps, 2D Fourier analysis, arc prediction, closed-form models"};
  app.require_subcommand(1);

  std::string config_path, out_override, in_path, shape_override,
      coupling_override, target, out_stem;
  int workers = 0, pad = 0, sidebands = 0, arc_points = 129, n_theta = 5,
      n_max = 12;
  double gamma_flag = -1.0;

  app.add_option("--config", config_path, "INI config file");
  app.add_option("--out", out_override,
                 "output path (.csv for text, anything else binary)");
  app.add_option("--workers", workers, "sweep worker count");
  app.add_option("--pad", pad, "FFT zero-padding factor (1, 2, or 4)");
  app.add_option("--sidebands", sidebands, "steady-state sideband cutoff K");
  app.add_option("--shape", shape_override, "drive preset: cos, f1, f2, f3");
  app.add_option("--coupling", coupling_override,
                 "system-bath coupling: x, z, or mixed:<theta>");

  auto* sub_floquet =
      app.add_subcommand("floquet", "quasienergy scan over the A axis");
  auto* sub_pattern =
      app.add_subcommand("pattern", "steady-state sweep to a grid file");
  auto* sub_fft = app.add_subcommand("fft", "grid file to spectrum file");
  sub_fft->add_option("--in", in_path, "input pattern grid")->required();
  auto* sub_arcs =
      app.add_subcommand("arcs", "predicted arc curves for a drive shape");
  sub_arcs->add_option("--points", arc_points, "tau_eps samples");
  auto* sub_analytic =
      app.add_subcommand("analytic", "closed-form pattern on the sweep axes");
  sub_analytic->add_option("--gamma", gamma_flag, "phenomenological width");
  sub_analytic->add_option("--nmax", n_max, "sideband cutoff");
  auto* sub_decay =
      app.add_subcommand("decay", "principal-arc profile and decay fit");
  auto* sub_overlap =
      app.add_subcommand("overlap", "r(theta) table against x and z");
  sub_overlap->add_option("--thetas", n_theta, "theta sample count");
  auto* sub_reproduce =
      app.add_subcommand("reproduce", "canned desk-scale figure runs");
  sub_reproduce->add_option("target", target, "fig1..fig5, fig4a/fig4b/fig4c")
      ->required();
  sub_reproduce->add_option("--stem", out_stem, "output filename stem");
  for (auto* sub : app.get_subcommands({}))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{}
                                        : lzsm::config::load_config(config_path);
    if (!out_override.empty()) cfg.out_path = out_override;
    if (workers > 0) cfg.solver.workers = workers;
    if (pad > 0) cfg.pad = pad;
    if (sidebands > 0) cfg.solver.K = sidebands;
    if (!shape_override.empty()) cfg.shape_name = shape_override;
    if (!coupling_override.empty())
      cfg.bath.theta = parse_coupling(coupling_override);
    cfg.validate();

    if (*sub_floquet) run_floquet(cfg);
    if (*sub_pattern) run_pattern(cfg);
    if (*sub_fft) run_fft(cfg, in_path);
    if (*sub_arcs) run_arcs(cfg, arc_points);
    if (*sub_analytic)
      run_analytic(cfg,
                   gamma_flag > 0.0 ? std::optional<double>(gamma_flag)
                                    : std::nullopt,
                   n_max);
    if (*sub_decay) run_decay(cfg);
    if (*sub_overlap) run_overlap(cfg, n_theta);
    if (*sub_reproduce) run_reproduce(cfg, target, out_stem);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
