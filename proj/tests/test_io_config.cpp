// Unit tests for persistence and configuration: bit-exact binary round
// trips, corrupted-file diagnostics, CSV structure, INI parsing with line-
// accurate errors, and the echo/parse fixed point.

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "lzsm/config.hpp"
#include "lzsm/io.hpp"
#include "lzsm/model.hpp"
#include "lzsm/spectra.hpp"

using namespace lzsm;
using std::numbers::pi;

namespace {

namespace fs = std::filesystem;

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

spectra::PatternGrid awkward_pattern() {
  spectra::PatternGrid p;
  p.eps_axis.resize(4);
  p.eps_axis << -1.0, -0.5, 0.0, 0.5;
  p.A_axis.resize(3);
  p.A_axis << 2.0, 2.25, 2.5;
  p.values.resize(4, 3);
  p.values << 0.0, -0.0, 5e-324, 1e300, -1e-300, pi, 0.1, 1.0 / 3.0,
      std::nextafter(1.0, 2.0), -7.25, 2.2250738585072014e-308, 42.0;
  p.provenance = "line one\nline \"two\" with, commas; and \xC3\xA9 bytes";
  return p;
}

std::size_t count_lines(const std::string& path, char prefix, bool invert) {
  std::ifstream is(path);
  REQUIRE(static_cast<bool>(is));
  std::size_t n = 0;
  std::string line;
  while (std::getline(is, line)) {
    const bool is_comment = !line.empty() && line[0] == prefix;
    if (is_comment != invert) ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE_BEGIN("io_config");

TEST_CASE("pattern files round trip every bit") {
  const auto p = awkward_pattern();
  const std::string path = temp_path("lzsm_test_pattern.lzsm");
  io::write_pattern(path, p);
  const auto q = io::read_pattern(path);
  REQUIRE(q.eps_axis.size() == p.eps_axis.size());
  REQUIRE(q.A_axis.size() == p.A_axis.size());
  REQUIRE(q.values.rows() == p.values.rows());
  REQUIRE(q.values.cols() == p.values.cols());
  for (Eigen::Index i = 0; i < p.eps_axis.size(); ++i)
    CHECK(same_bits(p.eps_axis(i), q.eps_axis(i)));
  for (Eigen::Index j = 0; j < p.A_axis.size(); ++j)
    CHECK(same_bits(p.A_axis(j), q.A_axis(j)));
  for (Eigen::Index i = 0; i < p.values.rows(); ++i)
    for (Eigen::Index j = 0; j < p.values.cols(); ++j)
      CHECK(same_bits(p.values(i, j), q.values(i, j)));
  CHECK(q.provenance == p.provenance);
  fs::remove(path);
}

TEST_CASE("spectrum files round trip every bit") {
  // A transform of a random pattern exercises complex values and the
  // geometry trailer; tamper with the metadata to cover odd encodings.
  spectra::PatternGrid p;
  p.eps_axis.setLinSpaced(8, 0.0, 7.0);
  p.A_axis.setLinSpaced(6, 1.0, 2.0);
  p.values.resize(8, 6);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Eigen::Index i = 0; i < 8; ++i)
    for (Eigen::Index j = 0; j < 6; ++j) p.values(i, j) = u(rng);
  p.provenance = "spectrum round trip";
  auto s = spectra::fourier2d(p, 2, true);
  s.mean_removed = -0.0;
  s.provenance += "\nsecond line";

  const std::string path = temp_path("lzsm_test_spectrum.lzsm");
  io::write_spectrum(path, s);
  const auto t = io::read_spectrum(path);
  REQUIRE(t.values.rows() == s.values.rows());
  REQUIRE(t.values.cols() == s.values.cols());
  for (Eigen::Index i = 0; i < s.values.rows(); ++i)
    for (Eigen::Index j = 0; j < s.values.cols(); ++j) {
      CHECK(same_bits(s.values(i, j).real(), t.values(i, j).real()));
      CHECK(same_bits(s.values(i, j).imag(), t.values(i, j).imag()));
    }
  for (Eigen::Index i = 0; i < s.tau_eps_axis.size(); ++i)
    CHECK(same_bits(s.tau_eps_axis(i), t.tau_eps_axis(i)));
  for (Eigen::Index j = 0; j < s.tau_A_axis.size(); ++j)
    CHECK(same_bits(s.tau_A_axis(j), t.tau_A_axis(j)));
  CHECK(same_bits(s.eps_origin, t.eps_origin));
  CHECK(same_bits(s.A_origin, t.A_origin));
  CHECK(same_bits(s.eps_step, t.eps_step));
  CHECK(same_bits(s.A_step, t.A_step));
  CHECK(same_bits(s.mean_removed, t.mean_removed));
  CHECK(t.n_eps == s.n_eps);
  CHECK(t.n_A == s.n_A);
  CHECK(t.pad == s.pad);
  CHECK(t.provenance == s.provenance);
  fs::remove(path);
}

TEST_CASE("grid files reject corruption with clear errors") {
  const auto p = awkward_pattern();
  const std::string path = temp_path("lzsm_test_corrupt.lzsm");

  SUBCASE("missing file") {
    CHECK_THROWS_AS(io::read_pattern(temp_path("lzsm_no_such_file.lzsm")),
                    std::runtime_error);
  }
  SUBCASE("unwritable target") {
    CHECK_THROWS_AS(
        io::write_pattern("/nonexistent_dir_zz/x.lzsm", p),
        std::runtime_error);
  }
  SUBCASE("bad magic") {
    std::ofstream os(path, std::ios::binary);
    os << "this is not a grid file at all, just filler text............";
    os.close();
    CHECK_THROWS_WITH_AS(io::read_pattern(path),
                         doctest::Contains("bad magic"), std::runtime_error);
  }
  SUBCASE("unsupported version") {
    io::write_pattern(path, p);
    std::fstream f(path,
                   std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(4);
    const std::uint32_t v = 0xDEAD;
    f.write(reinterpret_cast<const char*>(&v), 4);
    f.close();
    CHECK_THROWS_WITH_AS(io::read_pattern(path),
                         doctest::Contains("version"), std::runtime_error);
  }
  SUBCASE("truncated payload") {
    io::write_pattern(path, p);
    fs::resize_file(path, fs::file_size(path) - 9);
    CHECK_THROWS_WITH_AS(io::read_pattern(path),
                         doctest::Contains("truncated"), std::runtime_error);
  }
  SUBCASE("payload kind mismatch") {
    io::write_pattern(path, p);
    CHECK_THROWS_WITH_AS(io::read_spectrum(path),
                         doctest::Contains("real payload"),
                         std::runtime_error);
    const auto s = spectra::fourier2d(p, 1, false);
    io::write_spectrum(path, s);
    CHECK_THROWS_WITH_AS(io::read_pattern(path),
                         doctest::Contains("complex payload"),
                         std::runtime_error);
  }
  fs::remove(path);
}

TEST_CASE("csv exports carry comments, a header, and one row per cell") {
  const auto p = awkward_pattern();
  const std::string path = temp_path("lzsm_test_pattern.csv");
  io::write_pattern_csv(path, p);
  const std::size_t comments = count_lines(path, '#', false);
  const std::size_t rest = count_lines(path, '#', true);
  CHECK(comments >= 1);
  // Header line plus 4 x 3 data rows (blank separators, if any, excluded).
  std::ifstream is(path);
  std::string line;
  std::size_t data = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++data;
  }
  CHECK(header_seen);
  CHECK(data == 12);
  CHECK(rest >= data + 1);
  fs::remove(path);
}

TEST_CASE("default configuration matches the documented values") {
  const auto cfg = config::parse_config("");
  CHECK(cfg.qubit.eps0 == 0.0);
  CHECK(cfg.qubit.delta == 0.5);
  CHECK(cfg.qubit.amplitude == 10.0);
  CHECK(cfg.shape_name == "cos");
  CHECK(cfg.omega == 1.0);
  CHECK(cfg.bath.alpha == 1e-3);
  CHECK(cfg.bath.beta == 10.0);
  CHECK(cfg.bath.theta == 0.0);
  CHECK(cfg.eps_min == -10.0);
  CHECK(cfg.eps_max == 10.0);
  CHECK(cfg.eps_points == 201);
  CHECK(cfg.A_min == 0.0);
  CHECK(cfg.A_max == 15.0);
  CHECK(cfg.A_points == 151);
  CHECK(cfg.solver.tol == 1e-10);
  CHECK(cfg.solver.M == 512);
  CHECK(cfg.solver.K_modes == 64);
  CHECK(cfg.solver.K_X == 32);
  CHECK(cfg.solver.K == 5);
  CHECK(cfg.solver.workers == 4);
  CHECK(cfg.pad == 2);
  CHECK(cfg.out_path == "out.lzsm");
  CHECK(cfg.pipeline == "pattern");
  CHECK(cfg.deterministic);
  CHECK_NOTHROW(cfg.validate());
  // Axis helpers honor the sweep block.
  const auto e = cfg.eps_axis();
  REQUIRE(e.size() == 201);
  CHECK(e(0) == -10.0);
  CHECK(e(200) == doctest::Approx(10.0).epsilon(1e-15));
  const auto A = cfg.A_axis();
  REQUIRE(A.size() == 151);
  CHECK(A(0) == 0.0);
}

TEST_CASE("echo is a parse fixed point for a fully customized run") {
  const std::string text =
      "[qubit]\n"
      "eps0 = -0.125\n"
      "delta = 0.3\n"
      "amplitude = 7.75\n"
      "[drive]\n"
      "shape = custom\n"
      "omega = 1.5\n"
      "harmonics = 1:0.9:0.1 ; 3:-0.2:0 ; 5:0:0.0625\n"
      "[bath]\n"
      "alpha = 0.0125\n"
      "beta = 3.5\n"
      "coupling = mixed:0.7\n"
      "[sweep]\n"
      "eps_min = -4\n"
      "eps_max = 4\n"
      "eps_points = 33\n"
      "A_min = 0.5\n"
      "A_max = 9.5\n"
      "A_points = 19\n"
      "[solver]\n"
      "tol = 1e-9\n"
      "M = 256\n"
      "K_modes = 32\n"
      "K_X = 16\n"
      "K = 3\n"
      "workers = 2\n"
      "[run]\n"
      "pad = 4\n"
      "out = custom_out.lzsm\n"
      "pipeline = fft\n"
      "deterministic = false\n";
  const auto cfg = config::parse_config(text, "inline");
  CHECK(cfg.qubit.eps0 == -0.125);
  CHECK(cfg.shape_name == "custom");
  REQUIRE(cfg.harmonics.size() == 3);
  CHECK(cfg.harmonics[1].k == 3);
  CHECK(cfg.harmonics[1].a == -0.2);
  CHECK(cfg.harmonics[2].b == 0.0625);
  CHECK(cfg.omega == 1.5);
  CHECK(cfg.bath.theta == 0.7);
  CHECK(cfg.solver.M == 256);
  CHECK(cfg.pad == 4);
  CHECK(cfg.out_path == "custom_out.lzsm");
  CHECK(cfg.pipeline == "fft");
  CHECK_FALSE(cfg.deterministic);
  CHECK_NOTHROW(cfg.validate());

  // The custom shape evaluates to the listed trigonometric sum.
  const auto shape = cfg.shape();
  for (double t : {0.0, 0.3, 1.1}) {
    const double manual = 0.9 * std::cos(1.5 * t) + 0.1 * std::sin(1.5 * t) -
                          0.2 * std::cos(4.5 * t) +
                          0.0625 * std::sin(7.5 * t);
    CHECK(model::evaluate_driving(shape, t) ==
          doctest::Approx(manual).epsilon(1e-14));
  }

  const std::string once = cfg.echo();
  const auto cfg2 = config::parse_config(once, "echo");
  const std::string twice = cfg2.echo();
  CHECK(once == twice);
  CHECK(cfg2.qubit.eps0 == cfg.qubit.eps0);
  CHECK(cfg2.bath.theta == cfg.bath.theta);
  CHECK(cfg2.harmonics.size() == cfg.harmonics.size());
  CHECK(cfg2.solver.tol == cfg.solver.tol);
  CHECK(cfg2.deterministic == cfg.deterministic);
}

TEST_CASE("parser reports the origin, line, section, and key") {
  const auto expect_reason = [](const std::string& text,
                                const std::string& needle) {
    try {
      config::parse_config(text, "test.ini");
      FAIL_CHECK("expected a parse error containing '" << needle << "'");
    } catch (const std::invalid_argument& e) {
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_reason("[sweep]\n\neps_points = many\n",
                "test.ini:3: [sweep] eps_points: not an integer");
  expect_reason("[qubit]\nbogus = 1\n", "test.ini:2: [qubit] bogus:");
  expect_reason("[nope]\n", "test.ini:1:");
  expect_reason("[qubit\n", "malformed section");
  expect_reason("[qubit]\njust words\n", "expected key = value");
  expect_reason("[bath]\ncoupling = y\n", "coupling must be x, z, or mixed");
  expect_reason("[drive]\nharmonics = 1:2\n", "must be k:a:b");
  expect_reason("[qubit]\neps0 = abc\n", "not a number");
  expect_reason("[run]\ndeterministic = perhaps\n", "not a boolean");
  expect_reason("eps0 = 1\n", "outside any section");

  // Structural validation happens in validate(), without line info.
  auto cfg = config::parse_config("");
  cfg.eps_min = 3.0;
  cfg.eps_max = -3.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config::parse_config("");
  cfg.pad = 3;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config::parse_config("");
  cfg.out_path.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config::parse_config("");
  cfg.pipeline = "reproduce";  // a CLI verb, not a batch pipeline
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config::parse_config("");
  cfg.shape_name = "custom";  // custom without harmonics
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("load_config reads files and reports their path") {
  const std::string path = temp_path("lzsm_test_config.ini");
  {
    std::ofstream os(path);
    os << "[qubit]\namplitude = 12.5\n# comment line\n; other comment\n";
  }
  const auto cfg = config::load_config(path);
  CHECK(cfg.qubit.amplitude == 12.5);
  fs::remove(path);
  CHECK_THROWS_AS(config::load_config(path), std::runtime_error);
  {
    std::ofstream os(path);
    os << "[bath]\nbeta = oops\n";
  }
  try {
    config::load_config(path);
    FAIL_CHECK("expected a parse error naming the file");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find(path + ":2:") != std::string::npos);
  }
  fs::remove(path);
}

TEST_SUITE_END();
