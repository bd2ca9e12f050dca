#include "lzsm/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lzsm::config {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw std::invalid_argument("not a number: '" + v + "'");
  return x;
}

int to_int(const std::string& v) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw std::invalid_argument("not an integer: '" + v + "'");
  if (x < -1000000000L || x > 1000000000L)
    throw std::invalid_argument("integer out of range: '" + v + "'");
  return static_cast<int>(x);
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw std::invalid_argument("not a boolean: '" + v + "'");
}

std::vector<model::Harmonic> to_harmonics(const std::string& v) {
  std::vector<model::Harmonic> out;
  std::istringstream terms(v);
  std::string term;
  while (std::getline(terms, term, ';')) {
    term = trim(term);
    if (term.empty()) continue;
    std::istringstream fields(term);
    std::string ks, as, bs;
    if (!std::getline(fields, ks, ':') || !std::getline(fields, as, ':') ||
        !std::getline(fields, bs))
      throw std::invalid_argument("harmonic term must be k:a:b, got '" + term +
                                  "'");
    out.push_back({to_int(trim(ks)), to_double(trim(as)), to_double(trim(bs))});
  }
  if (out.empty()) throw std::invalid_argument("empty harmonic list");
  return out;
}

double to_theta(const std::string& v) {
  if (v == "x") return 0.0;
  if (v == "z") return std::numbers::pi / 2.0;
  if (v.rfind("mixed:", 0) == 0) return to_double(v.substr(6));
  throw std::invalid_argument("coupling must be x, z, or mixed:<theta>, got '" +
                              v + "'");
}

std::string theta_string(double theta) {
  if (theta == 0.0) return "x";
  if (theta == std::numbers::pi / 2.0) return "z";
  return "mixed:" + fmt(theta);
}

const char* kPipelines[] = {"pattern", "floquet", "fft",     "arcs",
                            "analytic", "decay",  "overlap"};

bool known_pipeline(const std::string& p) {
  for (const char* q : kPipelines)
    if (p == q) return true;
  return false;
}

}  // namespace

model::DrivingShape RunConfig::shape() const {
  if (shape_name == "custom") return model::DrivingShape(harmonics, omega);
  return model::DrivingShape::preset(shape_name, omega);
}

namespace {

Eigen::VectorXd linear_axis(double lo, double hi, int n) {
  Eigen::VectorXd axis(n);
  if (n == 1) {
    axis(0) = lo;
    return axis;
  }
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) axis(i) = lo + i * step;
  return axis;
}

}  // namespace

Eigen::VectorXd RunConfig::eps_axis() const {
  return linear_axis(eps_min, eps_max, eps_points);
}

Eigen::VectorXd RunConfig::A_axis() const {
  return linear_axis(A_min, A_max, A_points);
}

void RunConfig::validate() const {
  qubit.validate();
  bath.validate();
  if (shape_name == "custom") {
    if (harmonics.empty())
      throw std::invalid_argument(
          "config: shape = custom requires a harmonics list");
  } else if (!model::DrivingShape::is_preset(shape_name)) {
    throw std::invalid_argument("config: unknown drive preset '" + shape_name +
                                "'");
  }
  shape();  // harmonic-level validation
  if (!(omega > 0.0)) throw std::invalid_argument("config: omega <= 0");
  if (eps_points < 1 || A_points < 1)
    throw std::invalid_argument("config: sweep axes must be non-empty");
  if (eps_points > 1 && !(eps_max > eps_min))
    throw std::invalid_argument("config: eps_max must exceed eps_min");
  if (A_points > 1 && !(A_max > A_min))
    throw std::invalid_argument("config: A_max must exceed A_min");
  solver.validate();
  if (pad != 1 && pad != 2 && pad != 4)
    throw std::invalid_argument("config: pad must be 1, 2, or 4");
  if (out_path.empty()) throw std::invalid_argument("config: empty out path");
  if (!known_pipeline(pipeline))
    throw std::invalid_argument("config: unknown pipeline '" + pipeline + "'");
}

std::string RunConfig::echo() const {
  std::ostringstream os;
  os << "[qubit]\n"
     << "eps0 = " << fmt(qubit.eps0) << "\n"
     << "delta = " << fmt(qubit.delta) << "\n"
     << "amplitude = " << fmt(qubit.amplitude) << "\n\n";
  os << "[drive]\n"
     << "shape = " << shape_name << "\n"
     << "omega = " << fmt(omega) << "\n";
  if (shape_name == "custom") {
    os << "harmonics = ";
    for (std::size_t i = 0; i < harmonics.size(); ++i) {
      if (i) os << "; ";
      os << harmonics[i].k << ":" << fmt(harmonics[i].a) << ":"
         << fmt(harmonics[i].b);
    }
    os << "\n";
  }
  os << "\n[bath]\n"
     << "alpha = " << fmt(bath.alpha) << "\n"
     << "beta = " << fmt(bath.beta) << "\n"
     << "coupling = " << theta_string(bath.theta) << "\n\n";
  os << "[sweep]\n"
     << "eps_min = " << fmt(eps_min) << "\n"
     << "eps_max = " << fmt(eps_max) << "\n"
     << "eps_points = " << eps_points << "\n"
     << "A_min = " << fmt(A_min) << "\n"
     << "A_max = " << fmt(A_max) << "\n"
     << "A_points = " << A_points << "\n\n";
  os << "[solver]\n"
     << "tol = " << fmt(solver.tol) << "\n"
     << "M = " << solver.M << "\n"
     << "K_modes = " << solver.K_modes << "\n"
     << "K_X = " << solver.K_X << "\n"
     << "K = " << solver.K << "\n"
     << "workers = " << solver.workers << "\n\n";
  os << "[run]\n"
     << "pad = " << pad << "\n"
     << "out = " << out_path << "\n"
     << "pipeline = " << pipeline << "\n"
     << "deterministic = " << (deterministic ? "true" : "false") << "\n";
  return os.str();
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream stream(text);
  std::string line;
  std::string section;
  int lineno = 0;

  auto fail = [&](const std::string& key, const std::string& reason) {
    std::string where = origin + ":" + std::to_string(lineno) + ":";
    if (!section.empty()) where += " [" + section + "]";
    if (!key.empty()) where += " " + key + ":";
    throw std::invalid_argument(where + " " + reason);
  };

  while (std::getline(stream, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t[0] == '[') {
      if (t.back() != ']') fail("", "malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section != "qubit" && section != "drive" && section != "bath" &&
          section != "sweep" && section != "solver" && section != "run")
        fail("", "unknown section '" + section + "'");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail("", "expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail("", "empty key");
    if (section.empty()) fail(key, "key outside any section");

    try {
      if (section == "qubit") {
        if (key == "eps0") cfg.qubit.eps0 = to_double(value);
        else if (key == "delta") cfg.qubit.delta = to_double(value);
        else if (key == "amplitude") cfg.qubit.amplitude = to_double(value);
        else fail(key, "unknown key");
      } else if (section == "drive") {
        if (key == "shape") cfg.shape_name = value;
        else if (key == "omega") cfg.omega = to_double(value);
        else if (key == "harmonics") cfg.harmonics = to_harmonics(value);
        else fail(key, "unknown key");
      } else if (section == "bath") {
        if (key == "alpha") cfg.bath.alpha = to_double(value);
        else if (key == "beta") cfg.bath.beta = to_double(value);
        else if (key == "coupling") cfg.bath.theta = to_theta(value);
        else fail(key, "unknown key");
      } else if (section == "sweep") {
        if (key == "eps_min") cfg.eps_min = to_double(value);
        else if (key == "eps_max") cfg.eps_max = to_double(value);
        else if (key == "eps_points") cfg.eps_points = to_int(value);
        else if (key == "A_min") cfg.A_min = to_double(value);
        else if (key == "A_max") cfg.A_max = to_double(value);
        else if (key == "A_points") cfg.A_points = to_int(value);
        else fail(key, "unknown key");
      } else if (section == "solver") {
        if (key == "tol") cfg.solver.tol = to_double(value);
        else if (key == "M") cfg.solver.M = to_int(value);
        else if (key == "K_modes") cfg.solver.K_modes = to_int(value);
        else if (key == "K_X") cfg.solver.K_X = to_int(value);
        else if (key == "K") cfg.solver.K = to_int(value);
        else if (key == "workers") cfg.solver.workers = to_int(value);
        else fail(key, "unknown key");
      } else {  // run
        if (key == "pad") cfg.pad = to_int(value);
        else if (key == "out") cfg.out_path = value;
        else if (key == "pipeline") cfg.pipeline = value;
        else if (key == "deterministic") cfg.deterministic = to_bool(value);
        else fail(key, "unknown key");
      }
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      if (msg.rfind(origin, 0) == 0) throw;  // already located
      fail(key, msg);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buffer;
  buffer << is.rdbuf();
  RunConfig cfg = parse_config(buffer.str(), path);
  cfg.validate();
  return cfg;
}

}  // namespace lzsm::config
