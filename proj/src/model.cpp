#include "lzsm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace lzsm::model {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

DrivingShape::DrivingShape(std::vector<Harmonic> harmonics, double omega,
                           int max_index)
    : omega_(omega), harmonics_(std::move(harmonics)) {
  if (!(omega_ > 0.0) || !std::isfinite(omega_))
    throw std::invalid_argument("DrivingShape: omega must be positive");
  if (harmonics_.empty())
    throw std::invalid_argument("DrivingShape: empty harmonic list");
  std::set<int> seen;
  for (const auto& h : harmonics_) {
    if (h.k < 1)
      throw std::invalid_argument(
          "DrivingShape: harmonic index k must be >= 1 (no DC term)");
    if (h.k > max_index)
      throw std::invalid_argument("DrivingShape: harmonic index " +
                                  std::to_string(h.k) + " exceeds cap " +
                                  std::to_string(max_index));
    if (!std::isfinite(h.a) || !std::isfinite(h.b))
      throw std::invalid_argument("DrivingShape: non-finite coefficient");
    if (!seen.insert(h.k).second)
      throw std::invalid_argument("DrivingShape: duplicate harmonic index " +
                                  std::to_string(h.k));
  }
  std::sort(harmonics_.begin(), harmonics_.end(),
            [](const Harmonic& l, const Harmonic& r) { return l.k < r.k; });
}

DrivingShape DrivingShape::preset(const std::string& name, double omega) {
  if (name == "cos" || name == "f0")
    return DrivingShape({{1, 1.0, 0.0}}, omega);
  if (name == "f1") return DrivingShape({{1, 1.0, 0.0}, {3, 0.1, 0.0}}, omega);
  if (name == "f2") return DrivingShape({{1, 1.0, 0.0}, {2, 1.0, 0.0}}, omega);
  if (name == "f3") return DrivingShape({{1, 0.0, 1.0}, {2, 0.0, 1.0}}, omega);
  throw std::invalid_argument("unknown driving preset '" + name +
                              "' (expected cos, f1, f2 or f3)");
}

bool DrivingShape::is_preset(const std::string& name) {
  return name == "cos" || name == "f0" || name == "f1" || name == "f2" ||
         name == "f3";
}

double DrivingShape::period() const {
  return 2.0 * std::numbers::pi / omega_;
}

bool DrivingShape::symmetric() const {
  return std::all_of(harmonics_.begin(), harmonics_.end(),
                     [](const Harmonic& h) { return h.b == 0.0; });
}

bool DrivingShape::antisymmetric() const {
  return std::all_of(harmonics_.begin(), harmonics_.end(),
                     [](const Harmonic& h) { return h.a == 0.0; });
}

DrivingShape DrivingShape::shifted(double t0) const {
  std::vector<Harmonic> out;
  out.reserve(harmonics_.size());
  for (const auto& h : harmonics_) {
    const double c = std::cos(h.k * omega_ * t0);
    const double s = std::sin(h.k * omega_ * t0);
    out.push_back({h.k, h.a * c + h.b * s, h.b * c - h.a * s});
  }
  return DrivingShape(out, omega_);
}

double evaluate_driving(const DrivingShape& shape, double t) {
  double f = 0.0;
  const double w = shape.omega();
  for (const auto& h : shape.harmonics())
    f += h.a * std::cos(h.k * w * t) + h.b * std::sin(h.k * w * t);
  return f;
}

double driving_integral(const DrivingShape& shape, double t) {
  double F = 0.0;
  const double w = shape.omega();
  for (const auto& h : shape.harmonics()) {
    const double kw = h.k * w;
    F += h.a * std::sin(kw * t) / kw + h.b * (1.0 - std::cos(kw * t)) / kw;
  }
  return F;
}

double driving_derivative(const DrivingShape& shape, double t) {
  double d = 0.0;
  const double w = shape.omega();
  for (const auto& h : shape.harmonics()) {
    const double kw = h.k * w;
    d += kw * (h.b * std::cos(kw * t) - h.a * std::sin(kw * t));
  }
  return d;
}

void QubitParams::validate() const {
  if (!std::isfinite(eps0) || !std::isfinite(delta) || !std::isfinite(amplitude))
    throw std::invalid_argument("QubitParams: non-finite value");
  if (delta < 0.0)
    throw std::invalid_argument("QubitParams: delta must be >= 0");
}

void BathParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(theta))
    throw std::invalid_argument("BathParams: non-finite value");
  if (alpha < 0.0)
    throw std::invalid_argument("BathParams: alpha must be >= 0");
  if (!(beta > 0.0))
    throw std::invalid_argument("BathParams: beta must be > 0");
  if (theta < 0.0 || theta > std::numbers::pi / 2.0 + 1e-15)
    throw std::invalid_argument("BathParams: theta must lie in [0, pi/2]");
}

Eigen::Matrix2cd sigma_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Eigen::Matrix2cd sigma_y() {
  Eigen::Matrix2cd m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Eigen::Matrix2cd sigma_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Eigen::Matrix2cd coupling_operator(const BathParams& bath) {
  bath.validate();
  double cx = std::cos(bath.theta);
  double cz = std::sin(bath.theta);
  if (bath.theta == 0.0) {
    cx = 1.0;
    cz = 0.0;
  } else if (bath.theta == std::numbers::pi / 2.0) {
    cx = 0.0;
    cz = 1.0;
  }
  return cx * sigma_x() + cz * sigma_z();
}

Eigen::Matrix2cd symmetrized_hamiltonian(const QubitParams& q,
                                         const DrivingShape& shape, double t) {
  const double nz = 0.5 * (q.eps0 - q.amplitude * evaluate_driving(shape, t));
  const double nx = 0.5 * q.delta;
  Eigen::Matrix2cd h;
  h << nz, nx, nx, -nz;
  return h;
}

}  // namespace lzsm::model
