// model.hpp — Qubit, bath, and driving-shape definitions shared by all solvers.
//
// Units: hbar = 1 throughout; energies in units of the drive quantum (Omega
// defaults to 1), times in 1/Omega.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lzsm::model {

// One Fourier component of the drive: a*cos(k*Omega*t) + b*sin(k*Omega*t).
struct Harmonic {
  int k{1};       // harmonic index, k >= 1 (no DC term allowed)
  double a{0.0};  // cosine coefficient
  double b{0.0};  // sine coefficient
};

// Zero-mean T-periodic drive f(t) given as a finite harmonic series.
// Excluding k = 0 keeps the antiderivative F(t) itself T-periodic.
// Immutable after construction; safe to share across threads.
class DrivingShape {
 public:
  // Throws std::invalid_argument on k < 1, k > max_index, duplicate k,
  // or non-finite coefficients.
  explicit DrivingShape(std::vector<Harmonic> harmonics, double omega = 1.0,
                        int max_index = 16);

  // Presets: "cos"  -> cos(Omega t)
  //          "f1"   -> cos(Omega t) + 0.1 cos(3 Omega t)
  //          "f2"   -> cos(Omega t) + cos(2 Omega t)
  //          "f3"   -> sin(Omega t) + sin(2 Omega t)
  static DrivingShape preset(const std::string& name, double omega = 1.0);
  static bool is_preset(const std::string& name);

  double omega() const { return omega_; }
  double period() const;
  const std::vector<Harmonic>& harmonics() const { return harmonics_; }

  // Time-reversal symmetric about t = 0 (all sine coefficients exactly zero).
  bool symmetric() const;
  // Anti-symmetric about t = 0 (all cosine coefficients exactly zero).
  bool antisymmetric() const;

  // Harmonic series of t -> f(t + t0) (used for time-origin shift checks).
  DrivingShape shifted(double t0) const;

 private:
  double omega_;
  std::vector<Harmonic> harmonics_;
};

// f(t) = sum_k a_k cos(k Omega t) + b_k sin(k Omega t)
double evaluate_driving(const DrivingShape& shape, double t);

// F(t) = int_0^t f(t') dt' in closed form; F(0) = 0 and F(T) = 0.
double driving_integral(const DrivingShape& shape, double t);

// d/dt f(t) in closed form (arc seeding at tau_eps -> 0 needs it).
double driving_derivative(const DrivingShape& shape, double t);

// Static qubit parameters plus the driving amplitude.
struct QubitParams {
  double eps0{0.0};       // static detuning
  double delta{0.0};      // tunnel matrix element, >= 0
  double amplitude{0.0};  // driving amplitude A

  void validate() const;  // throws std::invalid_argument
};

// Ohmic bath parameters and the system-bath coupling angle.
struct BathParams {
  double alpha{1e-3};  // dimensionless dissipation strength, >= 0
  double beta{10.0};   // inverse temperature, > 0
  double theta{0.0};   // coupling mixing angle in [0, pi/2]

  void validate() const;  // throws std::invalid_argument
};

Eigen::Matrix2cd sigma_x();
Eigen::Matrix2cd sigma_y();
Eigen::Matrix2cd sigma_z();

// Coupling operator X = cos(theta) sigma_x + sin(theta) sigma_z.
// The endpoints theta = 0 and theta = pi/2 are snapped to exactly sigma_x
// and sigma_z so that pure-coupling runs carry no rounding admixture.
Eigen::Matrix2cd coupling_operator(const BathParams& bath);

// Symmetrized gauge H(t) = (1/2)(eps0 - A f(t)) sigma_z + (delta/2) sigma_x;
// the only Hamiltonian used numerically.
Eigen::Matrix2cd symmetrized_hamiltonian(const QubitParams& q,
                                         const DrivingShape& shape, double t);

}  // namespace lzsm::model
