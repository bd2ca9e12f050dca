// grids.hpp — Grid containers shared between the analysis layers.

#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace lzsm::spectra {

// P_ex sampled on a uniform (eps0, A) grid; eps0 is the slow (row) index.
struct PatternGrid {
  Eigen::VectorXd eps_axis;  // uniform, strictly increasing
  Eigen::VectorXd A_axis;    // uniform, strictly increasing
  Eigen::MatrixXd values;    // (n_eps x n_A)
  std::string provenance;    // config echo carried into every artifact
  int failed_points{0};      // solver failures, filled by nearest neighbor

  void validate() const;  // axis shape/uniformity, finite values
  double eps_step() const;
  double A_step() const;
};

// Two-dimensional Fourier transform W(tau_eps, tau_A) of a pattern, with
// enough geometry retained to invert the transform and bound arc sampling.
struct SpectrumGrid {
  Eigen::VectorXd tau_eps_axis;  // fft-shifted, strictly increasing, 0 at n/2
  Eigen::VectorXd tau_A_axis;
  Eigen::MatrixXcd values;  // (n_tau_eps x n_tau_A)
  // Geometry of the source pattern (needed for the inverse transform).
  double eps_origin{0.0};
  double A_origin{0.0};
  double eps_step{0.0};
  double A_step{0.0};
  int n_eps{0};  // unpadded source size
  int n_A{0};
  int pad{1};
  double mean_removed{0.0};  // pattern mean subtracted before transforming
  std::string provenance;
};

}  // namespace lzsm::spectra
