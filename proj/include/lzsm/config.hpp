// config.hpp — Structured text configuration for the batch front end:
// INI-style sections, documented defaults, and an echo that round-trips
// every field bit-exactly.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lzsm/model.hpp"
#include "lzsm/spectra.hpp"

namespace lzsm::config {

struct RunConfig {
  // [qubit]
  model::QubitParams qubit{0.0, 0.5, 10.0};
  // [drive] — preset name, or "custom" with an explicit harmonic list.
  std::string shape_name{"cos"};
  std::vector<model::Harmonic> harmonics;
  double omega{1.0};
  // [bath] — theta encodes the coupling choice (x: 0, z: pi/2, mixed).
  model::BathParams bath{};
  // [sweep]
  double eps_min{-10.0};
  double eps_max{10.0};
  int eps_points{201};
  double A_min{0.0};
  double A_max{15.0};
  int A_points{151};
  // [solver] — includes the worker count used by sweeps.
  spectra::SolverOptions solver{};
  // [run]
  int pad{2};
  std::string out_path{"out.lzsm"};
  std::string pipeline{"pattern"};
  bool deterministic{true};

  model::DrivingShape shape() const;
  Eigen::VectorXd eps_axis() const;
  Eigen::VectorXd A_axis() const;
  void validate() const;
  // Full INI echo; parse_config(echo()) reproduces every field exactly.
  std::string echo() const;
};

// Parses INI text: [section] headers, key = value lines, '#'/';' comment
// lines. Unknown sections/keys and malformed values raise errors carrying
// "<origin>:<line>: [section] key: reason".
RunConfig parse_config(const std::string& text,
                       const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

}  // namespace lzsm::config
