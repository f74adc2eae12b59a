#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "nrq/dynamics.hpp"
#include "nrq/model.hpp"

namespace nrq {

enum class Output { Populations, Concurrence, Collective, States };

struct ExperimentConfig {
  ModelParams model;
  InitialState initial_state = InitialState::EG;
  TimeGrid grid;
  std::set<Output> outputs{Output::Populations, Output::Concurrence, Output::Collective};
  std::string output_path = "trajectory.csv";
};

enum class SweepObservable { DeltaF, SteadyConcurrence };

/// Parameters a sweep axis may vary. GammaOverJ sets Gamma = value * Re(J).
enum class SweepParameter { J, Gamma, GammaOverJ, Phi, Kappa, DriveAmplitude };

struct SweepAxis {
  SweepParameter parameter = SweepParameter::GammaOverJ;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  double value(std::size_t i) const { return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1); }
};

struct SweepSpec {
  SweepAxis axis1;
  SweepAxis axis2;
  SweepObservable observable = SweepObservable::DeltaF;

  void validate() const;
};

struct SweepConfig {
  ModelParams model;
  SweepSpec sweep;
  std::string output_path = "sweep.csv";
};

/// Flat `key = value` text, `#` comments, case-sensitive keys. Model keys:
/// J, J_imag, Gamma, phi, kappa, omega0, drive_target, drive_amplitude,
/// drive_frequency. Trajectory keys: initial, t_max, dt, sample_every,
/// outputs, output_path.
ExperimentConfig parse_config(std::string_view text);

/// Model keys plus observable, axis{1,2}_{name,min,max,count}, output_path.
SweepConfig parse_sweep_config(std::string_view text);

std::string_view to_string(SweepParameter p);

}  // namespace nrq
