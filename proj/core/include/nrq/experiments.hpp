#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nrq/config.hpp"
#include "nrq/csv.hpp"
#include "nrq/dynamics.hpp"
#include "nrq/model.hpp"

namespace nrq {

/// Drive strength used by the driven presets, in units of J.
inline constexpr double kPresetDriveAmplitude = 8.0 / 11.0;

/// Gamma = 2J with J = 1, no dephasing; complete isolation at phi = 3pi/2.
ModelParams preset_model(double phi, std::optional<Drive> drive = std::nullopt);

/// Jt in [0, 5] and [0, 50], both with dt = 0.002; samples every 0.01 and 0.05.
TimeGrid transient_grid();
TimeGrid driven_grid();

/// One trajectory that feeds a figure.
struct RunSpec {
  std::string label;
  ModelParams model;
  InitialState initial = InitialState::EG;
  TimeGrid grid;
};

enum class FigureId { F2a, F2b, F2c, F2d, F3a, F3b, F4a, F4b, F5b, F5c, F5d, F6a, F6b, F6c, F6d };

const std::vector<FigureId>& all_figures();
std::string_view to_string(FigureId id);
std::optional<FigureId> parse_figure_id(std::string_view id);

/// Trajectories behind a figure; empty for the isolation-ratio map.
std::vector<RunSpec> figure_runs(FigureId id);
SweepSpec figure_2a_sweep();

Table build_figure(FigureId id);
/// Writes fig_<id>.csv into `out_dir` and returns its path.
std::filesystem::path run_figure(FigureId id, const std::filesystem::path& out_dir);

/// Columns t,P1,P2,C,P_E,P_plus,P_minus,P_G restricted to `outputs`.
Table trajectory_table(const Trajectory& traj, const std::set<Output>& outputs);
/// t followed by re_ij,im_ij for every density-matrix entry (row-major).
Table states_table(const Trajectory& traj);

ModelParams with_parameter(ModelParams model, SweepParameter p, double value);

/// Columns axis1,axis2,value; steady_concurrence sweeps add a degenerate flag
/// and report value -1 wherever the steady state is not unique.
Table run_sweep(const SweepSpec& spec, const ModelParams& base);

/// Integrates the configured trajectory and writes the requested CSVs.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace nrq
