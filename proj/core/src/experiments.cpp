#include "nrq/experiments.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "nrq/error.hpp"
#include "nrq/observables.hpp"

namespace nrq {

namespace {

constexpr double kPi = std::numbers::pi;

using Column = std::function<double(const DensityMatrix&)>;

struct NamedColumn {
  std::string name;
  Column value;
};

double p1(const DensityMatrix& rho) { return populations(rho).first; }
double p2(const DensityMatrix& rho) { return populations(rho).second; }
double p_e(const DensityMatrix& rho) { return collective_populations(rho).P_E; }
double p_plus(const DensityMatrix& rho) { return collective_populations(rho).P_plus; }
double p_minus(const DensityMatrix& rho) { return collective_populations(rho).P_minus; }
double p_g(const DensityMatrix& rho) { return collective_populations(rho).P_G; }
double conc(const DensityMatrix& rho) { return concurrence(rho); }

/// Runs every trajectory and lays the requested columns side by side. All
/// runs of one figure share a grid, so the time column is common.
Table tabulate(const std::vector<RunSpec>& runs, const std::vector<std::vector<NamedColumn>>& columns) {
  Table table{{"t"}, {}};
  std::vector<Trajectory> trajectories;
  trajectories.reserve(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    trajectories.push_back(evolve_rk4(DensityMatrix::from_initial(runs[r].initial),
                                      build_liouvillian(runs[r].model), runs[r].grid));
    for (const auto& c : columns[r]) table.header.push_back(c.name);
  }
  const std::size_t samples = trajectories.front().times.size();
  table.rows.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    auto& row = table.rows.emplace_back();
    row.push_back(trajectories.front().times[k]);
    for (std::size_t r = 0; r < runs.size(); ++r) {
      for (const auto& c : columns[r]) row.push_back(c.value(trajectories[r].states[k]));
    }
  }
  return table;
}

std::string suffix(InitialState s) {
  switch (s) {
    case InitialState::E: return "E";
    case InitialState::Plus: return "plus";
    case InitialState::Minus: return "minus";
    case InitialState::G: return "G";
    default: return std::string(to_string(s));
  }
}

constexpr InitialState kCollectiveStates[] = {InitialState::E, InitialState::Plus, InitialState::Minus,
                                              InitialState::G};

std::vector<RunSpec> collective_runs(const ModelParams& model, const TimeGrid& grid) {
  std::vector<RunSpec> runs;
  for (auto s : kCollectiveStates) runs.push_back({"from_" + suffix(s), model, s, grid});
  return runs;
}

}  // namespace

ModelParams preset_model(double phi, std::optional<Drive> drive) {
  ModelParams m;
  m.J = Complex{1.0, 0.0};
  m.gamma = 2.0;
  m.phi = phi;
  m.kappa = 0.0;
  m.drive = drive;
  return m;
}

TimeGrid transient_grid() { return TimeGrid{5.0, 0.002, 5}; }
TimeGrid driven_grid() { return TimeGrid{50.0, 0.002, 25}; }

const std::vector<FigureId>& all_figures() {
  static const std::vector<FigureId> ids{FigureId::F2a, FigureId::F2b, FigureId::F2c, FigureId::F2d, FigureId::F3a,
                                         FigureId::F3b, FigureId::F4a, FigureId::F4b, FigureId::F5b, FigureId::F5c,
                                         FigureId::F5d, FigureId::F6a, FigureId::F6b, FigureId::F6c, FigureId::F6d};
  return ids;
}

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::F2a: return "2a";
    case FigureId::F2b: return "2b";
    case FigureId::F2c: return "2c";
    case FigureId::F2d: return "2d";
    case FigureId::F3a: return "3a";
    case FigureId::F3b: return "3b";
    case FigureId::F4a: return "4a";
    case FigureId::F4b: return "4b";
    case FigureId::F5b: return "5b";
    case FigureId::F5c: return "5c";
    case FigureId::F5d: return "5d";
    case FigureId::F6a: return "6a";
    case FigureId::F6b: return "6b";
    case FigureId::F6c: return "6c";
    case FigureId::F6d: return "6d";
  }
  return "?";
}

std::optional<FigureId> parse_figure_id(std::string_view id) {
  for (auto f : all_figures()) {
    if (to_string(f) == id) return f;
  }
  return std::nullopt;
}

std::vector<RunSpec> figure_runs(FigureId id) {
  const double isolated = 1.5 * kPi;
  const Drive on_q1{Qubit::One, kPresetDriveAmplitude};
  const Drive on_q2{Qubit::Two, kPresetDriveAmplitude};
  const TimeGrid fast = transient_grid();
  const TimeGrid slow = driven_grid();

  switch (id) {
    case FigureId::F2a: return {};
    case FigureId::F2b:
      return {{"1e", preset_model(kPi), InitialState::EG, fast}, {"2e", preset_model(kPi), InitialState::GE, fast}};
    case FigureId::F2c: return {{"1e", preset_model(isolated), InitialState::EG, fast}};
    case FigureId::F2d: return {{"2e", preset_model(isolated), InitialState::GE, fast}};
    case FigureId::F3a:
      return {{"1e", preset_model(isolated), InitialState::EG, fast},
              {"2e", preset_model(isolated), InitialState::GE, fast}};
    case FigureId::F3b:
      return {{"1e", preset_model(0.0), InitialState::EG, fast}, {"2e", preset_model(0.0), InitialState::GE, fast}};
    case FigureId::F4a:
      // Drive on the initially excited qubit.
      return {{"1e", preset_model(isolated, on_q1), InitialState::EG, slow},
              {"2e", preset_model(isolated, on_q2), InitialState::GE, slow}};
    case FigureId::F4b:
      // Drive on the qubit that starts in its ground state.
      return {{"1e", preset_model(isolated, on_q2), InitialState::EG, slow},
              {"2e", preset_model(isolated, on_q1), InitialState::GE, slow}};
    case FigureId::F5b: return collective_runs(preset_model(isolated), fast);
    case FigureId::F5c: return collective_runs(preset_model(0.0), fast);
    case FigureId::F5d: return collective_runs(preset_model(kPi), fast);
    case FigureId::F6a: return {{"from_E", preset_model(isolated, on_q1), InitialState::E, slow}};
    case FigureId::F6b: return {{"from_G", preset_model(isolated, on_q1), InitialState::G, slow}};
    case FigureId::F6c: return collective_runs(preset_model(isolated, on_q1), slow);
    case FigureId::F6d: return collective_runs(preset_model(isolated, on_q2), slow);
  }
  throw Error(ErrorKind::UnknownPreset, "unhandled figure id");
}

SweepSpec figure_2a_sweep() {
  return SweepSpec{SweepAxis{SweepParameter::GammaOverJ, 0.0, 4.0, 201},
                   SweepAxis{SweepParameter::Phi, 0.0, 2.0 * kPi, 201}, SweepObservable::DeltaF};
}

Table build_figure(FigureId id) {
  if (id == FigureId::F2a) return run_sweep(figure_2a_sweep(), preset_model(0.0));

  const std::vector<RunSpec> runs = figure_runs(id);
  std::vector<std::vector<NamedColumn>> columns;
  switch (id) {
    case FigureId::F2b:
      columns = {{{"P1_1e", p1}, {"P2_1e", p2}}, {{"P1_2e", p1}, {"P2_2e", p2}}};
      break;
    case FigureId::F2c:
    case FigureId::F2d:
      columns = {{{"P1", p1}, {"P2", p2}}};
      break;
    case FigureId::F3a:
    case FigureId::F3b:
    case FigureId::F4a:
    case FigureId::F4b:
      columns = {{{"C_1e", conc}}, {{"C_2e", conc}}};
      break;
    case FigureId::F5b:
    case FigureId::F5c:
    case FigureId::F5d:
      for (const auto& run : runs) {
        columns.push_back({{"P_E_" + run.label, p_e},
                           {"P_plus_" + run.label, p_plus},
                           {"P_minus_" + run.label, p_minus},
                           {"P_G_" + run.label, p_g}});
      }
      break;
    case FigureId::F6a:
    case FigureId::F6b:
      columns = {{{"P_E", p_e}, {"P_plus", p_plus}, {"P_minus", p_minus}, {"P_G", p_g}}};
      break;
    case FigureId::F6c:
    case FigureId::F6d:
      for (auto s : kCollectiveStates) columns.push_back({{"C_" + suffix(s), conc}});
      break;
    case FigureId::F2a: break;
  }
  return tabulate(runs, columns);
}

std::filesystem::path run_figure(FigureId id, const std::filesystem::path& out_dir) {
  const Table table = build_figure(id);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
  const auto path = out_dir / ("fig_" + std::string(to_string(id)) + ".csv");
  write_csv(table, path);
  return path;
}

Table trajectory_table(const Trajectory& traj, const std::set<Output>& outputs) {
  std::vector<NamedColumn> columns;
  if (outputs.contains(Output::Populations)) {
    columns.push_back({"P1", p1});
    columns.push_back({"P2", p2});
  }
  if (outputs.contains(Output::Concurrence)) columns.push_back({"C", conc});
  if (outputs.contains(Output::Collective)) {
    columns.push_back({"P_E", p_e});
    columns.push_back({"P_plus", p_plus});
    columns.push_back({"P_minus", p_minus});
    columns.push_back({"P_G", p_g});
  }
  Table table{{"t"}, {}};
  for (const auto& c : columns) table.header.push_back(c.name);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    auto& row = table.rows.emplace_back();
    row.push_back(traj.times[k]);
    for (const auto& c : columns) row.push_back(c.value(traj.states[k]));
  }
  return table;
}

Table states_table(const Trajectory& traj) {
  Table table{{"t"}, {}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const std::string idx = std::to_string(i) + std::to_string(j);
      table.header.push_back("re_" + idx);
      table.header.push_back("im_" + idx);
    }
  }
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    auto& row = table.rows.emplace_back();
    row.push_back(traj.times[k]);
    for (const Complex& z : traj.states[k].matrix().data()) {
      row.push_back(z.real());
      row.push_back(z.imag());
    }
  }
  return table;
}

ModelParams with_parameter(ModelParams model, SweepParameter p, double value) {
  switch (p) {
    case SweepParameter::J: model.J = Complex{value, 0.0}; break;
    case SweepParameter::Gamma: model.gamma = value; break;
    case SweepParameter::GammaOverJ: model.gamma = value * std::abs(model.J); break;
    case SweepParameter::Phi: model.phi = value; break;
    case SweepParameter::Kappa: model.kappa = value; break;
    case SweepParameter::DriveAmplitude:
      if (!model.drive) throw Error(ErrorKind::ValidationError, "drive_amplitude: model has no drive");
      model.drive->amplitude = value;
      break;
  }
  return model;
}

Table run_sweep(const SweepSpec& spec, const ModelParams& base) {
  spec.validate();
  const bool steady = spec.observable == SweepObservable::SteadyConcurrence;
  Table table{{"axis1", "axis2", "value"}, {}};
  if (steady) table.header.emplace_back("degenerate");
  table.rows.reserve(spec.axis1.count * spec.axis2.count);

  // Gamma_over_J is resolved last so it sees a swept J.
  const bool ratio_first = spec.axis1.parameter == SweepParameter::GammaOverJ;

  for (std::size_t i = 0; i < spec.axis1.count; ++i) {
    const double a = spec.axis1.value(i);
    for (std::size_t j = 0; j < spec.axis2.count; ++j) {
      const double b = spec.axis2.value(j);
      ModelParams m = ratio_first ? with_parameter(with_parameter(base, spec.axis2.parameter, b), spec.axis1.parameter, a)
                                  : with_parameter(with_parameter(base, spec.axis1.parameter, a), spec.axis2.parameter, b);
      if (!steady) {
        table.rows.push_back({a, b, damping_forces(m.J, m.gamma, m.phi).delta_F});
        continue;
      }
      const Liouvillian L = build_liouvillian(m);
      std::optional<SteadyStateResult> ss;
      try {
        ss = steady_state(L);
      } catch (const Error& e) {
        // A degenerate null space need not contain a state we can recover.
        if (e.kind() != ErrorKind::NotAState) throw;
      }
      if (ss && ss->unique) {
        table.rows.push_back({a, b, concurrence(ss->state), 0.0});
      } else {
        table.rows.push_back({a, b, -1.0, 1.0});
      }
    }
  }
  return table;
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const Trajectory traj =
      evolve_rk4(DensityMatrix::from_initial(cfg.initial_state), build_liouvillian(cfg.model), cfg.grid);

  std::error_code ec;
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  const std::filesystem::path main_path = out_dir / cfg.output_path;
  std::set<Output> scalar_outputs = cfg.outputs;
  scalar_outputs.erase(Output::States);
  if (!scalar_outputs.empty()) {
    write_csv(trajectory_table(traj, scalar_outputs), main_path);
    written.push_back(main_path);
  }
  if (cfg.outputs.contains(Output::States)) {
    std::filesystem::path states_path = main_path;
    states_path.replace_filename(main_path.stem().string() + "_states" + main_path.extension().string());
    write_csv(states_table(traj), states_path);
    written.push_back(states_path);
  }
  return written;
}

}  // namespace nrq
