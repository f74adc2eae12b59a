#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nrq/config.hpp"
#include "nrq/csv.hpp"
#include "nrq/error.hpp"
#include "nrq/experiments.hpp"
#include "nrq/observables.hpp"

using namespace nrq;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

template <typename F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an nrq::Error");
  return Error(ErrorKind::IoError, "unreachable");
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t k = 0; k < t.header.size(); ++k)
    if (t.header[k] == name) return k;
  FAIL("missing column " << name);
  return 0;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nrq_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_config accepts the complete-isolation example") {
  const auto cfg = parse_config("J = 1.0\nGamma = 2.0\nphi = 4.712388980384690\ninitial = EG\nt_max = 5\ndt = 0.002");
  CHECK(cfg.model.J == Complex{1.0, 0.0});
  CHECK(cfg.model.gamma == 2.0);
  CHECK(cfg.model.phi == doctest::Approx(1.5 * kPi).epsilon(1e-15));
  CHECK(cfg.model.kappa == 0.0);
  CHECK_FALSE(cfg.model.drive.has_value());
  CHECK(cfg.initial_state == InitialState::EG);
  CHECK(cfg.grid.t_max == 5.0);
  CHECK(cfg.grid.dt == 0.002);
  CHECK(std::abs(damping_forces(cfg.model.J, cfg.model.gamma, cfg.model.phi).delta_F + 1.0) <= 1e-12);
}

TEST_CASE("parse_config syntax and validation errors") {
  CHECK(error_of([] { parse_config(""); }).kind() == ErrorKind::ParseError);
  CHECK(error_of([] { parse_config("# only a comment\n\n"); }).kind() == ErrorKind::ParseError);

  const Error negative = error_of([] { parse_config("Gamma = -1"); });
  CHECK(negative.kind() == ErrorKind::ValidationError);
  CHECK(std::string(negative.what()).find("Gamma") != std::string::npos);

  const Error unknown = error_of([] { parse_config("J = 1\nfrobnicate = 2\n"); });
  CHECK(unknown.kind() == ErrorKind::ParseError);
  CHECK(std::string(unknown.what()).find("line 2") != std::string::npos);

  CHECK(error_of([] { parse_config("J 1"); }).kind() == ErrorKind::ParseError);
  CHECK(error_of([] { parse_config("J = one"); }).kind() == ErrorKind::ParseError);
  CHECK(error_of([] { parse_config("J = 1\nJ = 2"); }).kind() == ErrorKind::ParseError);
  CHECK(error_of([] { parse_config("kappa = -0.1"); }).kind() == ErrorKind::ValidationError);
  CHECK(error_of([] { parse_config("initial = XX"); }).kind() == ErrorKind::ValidationError);
  CHECK(error_of([] { parse_config("t_max = 0"); }).kind() == ErrorKind::ValidationError);
  CHECK(error_of([] { parse_config("t_max = 1\ndt = 2"); }).kind() == ErrorKind::ValidationError);
  CHECK(error_of([] { parse_config("drive_amplitude = 0.5"); }).kind() == ErrorKind::ValidationError);
  CHECK(error_of([] { parse_config("drive_target = 3\ndrive_amplitude = 0.5"); }).kind() ==
        ErrorKind::ValidationError);
  CHECK(error_of([] { parse_config("outputs = populations, spectra"); }).kind() == ErrorKind::ValidationError);
}

TEST_CASE("parse_config drive, resonance and outputs") {
  const auto cfg = parse_config(
      "# driven preset\n"
      "J = 1\n"
      "Gamma = 2\n"
      "phi = 4.71238898038469   # 3 pi / 2\n"
      "omega0 = 5\n"
      "drive_target = 2\n"
      "drive_amplitude = 0.7272727272727273\n"
      "drive_frequency = 5\n"
      "initial = PLUS\n"
      "t_max = 1\n"
      "outputs = populations, states\n"
      "output_path = driven.csv\n");
  REQUIRE(cfg.model.drive.has_value());
  CHECK(cfg.model.drive->target == Qubit::Two);
  CHECK(cfg.model.drive->amplitude == doctest::Approx(8.0 / 11.0).epsilon(1e-15));
  CHECK(cfg.initial_state == InitialState::Plus);
  CHECK(cfg.outputs == std::set<Output>{Output::Populations, Output::States});
  CHECK(cfg.output_path == "driven.csv");
  CHECK(cfg.grid.dt == 0.002);

  const Error detuned = error_of([] {
    parse_config("omega0 = 5\ndrive_target = 1\ndrive_amplitude = 0.5\ndrive_frequency = 5.5\n");
  });
  CHECK(detuned.kind() == ErrorKind::ValidationError);
  CHECK(std::string(detuned.what()).find("drive_frequency") != std::string::npos);
}

TEST_CASE("parse_sweep_config") {
  const auto cfg = parse_sweep_config(
      "J = 1\n"
      "observable = delta_F\n"
      "axis1_name = Gamma_over_J\naxis1_min = 0\naxis1_max = 4\naxis1_count = 3\n"
      "axis2_name = phi\naxis2_min = 0\naxis2_max = 6.283185307179586\naxis2_count = 5\n");
  CHECK(cfg.sweep.observable == SweepObservable::DeltaF);
  CHECK(cfg.sweep.axis1.parameter == SweepParameter::GammaOverJ);
  CHECK(cfg.sweep.axis2.count == 5);
  CHECK(cfg.sweep.axis2.value(4) == 2.0 * kPi);

  CHECK(error_of([] {
          parse_sweep_config("observable = delta_F\naxis1_name = phi\naxis1_min = 0\naxis1_max = 1\naxis1_count = 1\n"
                             "axis2_name = J\naxis2_min = 0\naxis2_max = 1\naxis2_count = 2\n");
        }).kind() == ErrorKind::ValidationError);
  CHECK(error_of([] {
          parse_sweep_config("observable = delta_F\naxis1_name = phi\naxis1_min = 1\naxis1_max = 0\naxis1_count = 2\n"
                             "axis2_name = J\naxis2_min = 0\naxis2_max = 1\naxis2_count = 2\n");
        }).kind() == ErrorKind::ValidationError);
  CHECK(error_of([] {
          parse_sweep_config("observable = delta_F\naxis1_name = phi\naxis1_min = 0\naxis1_max = 1\naxis1_count = 2\n"
                             "axis2_name = kappa\naxis2_min = 0\naxis2_max = 1\naxis2_count = 2\n");
        }).kind() == ErrorKind::ValidationError);
  CHECK(error_of([] {
          parse_sweep_config("observable = entropy\naxis1_name = phi\naxis1_min = 0\naxis1_max = 1\naxis1_count = 2\n"
                             "axis2_name = J\naxis2_min = 0\naxis2_max = 1\naxis2_count = 2\n");
        }).kind() == ErrorKind::ValidationError);
}

TEST_CASE("csv formatting") {
  CHECK(format_csv({{"t", "P1"}, {{0.5, std::exp(-1.0)}}}) == "t,P1\n0.5,0.367879441171442\n");
  CHECK(format_csv({{"t", "P1"}, {}}) == "t,P1\n");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-1.0) == "-1");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(error_of([] { format_csv({{"a"}, {{std::nan("")}}}); }).kind() == ErrorKind::IoError);
  CHECK(error_of([] { format_csv({{"a"}, {{INFINITY}}}); }).kind() == ErrorKind::IoError);
  CHECK(error_of([] { format_csv({{"a", "b"}, {{1.0}}}); }).kind() == ErrorKind::IoError);

  const fs::path dir = scratch_dir("csv");
  write_csv({{"t", "P1"}, {{0.5, std::exp(-1.0)}}}, dir / "one.csv");
  CHECK(slurp(dir / "one.csv") == "t,P1\n0.5,0.367879441171442\n");
  write_csv({{"t"}, {}}, dir / "empty.csv");
  CHECK(slurp(dir / "empty.csv") == "t\n");
  CHECK(error_of([&] { write_csv({{"t"}, {}}, dir / "missing" / "x.csv"); }).kind() == ErrorKind::IoError);
  fs::remove_all(dir);
}

TEST_CASE("figure ids") {
  CHECK(all_figures().size() == 15);
  for (auto id : all_figures()) CHECK(parse_figure_id(to_string(id)) == id);
  CHECK_FALSE(parse_figure_id("5a").has_value());
  CHECK_FALSE(parse_figure_id("7").has_value());
}

TEST_CASE("figure 2a grid") {
  const Table t = build_figure(FigureId::F2a);
  REQUIRE(t.rows.size() == 201 * 201);
  CHECK(t.header == std::vector<std::string>{"axis1", "axis2", "value"});
  const auto& cell = t.rows[100 * 201 + 150];
  CHECK(cell[0] == 2.0);
  CHECK(cell[1] == doctest::Approx(1.5 * kPi).epsilon(1e-15));
  CHECK(std::abs(cell[2] + 1.0) <= 1e-12);
  CHECK(std::abs(t.rows[100 * 201 + 50][2] - 1.0) <= 1e-12);
  for (std::size_t j = 0; j < 201; ++j) CHECK(t.rows[j][2] == 0.0);  // Gamma/J = 0
}

TEST_CASE("figure 2b reciprocal symmetry") {
  const Table t = build_figure(FigureId::F2b);
  const std::size_t p1_from_eg = column(t, "P1_1e");
  const std::size_t p2_from_ge = column(t, "P2_2e");
  for (const auto& row : t.rows) CHECK(std::abs(row[p1_from_eg] - row[p2_from_ge]) <= 1e-12);
}

TEST_CASE("figure 3 concurrence") {
  const Table iso = build_figure(FigureId::F3a);
  const std::size_t c1 = column(iso, "C_1e");
  const std::size_t c2 = column(iso, "C_2e");
  double peak = 0.0;
  for (const auto& row : iso.rows) {
    CHECK(row[c2] <= 1e-9);
    peak = std::max(peak, row[c1]);
  }
  CHECK(peak > 0.1);

  // Single-excitation amplitudes under complete isolation: c_eg = e^{-Gamma t / 2},
  // c_ge = -2iJt e^{-Gamma t / 2}, so C = 2|c_eg c_ge| = 4Jt e^{-Gamma t}.
  for (const auto& row : iso.rows) CHECK(std::abs(row[c1] - 4.0 * row[0] * std::exp(-2.0 * row[0])) <= 1e-9);

  const Table rec = build_figure(FigureId::F3b);
  for (const auto& row : rec.rows) CHECK(std::abs(row[column(rec, "C_1e")] - row[column(rec, "C_2e")]) <= 1e-9);
}

TEST_CASE("figure 6 driven steady state") {
  const Table a = build_figure(FigureId::F6a);
  const Table b = build_figure(FigureId::F6b);
  REQUIRE(a.rows.size() == b.rows.size());
  CHECK(a.rows.back()[0] == doctest::Approx(50.0));
  for (std::size_t k = 1; k < a.header.size(); ++k) CHECK(std::abs(a.rows.back()[k] - b.rows.back()[k]) <= 1e-6);

  const Table c = build_figure(FigureId::F6c);
  const double c_ss =
      concurrence(steady_state(build_liouvillian(preset_model(1.5 * kPi, Drive{Qubit::One, kPresetDriveAmplitude})))
                      .state);
  for (std::size_t k = 1; k < c.header.size(); ++k) CHECK(std::abs(c.rows.back()[k] - c_ss) <= 1e-6);
  CHECK(c_ss > 0.1);

  const Table d = build_figure(FigureId::F6d);
  for (std::size_t k = 1; k < d.header.size(); ++k) CHECK(d.rows.back()[k] <= 1e-6);
}

TEST_CASE("run_sweep") {
  SweepSpec tiny{{SweepParameter::Gamma, 0.0, 2.0, 2}, {SweepParameter::Phi, 0.0, 1.5 * kPi, 2}, SweepObservable::DeltaF};
  const Table t = run_sweep(tiny, preset_model(0.0));
  CHECK(t.rows.size() == 4);
  CHECK(std::abs(t.rows[3][2] + 1.0) <= 1e-12);

  // The preset is the same computation as a sweep with matching axes.
  CHECK(format_csv(run_sweep(figure_2a_sweep(), preset_model(0.0))) == format_csv(build_figure(FigureId::F2a)));
  const auto parsed = parse_sweep_config(
      "J = 1\nGamma = 2\nobservable = delta_F\n"
      "axis1_name = Gamma_over_J\naxis1_min = 0\naxis1_max = 4\naxis1_count = 201\n"
      "axis2_name = phi\naxis2_min = 0\naxis2_max = 6.283185307179586\naxis2_count = 201\n");
  CHECK(format_csv(run_sweep(parsed.sweep, parsed.model)) == format_csv(build_figure(FigureId::F2a)));
}

TEST_CASE("steady-concurrence sweep matches the driven trajectory") {
  const ModelParams base = preset_model(1.5 * kPi, Drive{Qubit::One, kPresetDriveAmplitude});
  const SweepSpec spec{{SweepParameter::DriveAmplitude, kPresetDriveAmplitude, 1.0, 2},
                       {SweepParameter::Kappa, 0.0, 0.5, 2},
                       SweepObservable::SteadyConcurrence};
  const Table t = run_sweep(spec, base);
  REQUIRE(t.header.size() == 4);
  CHECK(t.header[3] == "degenerate");
  const auto& row = t.rows[0];
  CHECK(row[0] == kPresetDriveAmplitude);
  CHECK(row[1] == 0.0);
  CHECK(row[3] == 0.0);

  const auto traj = evolve_rk4(DensityMatrix::from_initial(InitialState::G), build_liouvillian(base), driven_grid());
  CHECK(std::abs(row[2] - concurrence(traj.states.back())) <= 1e-6);

  // Undriven reciprocal point: degenerate, reported with the sentinel.
  const SweepSpec reciprocal{{SweepParameter::Phi, 0.0, kPi / 2.0, 2},
                             {SweepParameter::Kappa, 0.0, 0.5, 2},
                             SweepObservable::SteadyConcurrence};
  const Table r = run_sweep(reciprocal, preset_model(0.0));
  CHECK(r.rows[0][2] == -1.0);
  CHECK(r.rows[0][3] == 1.0);
}

TEST_CASE("trajectory tables") {
  const auto traj = evolve_rk4(DensityMatrix::from_initial(InitialState::EG), build_liouvillian(preset_model(1.5 * kPi)),
                               {0.5, 0.002, 50});
  const Table t = trajectory_table(traj, {Output::Concurrence, Output::Populations});
  CHECK(t.header == std::vector<std::string>{"t", "P1", "P2", "C"});
  CHECK(t.rows.size() == traj.times.size());
  CHECK(t.rows.back()[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));

  const Table all = trajectory_table(traj, {Output::Populations, Output::Concurrence, Output::Collective});
  CHECK(all.header == std::vector<std::string>{"t", "P1", "P2", "C", "P_E", "P_plus", "P_minus", "P_G"});

  const Table states = states_table(traj);
  CHECK(states.header.size() == 1 + 32);
  CHECK(states.rows[0][column(states, "re_11")] == 1.0);
}

TEST_CASE("run_experiment and run_figure write deterministic files") {
  const fs::path dir = scratch_dir("experiment");
  auto cfg = parse_config("J = 1\nGamma = 2\nphi = 4.71238898038469\nt_max = 0.5\noutputs = populations, states\n");
  const auto written = run_experiment(cfg, dir);
  REQUIRE(written.size() == 2);
  CHECK(written[0] == dir / "trajectory.csv");
  CHECK(written[1] == dir / "trajectory_states.csv");
  CHECK(slurp(written[0]).rfind("t,P1,P2\n0,1,0\n", 0) == 0);

  const auto first = slurp(run_figure(FigureId::F2b, dir / "a"));
  const auto second = slurp(run_figure(FigureId::F2b, dir / "b"));
  CHECK(first == second);
  CHECK(fs::exists(dir / "a" / "fig_2b.csv"));
  fs::remove_all(dir);
}
