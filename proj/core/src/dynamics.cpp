#include "nrq/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "nrq/error.hpp"

namespace nrq {

namespace {

constexpr std::size_t kDim = 4;
constexpr std::size_t kSuperDim = kDim * kDim;
constexpr double kMaxStepNorm = 0.1;

std::string describe(const StateDiagnostics& d) {
  return "hermiticity " + std::to_string(d.hermiticity_defect) + ", trace " + std::to_string(d.trace_defect) +
         ", min eigenvalue " + std::to_string(d.min_eigenvalue);
}

/// Builds the stored sample, escalating defects to StateInvariantViolated.
DensityMatrix checked_sample(const CVector& y, double t) {
  CMatrix rho = unvectorize(y, kDim);
  const StateDiagnostics d = validate_density_matrix(rho);
  if (!d.within(kIntegrationTolerance)) {
    throw Error(ErrorKind::StateInvariantViolated, "at t = " + std::to_string(t) + ": " + describe(d));
  }
  return DensityMatrix(std::move(rho), kIntegrationTolerance);
}

void apply(const CMatrix& L, const CVector& x, CVector& out) {
  for (std::size_t i = 0; i < kSuperDim; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < kSuperDim; ++j) acc += L(i, j) * x[j];
    out[i] = acc;
  }
}

void require_liouvillian_shape(const Liouvillian& L) {
  if (L.generator.rows() != kSuperDim || L.generator.cols() != kSuperDim) {
    throw Error(ErrorKind::ShapeMismatch, "Liouvillian must be 16x16");
  }
}

}  // namespace

bool StateDiagnostics::within(const StateTolerance& tol) const {
  return hermiticity_defect <= tol.hermiticity && trace_defect <= tol.trace && min_eigenvalue >= -tol.negativity;
}

StateDiagnostics validate_density_matrix(const CMatrix& rho, double tol) {
  if (rho.rows() != kDim || rho.cols() != kDim) {
    throw Error(ErrorKind::ShapeMismatch, "density matrix must be 4x4");
  }
  StateDiagnostics d;
  if (!rho.all_finite()) {
    d.hermiticity_defect = d.trace_defect = std::numeric_limits<double>::infinity();
    d.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return d;
  }
  d.hermiticity_defect = hermiticity_defect(rho);
  d.trace_defect = std::abs(trace(rho) - 1.0);
  const CMatrix herm = Complex{0.5, 0.0} * (rho + dagger(rho));
  d.min_eigenvalue = hermitian_eigensystem(herm, std::max(tol, 1e-12)).values.front();
  return d;
}

std::string_view to_string(InitialState s) {
  switch (s) {
    case InitialState::EG: return "EG";
    case InitialState::GE: return "GE";
    case InitialState::EE: return "EE";
    case InitialState::GG: return "GG";
    case InitialState::E: return "E";
    case InitialState::Plus: return "PLUS";
    case InitialState::Minus: return "MINUS";
    case InitialState::G: return "G";
  }
  return "?";
}

std::optional<InitialState> parse_initial_state(std::string_view name) {
  for (auto s : {InitialState::EG, InitialState::GE, InitialState::EE, InitialState::GG, InitialState::E,
                 InitialState::Plus, InitialState::Minus, InitialState::G}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

DensityMatrix::DensityMatrix(CMatrix m, const StateTolerance& tol) : m_(std::move(m)) {
  const StateDiagnostics d = validate_density_matrix(m_);
  if (!d.within(tol)) throw Error(ErrorKind::InvalidState, describe(d));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
  if (psi.size() != kDim) throw Error(ErrorKind::ShapeMismatch, "state vector must have 4 components");
  CMatrix m(kDim, kDim);
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_initial(InitialState s) {
  const double h = 1.0 / std::numbers::sqrt2;
  std::array<Complex, kDim> psi{};
  switch (s) {
    case InitialState::EE:
    case InitialState::E: psi[0] = 1.0; break;
    case InitialState::EG: psi[1] = 1.0; break;
    case InitialState::GE: psi[2] = 1.0; break;
    case InitialState::GG:
    case InitialState::G: psi[3] = 1.0; break;
    case InitialState::Plus: psi[1] = h; psi[2] = h; break;
    case InitialState::Minus: psi[1] = h; psi[2] = -h; break;
  }
  return pure(psi);
}

CVector vectorize(const CMatrix& x) {
  const std::size_t n = x.rows();
  CVector v(n * x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) v[i + n * j] = x(i, j);
  return v;
}

CMatrix unvectorize(std::span<const Complex> v, std::size_t n) {
  if (v.size() != n * n) throw Error(ErrorKind::ShapeMismatch, "vector length is not n*n");
  CMatrix x(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) x(i, j) = v[i + n * j];
  return x;
}

Liouvillian build_liouvillian(const CMatrix& H, const std::vector<CMatrix>& jumps) {
  if (H.rows() != kDim || H.cols() != kDim) throw Error(ErrorKind::ShapeMismatch, "Hamiltonian must be 4x4");
  if (hermiticity_defect(H) > kDefaultTol) throw Error(ErrorKind::NotHermitian, "Hamiltonian is not Hermitian");

  const CMatrix id = CMatrix::identity(kDim);
  const Complex minus_i{0.0, -1.0};
  CMatrix gen = minus_i * (kron(id, H) - kron(transpose(H), id));
  for (const CMatrix& jump : jumps) {
    if (jump.rows() != kDim || jump.cols() != kDim) {
      throw Error(ErrorKind::ShapeMismatch, "jump operators must be 4x4");
    }
    const CMatrix number = dagger(jump) * jump;
    gen += kron(conjugate(jump), jump);
    gen -= Complex{0.5, 0.0} * kron(id, number);
    gen -= Complex{0.5, 0.0} * kron(transpose(number), id);
  }
  return Liouvillian{std::move(gen), std::nullopt};
}

Liouvillian build_liouvillian(const ModelParams& params) {
  Liouvillian L = build_liouvillian(build_hamiltonian(params), build_jump_operators(params));
  L.params = params;
  return L;
}

std::size_t TimeGrid::steps() const {
  return static_cast<std::size_t>(std::llround(t_max / dt));
}

void TimeGrid::validate() const {
  if (!(t_max > 0.0) || !(dt > 0.0) || dt > t_max || !std::isfinite(t_max)) {
    throw Error(ErrorKind::ValidationError, "time grid needs 0 < dt <= t_max");
  }
  if (sample_every == 0) throw Error(ErrorKind::ValidationError, "sample_every must be >= 1");
  const double n = t_max / dt;
  if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
    throw Error(ErrorKind::ValidationError, "t_max must be an integer multiple of dt");
  }
}

Trajectory evolve_rk4(const DensityMatrix& rho0, const Liouvillian& L, const TimeGrid& grid) {
  require_liouvillian_shape(L);
  grid.validate();
  const double dt = grid.dt;
  if (dt * inf_norm(L.generator) > kMaxStepNorm) {
    throw Error(ErrorKind::StepTooLarge, "dt * ||L||_inf = " + std::to_string(dt * inf_norm(L.generator)) +
                                             " exceeds " + std::to_string(kMaxStepNorm));
  }

  const std::size_t steps = grid.steps();
  Trajectory traj{{}, {}, "rk4", dt};
  traj.times.reserve(steps / grid.sample_every + 2);
  traj.states.reserve(steps / grid.sample_every + 2);

  CVector y = vectorize(rho0.matrix());
  CVector k1(kSuperDim), k2(kSuperDim), k3(kSuperDim), k4(kSuperDim), tmp(kSuperDim);
  const CMatrix& gen = L.generator;

  traj.times.push_back(0.0);
  traj.states.push_back(checked_sample(y, 0.0));
  for (std::size_t step = 1; step <= steps; ++step) {
    apply(gen, y, k1);
    for (std::size_t i = 0; i < kSuperDim; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    apply(gen, tmp, k2);
    for (std::size_t i = 0; i < kSuperDim; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    apply(gen, tmp, k3);
    for (std::size_t i = 0; i < kSuperDim; ++i) tmp[i] = y[i] + dt * k3[i];
    apply(gen, tmp, k4);
    for (std::size_t i = 0; i < kSuperDim; ++i) y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    if (step % grid.sample_every == 0 || step == steps) {
      const double t = static_cast<double>(step) * dt;
      traj.times.push_back(t);
      traj.states.push_back(checked_sample(y, t));
    }
  }
  return traj;
}

Trajectory evolve_expm(const DensityMatrix& rho0, const Liouvillian& L, const TimeGrid& grid) {
  require_liouvillian_shape(L);
  grid.validate();
  const std::size_t steps = grid.steps();
  Trajectory traj{{}, {}, "expm", grid.dt};
  const CVector y0 = vectorize(rho0.matrix());

  for (std::size_t step = 0; step <= steps; ++step) {
    if (step % grid.sample_every != 0 && step != steps) continue;
    const double t = static_cast<double>(step) * grid.dt;
    const CMatrix propagator = matrix_exponential(L.generator * Complex{t, 0.0});
    traj.times.push_back(t);
    traj.states.push_back(checked_sample(propagator * std::span<const Complex>(y0), t));
  }
  return traj;
}

SteadyStateResult steady_state(const Liouvillian& L) {
  require_liouvillian_shape(L);
  const SingularSystem svd = right_singular_system(L.generator);
  const double gap = svd.values[1];
  const bool unique = gap > kSteadyStateGap;

  std::vector<CVector> candidates;
  auto column = [&](std::size_t k) {
    CVector v(kSuperDim);
    for (std::size_t r = 0; r < kSuperDim; ++r) v[r] = svd.vectors(r, k);
    return v;
  };
  candidates.push_back(column(0));
  if (!unique) {
    // Any null-space element is acceptable; look for one that is a state.
    std::vector<CVector> basis;
    for (std::size_t k = 0; k < kSuperDim && svd.values[k] <= kSteadyStateGap; ++k) basis.push_back(column(k));
    for (std::size_t a = 1; a < basis.size(); ++a) candidates.push_back(basis[a]);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = a + 1; b < basis.size(); ++b) {
        for (Complex w : {Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1}}) {
          CVector v(kSuperDim);
          for (std::size_t r = 0; r < kSuperDim; ++r) v[r] = basis[a][r] + w * basis[b][r];
          candidates.push_back(std::move(v));
        }
      }
    }
  }

  const StateTolerance tol{1e-8, 1e-10, 1e-8};
  for (const CVector& v : candidates) {
    CMatrix rho = unvectorize(v, kDim);
    const Complex tr = trace(rho);
    if (std::abs(tr) < 1e-8) continue;
    rho *= 1.0 / tr;
    if (hermiticity_defect(rho) > 1e-8) continue;
    rho = Complex{0.5, 0.0} * (rho + dagger(rho));
    if (!validate_density_matrix(rho).within(tol)) continue;
    const double residual = norm(L.generator * std::span<const Complex>(vectorize(rho)));
    return SteadyStateResult{DensityMatrix(std::move(rho), tol), gap, unique, residual};
  }
  throw Error(ErrorKind::NotAState, "null space of the Liouvillian contains no valid density matrix");
}

}  // namespace nrq
