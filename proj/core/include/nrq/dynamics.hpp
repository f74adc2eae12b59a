#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrq/linalg.hpp"
#include "nrq/model.hpp"

namespace nrq {

/// Defect thresholds a matrix must satisfy to count as a density matrix.
struct StateTolerance {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double negativity = 1e-8;
};

/// Thresholds applied to states produced by time integration.
inline constexpr StateTolerance kIntegrationTolerance{1e-6, 1e-6, 1e-6};

struct StateDiagnostics {
  double hermiticity_defect = 0.0;  // max |rho - rho^dagger|
  double trace_defect = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part

  bool within(const StateTolerance& tol) const;
};

StateDiagnostics validate_density_matrix(const CMatrix& rho, double tol = kDefaultTol);

enum class InitialState { EG, GE, EE, GG, E, Plus, Minus, G };

std::string_view to_string(InitialState s);
std::optional<InitialState> parse_initial_state(std::string_view name);

/// 4x4 two-qubit state. Construction always validates.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m, const StateTolerance& tol = {});

  static DensityMatrix from_initial(InitialState s);
  /// |psi><psi| for a normalised 4-component amplitude vector.
  static DensityMatrix pure(std::span<const Complex> psi);

  const CMatrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  CMatrix m_;
};

/// Column stacking: vec(X)[i + n j] = X(i, j), so vec(A X B) = (B^T (x) A) vec(X).
CVector vectorize(const CMatrix& x);
CMatrix unvectorize(std::span<const Complex> v, std::size_t n);

struct Liouvillian {
  CMatrix generator;                    // 16x16
  std::optional<ModelParams> params;    // set when built from a model
};

Liouvillian build_liouvillian(const CMatrix& H, const std::vector<CMatrix>& jumps);
Liouvillian build_liouvillian(const ModelParams& params);

struct TimeGrid {
  double t_max = 5.0;
  double dt = 0.002;
  std::size_t sample_every = 1;  // store every n-th step; the final step is always stored

  std::size_t steps() const;
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::string integrator;
  double step = 0.0;
};

/// Classical fixed-step RK4 on d vec(rho)/dt = L vec(rho). Requires
/// dt * ||L||_inf <= 0.1. The trace is never renormalised.
Trajectory evolve_rk4(const DensityMatrix& rho0, const Liouvillian& L, const TimeGrid& grid);

/// rho(t_k) = unvec(exp(L t_k) vec(rho0)) at the same sample times as evolve_rk4.
Trajectory evolve_expm(const DensityMatrix& rho0, const Liouvillian& L, const TimeGrid& grid);

inline constexpr double kSteadyStateGap = 1e-8;

struct SteadyStateResult {
  DensityMatrix state;
  double spectral_gap = 0.0;  // second-smallest singular value of L
  bool unique = false;
  double residual = 0.0;      // ||L vec(state)||
};

SteadyStateResult steady_state(const Liouvillian& L);

}  // namespace nrq
