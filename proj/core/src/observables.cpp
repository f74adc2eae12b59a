#include "nrq/observables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "nrq/error.hpp"
#include "nrq/model.hpp"

namespace nrq {

namespace {

const CMatrix& sigma_y_pair() {
  static const CMatrix sy(2, 2, {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}});
  static const CMatrix pair = kron(sy, sy);
  return pair;
}

void require_rate(double gamma) {
  if (!(gamma >= 0.0)) throw Error(ErrorKind::NegativeRate, "Gamma must be >= 0");
}

}  // namespace

std::pair<double, double> populations(const DensityMatrix& rho) {
  const CMatrix n1 = sigma_plus(Qubit::One) * sigma_minus(Qubit::One);
  const CMatrix n2 = sigma_plus(Qubit::Two) * sigma_minus(Qubit::Two);
  return {expectation(rho, n1).real(), expectation(rho, n2).real()};
}

Complex expectation(const DensityMatrix& rho, const CMatrix& op) {
  return trace(rho.matrix() * op);
}

CMatrix spin_flip(const CMatrix& rho) {
  const CMatrix& flip = sigma_y_pair();
  return flip * conjugate(rho) * flip;
}

namespace {
constexpr double kEigenvalueNoise = 64.0 * std::numeric_limits<double>::epsilon();
}  // namespace

double concurrence(const DensityMatrix& rho) {
  // Round-off can leave rho a hair outside the PSD cone; psd_sqrt clamps it.
  const CMatrix root = psd_sqrt(rho.matrix(), 1e-8);
  CMatrix r = root * spin_flip(rho.matrix()) * root;
  r = Complex{0.5, 0.0} * (r + dagger(r));
  std::vector<double> values = hermitian_eigensystem(r, 1e-8).values;
  // Eigenvalues of r below its round-off floor are zero; taking their square
  // root would turn 1e-17 noise into a 3e-9 concurrence error on the
  // rank-deficient states the dynamics produce.
  const double floor = kEigenvalueNoise * std::max(1.0, frobenius_norm(rho.matrix()) * frobenius_norm(r));
  for (double& v : values) v = v > floor ? std::sqrt(v) : 0.0;
  std::sort(values.begin(), values.end(), std::greater<>());
  return std::max(0.0, values[0] - values[1] - values[2] - values[3]);
}

const CMatrix& collective_basis_transform() {
  const double h = 1.0 / std::numbers::sqrt2;
  static const CMatrix t(4, 4, {1, 0, 0, 0,
                                0, h, h, 0,
                                0, h, -h, 0,
                                0, 0, 0, 1});
  return t;
}

CMatrix to_collective_basis(const DensityMatrix& rho) {
  const CMatrix& t = collective_basis_transform();
  return t * rho.matrix() * dagger(t);
}

CollectivePopulations collective_populations(const DensityMatrix& rho) {
  const CMatrix c = to_collective_basis(rho);
  return {c(0, 0).real(), c(1, 1).real(), c(2, 2).real(), c(3, 3).real()};
}

IsolationReport damping_forces(Complex J, double gamma, double phi) {
  require_rate(gamma);
  const Complex i{0.0, 1.0};
  const double wrapped = wrap_phase(phi);
  IsolationReport r;
  r.F12 = std::abs(i * J + (gamma / 2.0) * std::polar(1.0, wrapped));
  r.F21 = std::abs(i * std::conj(J) + (gamma / 2.0) * std::polar(1.0, -wrapped));
  const double total = r.F12 + r.F21;
  r.delta_F = total > 0.0 ? std::clamp((r.F12 - r.F21) / total, -1.0, 1.0) : 0.0;
  return r;
}

std::array<Complex, 4> effective_decay_amplitudes(double gamma, double phi) {
  require_rate(gamma);
  const double scale = std::sqrt(gamma / 2.0);
  const Complex e = std::polar(1.0, wrap_phase(phi));
  const Complex bright = scale * (1.0 + e);
  return {bright, bright, scale * (-1.0 + e), scale * (1.0 - e)};
}

std::vector<std::vector<double>> isolation_map(double J, std::span<const double> gamma_over_J,
                                               std::span<const double> phi) {
  std::vector<std::vector<double>> grid;
  grid.reserve(gamma_over_J.size());
  for (double ratio : gamma_over_J) {
    auto& row = grid.emplace_back();
    row.reserve(phi.size());
    for (double p : phi) row.push_back(damping_forces(Complex{J, 0.0}, ratio * J, p).delta_F);
  }
  return grid;
}

}  // namespace nrq
