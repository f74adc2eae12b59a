#include "nrq/model.hpp"

#include <cmath>
#include <numbers>

#include "nrq/error.hpp"

namespace nrq {

namespace {

const CMatrix& single_sigma_minus() {
  // |g><e| with single-qubit order (|e>, |g>).
  static const CMatrix sm(2, 2, {0.0, 0.0, 1.0, 0.0});
  return sm;
}

const CMatrix& single_sigma_z() {
  static const CMatrix sz = CMatrix::diagonal({1.0, -1.0});
  return sz;
}

CMatrix embed(const CMatrix& single, Qubit q) {
  const CMatrix id = CMatrix::identity(2);
  return q == Qubit::One ? kron(single, id) : kron(id, single);
}

void require_rate(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::NegativeRate, std::string(name) + " must be a finite value >= 0");
  }
}

void require_energy(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::BadEnergy, std::string(name) + " must be > 0");
  }
}

}  // namespace

Qubit qubit_from_index(int index) {
  if (index == 1) return Qubit::One;
  if (index == 2) return Qubit::Two;
  throw Error(ErrorKind::BadIndex, "qubit index must be 1 or 2, got " + std::to_string(index));
}

void ModelParams::validate() const {
  require_rate(gamma, "Gamma");
  require_rate(kappa, "kappa");
  if (drive) require_rate(drive->amplitude, "drive amplitude");
  if (!std::isfinite(J.real()) || !std::isfinite(J.imag()) || !std::isfinite(phi)) {
    throw Error(ErrorKind::ValidationError, "J and phi must be finite");
  }
}

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(phi, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  return wrapped;
}

CMatrix sigma_minus(Qubit q) { return embed(single_sigma_minus(), q); }
CMatrix sigma_plus(Qubit q) { return dagger(sigma_minus(q)); }
CMatrix sigma_z(Qubit q) { return embed(single_sigma_z(), q); }

CMatrix build_coherent_hamiltonian(Complex J) {
  const CMatrix hop = sigma_plus(Qubit::One) * sigma_minus(Qubit::Two);
  return J * hop + std::conj(J) * dagger(hop);
}

CMatrix build_drive_hamiltonian(Qubit target, double amplitude) {
  require_rate(amplitude, "drive amplitude");
  return Complex{amplitude, 0.0} * (sigma_plus(target) + sigma_minus(target));
}

CMatrix build_hamiltonian(const ModelParams& params) {
  params.validate();
  CMatrix h = build_coherent_hamiltonian(params.J);
  if (params.drive) h += build_drive_hamiltonian(params.drive->target, params.drive->amplitude);
  return h;
}

std::vector<CMatrix> build_jump_operators(const ModelParams& params) {
  params.validate();
  std::vector<CMatrix> jumps;
  if (params.gamma > 0.0) {
    const Complex phase = std::polar(1.0, wrap_phase(params.phi));
    jumps.push_back(std::sqrt(params.gamma) * (sigma_minus(Qubit::One) + phase * sigma_minus(Qubit::Two)));
  }
  if (params.kappa > 0.0) {
    const double root = std::sqrt(params.kappa);
    jumps.push_back(root * sigma_z(Qubit::One));
    jumps.push_back(root * sigma_z(Qubit::Two));
  }
  return jumps;
}

Complex complete_isolation_coupling(double gamma, double phi) {
  require_rate(gamma, "Gamma");
  return Complex{0.0, 1.0} * (gamma / 2.0) * std::polar(1.0, wrap_phase(phi));
}

double phase_from_separation(const GeometryParams& g) {
  if (!(g.wavelength > 0.0) || !std::isfinite(g.wavelength)) {
    throw Error(ErrorKind::BadWavelength, "wavelength must be > 0");
  }
  if (!(g.separation >= 0.0)) {
    throw Error(ErrorKind::BadWavelength, "separation must be >= 0");
  }
  return 2.0 * std::numbers::pi * g.separation / g.wavelength;
}

CMatrix collective_decay_matrix(double gamma, double phi) {
  require_rate(gamma, "Gamma");
  const Complex self{gamma / 2.0, 0.0};
  const Complex cross = self * std::polar(1.0, wrap_phase(phi));
  return CMatrix(2, 2, {self, cross, cross, self});
}

double transmon_frequency(double E_C, double E_J) {
  require_energy(E_C, "E_C");
  require_energy(E_J, "E_J");
  return std::sqrt(8.0 * E_C * E_J) - E_C;
}

double coupling_from_circuit(const CircuitParams& c) {
  require_energy(c.E_C1, "E_C1");
  require_energy(c.E_C2, "E_C2");
  require_energy(c.E_J1, "E_J1");
  require_energy(c.E_J2, "E_J2");
  require_energy(c.E_Cc, "E_Cc");
  const double ratio = (c.E_J1 / (2.0 * c.E_C1)) * (c.E_J2 / (2.0 * c.E_C2));
  return (2.0 * c.E_C1 * c.E_C2 / c.E_Cc) * std::pow(ratio, 0.25);
}

std::vector<std::string> circuit_warnings(const CircuitParams& c) {
  std::vector<std::string> notes;
  if (c.E_C1 > 0.0 && c.E_J1 / c.E_C1 < 10.0) notes.emplace_back("qubit 1: E_J/E_C below 10, outside the transmon regime");
  if (c.E_C2 > 0.0 && c.E_J2 / c.E_C2 < 10.0) notes.emplace_back("qubit 2: E_J/E_C below 10, outside the transmon regime");
  return notes;
}

}  // namespace nrq
