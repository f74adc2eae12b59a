#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nrq/linalg.hpp"

namespace nrq {

/// Two-qubit computational basis order: |ee>, |eg>, |ge>, |gg>. Qubit 1 is the
/// left (most significant) tensor factor; single-qubit order is (|e>, |g>).
enum class Qubit { One = 1, Two = 2 };

Qubit qubit_from_index(int index);

struct Drive {
  Qubit target = Qubit::One;
  double amplitude = 0.0;  // resonant drive strength, rotating frame
};

/// Parameters of the two-qubit master equation. Rates are expressed in units
/// of the coherent coupling (J = 1 for every preset); time is then Jt.
struct ModelParams {
  Complex J{1.0, 0.0};
  double gamma = 0.0;
  double phi = 0.0;  // stored unwrapped
  double kappa = 0.0;
  std::optional<Drive> drive;
  double omega0 = 0.0;  // bookkeeping only; dynamics live in the rotating frame

  void validate() const;
};

struct CircuitParams {
  double E_C1 = 0.0;
  double E_C2 = 0.0;
  double E_J1 = 0.0;
  double E_J2 = 0.0;
  double E_Cc = 0.0;
};

struct GeometryParams {
  double separation = 0.0;
  double wavelength = 1.0;
};

double wrap_phase(double phi);

CMatrix sigma_minus(Qubit q);
inline CMatrix sigma_minus(int qubit) { return sigma_minus(qubit_from_index(qubit)); }
CMatrix sigma_plus(Qubit q);
CMatrix sigma_z(Qubit q);

/// J s1+ s2- + J* s2+ s1-.
CMatrix build_coherent_hamiltonian(Complex J);
/// amplitude (s+ + s-) on the target qubit.
CMatrix build_drive_hamiltonian(Qubit target, double amplitude);
CMatrix build_hamiltonian(const ModelParams& params);

/// Rates are folded into the operators, so the dissipator is sum_k D[L_k]:
/// sqrt(Gamma)(s1- + e^{i phi} s2-) when Gamma > 0, then sqrt(kappa) s1z and
/// sqrt(kappa) s2z when kappa > 0.
std::vector<CMatrix> build_jump_operators(const ModelParams& params);

/// Coupling that makes qubit 1 blind to qubit 2: J = i (Gamma/2) e^{i phi}.
Complex complete_isolation_coupling(double gamma, double phi);

double phase_from_separation(const GeometryParams& g);

/// 2x2 matrix of collective rates J_nm = (Gamma/2) e^{i phi [n != m]}.
CMatrix collective_decay_matrix(double gamma, double phi);

/// hbar omega_t = sqrt(8 E_C E_J) - E_C, with hbar = 1.
double transmon_frequency(double E_C, double E_J);

/// Exchange coefficient of a capacitively coupled transmon pair:
/// (2 E_C1 E_C2 / E_Cc) (E_J1/(2 E_C1) * E_J2/(2 E_C2))^{1/4}.
double coupling_from_circuit(const CircuitParams& c);

/// Human-readable notes for circuits outside the transmon regime (E_J/E_C < 10).
std::vector<std::string> circuit_warnings(const CircuitParams& c);

}  // namespace nrq
