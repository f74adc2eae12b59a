#pragma once

#include <array>
#include <utility>
#include <vector>

#include "nrq/dynamics.hpp"
#include "nrq/linalg.hpp"

namespace nrq {

/// Damping forces |F12| (qubit 2 acting on qubit 1), |F21| and the isolation
/// ratio (F12 - F21)/(F12 + F21). The ratio is 0 when both forces vanish.
struct IsolationReport {
  double F12 = 0.0;
  double F21 = 0.0;
  double delta_F = 0.0;
};

struct CollectivePopulations {
  double P_E = 0.0;
  double P_plus = 0.0;
  double P_minus = 0.0;
  double P_G = 0.0;
};

/// Excited-state populations <s+ s-> of qubit 1 and qubit 2.
std::pair<double, double> populations(const DensityMatrix& rho);

/// Wootters concurrence from the spectrum of sqrt(rho) rho~ sqrt(rho), with
/// rho~ = (sy (x) sy) rho* (sy (x) sy) and sy = [[0, -i], [i, 0]] in (|e>, |g>).
double concurrence(const DensityMatrix& rho);

/// The spin-flipped state rho~.
CMatrix spin_flip(const CMatrix& rho);

/// Unitary whose rows are <E|, <+|, <-|, <G| in the computational basis.
const CMatrix& collective_basis_transform();

/// T rho T^dagger: the state expressed in the {|E>, |+>, |->, |G>} basis.
CMatrix to_collective_basis(const DensityMatrix& rho);
CollectivePopulations collective_populations(const DensityMatrix& rho);

Complex expectation(const DensityMatrix& rho, const CMatrix& op);

IsolationReport damping_forces(Complex J, double gamma, double phi);

/// Collective decay path amplitudes in the order (E->+, +->G, E->-, -->G).
std::array<Complex, 4> effective_decay_amplitudes(double gamma, double phi);

/// Isolation ratio on the Cartesian grid; rows follow gamma_over_J, columns phi.
std::vector<std::vector<double>> isolation_map(double J, std::span<const double> gamma_over_J,
                                               std::span<const double> phi);

}  // namespace nrq
