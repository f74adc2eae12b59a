#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nrq/error.hpp"
#include "nrq/model.hpp"

using namespace nrq;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex I{0.0, 1.0};

template <typename F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an nrq::Error");
  return ErrorKind::IoError;
}

// Basis positions under |ee>, |eg>, |ge>, |gg>.
constexpr std::size_t EE = 0, EG = 1, GE = 2, GG = 3;

}  // namespace

TEST_CASE("sigma_minus follows the basis convention") {
  CMatrix s1(4, 4);
  s1(2, 0) = 1.0;  // |ee> -> |ge>
  s1(3, 1) = 1.0;  // |eg> -> |gg>
  CHECK(sigma_minus(1) == s1);

  CMatrix s2(4, 4);
  s2(1, 0) = 1.0;  // |ee> -> |eg>
  s2(3, 2) = 1.0;  // |ge> -> |gg>
  CHECK(sigma_minus(2) == s2);

  CHECK(dagger(sigma_minus(1)) * sigma_minus(1) == CMatrix::diagonal({1.0, 1.0, 0.0, 0.0}));
  CHECK(error_kind_of([] { sigma_minus(3); }) == ErrorKind::BadIndex);
  CHECK(error_kind_of([] { sigma_minus(0); }) == ErrorKind::BadIndex);
}

TEST_CASE("coherent Hamiltonian") {
  CHECK(build_coherent_hamiltonian(0.0) == CMatrix::zeros(4, 4));

  const CMatrix h = build_coherent_hamiltonian(1.0);
  CMatrix expected(4, 4);
  expected(EG, GE) = 1.0;
  expected(GE, EG) = 1.0;
  CHECK(h == expected);

  // Spectrum (-J, 0, 0, J) with |-> and |+> as the nonzero eigenvectors.
  const auto es = hermitian_eigensystem(build_coherent_hamiltonian(1.0));
  CHECK(es.values[0] == doctest::Approx(-1.0));
  CHECK(std::abs(es.values[1]) < 1e-14);
  CHECK(std::abs(es.values[2]) < 1e-14);
  CHECK(es.values[3] == doctest::Approx(1.0));
  const double h2 = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(std::abs(es.vectors(EG, 0)) - h2) < 1e-12);
  CHECK(std::abs(es.vectors(EG, 0) + es.vectors(GE, 0)) < 1e-12);   // |->
  CHECK(std::abs(es.vectors(EG, 3) - es.vectors(GE, 3)) < 1e-12);   // |+>

  const CMatrix hc = build_coherent_hamiltonian(Complex{0.3, -1.7});
  CHECK(hc(EG, GE) == Complex{0.3, -1.7});
  CHECK(hermiticity_defect(hc) <= 1e-14);
}

TEST_CASE("drive Hamiltonian") {
  CHECK(build_drive_hamiltonian(Qubit::One, 0.0) == CMatrix::zeros(4, 4));

  const double omega = 8.0 / 11.0;
  const CMatrix sx(2, 2, {0.0, 1.0, 1.0, 0.0});
  CHECK(max_abs_diff(build_drive_hamiltonian(Qubit::One, omega), omega * kron(sx, CMatrix::identity(2))) < 1e-16);
  CHECK(max_abs_diff(build_drive_hamiltonian(Qubit::Two, omega), omega * kron(CMatrix::identity(2), sx)) < 1e-16);
  CHECK(std::abs(trace(build_drive_hamiltonian(Qubit::Two, 0.9))) == 0.0);
  CHECK(hermiticity_defect(build_drive_hamiltonian(Qubit::One, 0.37)) <= 1e-14);
  CHECK(error_kind_of([] { build_drive_hamiltonian(Qubit::One, -1.0); }) == ErrorKind::NegativeRate);
}

TEST_CASE("jump operators") {
  ModelParams quiet;
  quiet.gamma = 0.0;
  quiet.kappa = 0.0;
  CHECK(build_jump_operators(quiet).empty());

  ModelParams isolated;
  isolated.gamma = 2.0;
  isolated.phi = 1.5 * kPi;
  const auto jumps = build_jump_operators(isolated);
  REQUIRE(jumps.size() == 1);
  const CMatrix expected = std::sqrt(2.0) * (sigma_minus(1) - I * sigma_minus(2));
  CHECK(max_abs_diff(jumps[0], expected) < 1e-15);

  ModelParams bright;
  bright.gamma = 1.0;
  bright.phi = 0.0;
  CHECK(max_abs_diff(build_jump_operators(bright)[0], sigma_minus(1) + sigma_minus(2)) < 1e-16);

  ModelParams dephased = isolated;
  dephased.kappa = 0.25;
  const auto with_dephasing = build_jump_operators(dephased);
  REQUIRE(with_dephasing.size() == 3);
  CHECK(max_abs_diff(with_dephasing[1], 0.5 * sigma_z(Qubit::One)) < 1e-16);
  CHECK(max_abs_diff(with_dephasing[2], 0.5 * sigma_z(Qubit::Two)) < 1e-16);

  ModelParams negative;
  negative.gamma = -1.0;
  CHECK(error_kind_of([&] { build_jump_operators(negative); }) == ErrorKind::NegativeRate);
  negative.gamma = 1.0;
  negative.kappa = -0.1;
  CHECK(error_kind_of([&] { build_jump_operators(negative); }) == ErrorKind::NegativeRate);
}

TEST_CASE("collective jump annihilates the ground state and is 2pi periodic") {
  for (double phi : {0.0, 0.3, 1.5 * kPi, -2.0, 11.0}) {
    ModelParams m;
    m.gamma = 1.7;
    m.phi = phi;
    const CMatrix L = build_jump_operators(m)[0];
    for (std::size_t r = 0; r < 4; ++r) CHECK(L(r, GG) == Complex{});

    ModelParams shifted = m;
    shifted.phi = phi + 2.0 * kPi;
    CHECK(max_abs_diff(build_jump_operators(shifted)[0], L) <= 1e-15);
  }
}

TEST_CASE("phase_from_separation") {
  CHECK(phase_from_separation({0.75, 1.0}) == doctest::Approx(1.5 * kPi));
  CHECK(phase_from_separation({0.0, 3.0}) == 0.0);
  CHECK(phase_from_separation({0.5, 1.0}) == doctest::Approx(kPi));
  CHECK(phase_from_separation({3.0, 4.0}) == doctest::Approx(1.5 * kPi));  // (4n+3)/4 with n = 0, lambda = 4
  CHECK(error_kind_of([] { phase_from_separation({1.0, 0.0}); }) == ErrorKind::BadWavelength);
  CHECK(error_kind_of([] { phase_from_separation({1.0, -2.0}); }) == ErrorKind::BadWavelength);
}

TEST_CASE("collective_decay_matrix") {
  const CMatrix reciprocal = collective_decay_matrix(2.0, 0.0);
  for (const auto& z : reciprocal.data()) CHECK(std::abs(z - 1.0) < 1e-16);

  const CMatrix isolated = collective_decay_matrix(2.0, 1.5 * kPi);
  CHECK(std::abs(isolated(0, 0) - 1.0) < 1e-16);
  CHECK(std::abs(isolated(1, 1) - 1.0) < 1e-16);
  CHECK(std::abs(isolated(0, 1) + I) < 1e-15);
  CHECK(std::abs(isolated(1, 0) + I) < 1e-15);

  CHECK(collective_decay_matrix(0.0, 1.0) == CMatrix::zeros(2, 2));
  CHECK(error_kind_of([] { collective_decay_matrix(-1.0, 0.0); }) == ErrorKind::NegativeRate);

  // Off-diagonal phase matches the geometric phase modulo 2pi.
  const GeometryParams g{2.3, 0.7};
  const double phi = phase_from_separation(g);
  const double arg = std::arg(collective_decay_matrix(1.0, phi)(0, 1));
  CHECK(std::abs(std::remainder(arg - phi, 2.0 * kPi)) < 1e-12);
}

TEST_CASE("complete isolation coupling") {
  const Complex j = complete_isolation_coupling(2.0, 1.5 * kPi);
  CHECK(std::abs(j - 1.0) < 1e-15);
  const Complex j2 = complete_isolation_coupling(2.0, 0.5 * kPi);
  CHECK(std::abs(j2 + 1.0) < 1e-15);
}

TEST_CASE("transmon_frequency") {
  CHECK(transmon_frequency(1.0, 2.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(transmon_frequency(0.2, 10.0) == doctest::Approx(3.8).epsilon(1e-15));
  CHECK(transmon_frequency(0.125, 0.125) == doctest::Approx(0.22855339059327373).epsilon(1e-15));
  CHECK(error_kind_of([] { transmon_frequency(0.0, 1.0); }) == ErrorKind::BadEnergy);
  CHECK(error_kind_of([] { transmon_frequency(1.0, -1.0); }) == ErrorKind::BadEnergy);
}

TEST_CASE("coupling_from_circuit") {
  const CircuitParams base{1.0, 1.0, 2.0, 2.0, 1.0};
  CHECK(coupling_from_circuit(base) == doctest::Approx(2.0).epsilon(1e-15));

  // Quarter-power law in the product E_J1 * E_J2.
  CircuitParams one_scaled = base;
  one_scaled.E_J1 *= 16.0;
  CHECK(coupling_from_circuit(one_scaled) == doctest::Approx(4.0).epsilon(1e-15));
  CircuitParams both_scaled = base;
  both_scaled.E_J1 *= 16.0;
  both_scaled.E_J2 *= 16.0;
  CHECK(coupling_from_circuit(both_scaled) == doctest::Approx(8.0).epsilon(1e-15));
  CircuitParams both_by_four = base;
  both_by_four.E_J1 *= 4.0;
  both_by_four.E_J2 *= 4.0;
  CHECK(coupling_from_circuit(both_by_four) == doctest::Approx(4.0).epsilon(1e-15));

  double previous = coupling_from_circuit(base);
  for (double ecc : {10.0, 100.0, 1e4, 1e8}) {
    CircuitParams c = base;
    c.E_Cc = ecc;
    const double j = coupling_from_circuit(c);
    CHECK(j < previous);
    previous = j;
  }
  CHECK(previous < 1e-7);

  CircuitParams bad = base;
  bad.E_Cc = 0.0;
  CHECK(error_kind_of([&] { coupling_from_circuit(bad); }) == ErrorKind::BadEnergy);
}

TEST_CASE("circuit warnings flag the charge regime") {
  CHECK(circuit_warnings({1.0, 1.0, 50.0, 50.0, 1.0}).empty());
  CHECK(circuit_warnings({1.0, 1.0, 2.0, 50.0, 1.0}).size() == 1);
}
