#include <doctest.h>

#include "gravbath/experiment.hpp"
#include "gravbath/rng.hpp"

using namespace gravbath;

namespace {
ExperimentSpec rb780(double tau = 1.0) {
  ExperimentSpec s;
  s.m_a = 1.4431606e-25;            // 87Rb [kg]
  s.k = 2.0 * M_PI / 780e-9;        // D2 line
  s.tau = tau;
  s.sigma = 1e-5;
  s.z0 = 1.0;
  return s;
}
}  // namespace

TEST_CASE("physical constants presets") {
  const auto si = PhysicalConstants::si();
  CHECK(si.valid());
  CHECK(si.G == doctest::Approx(6.67430e-11));
  // Planck mass is consistent with sqrt(hbar c / G)
  CHECK(si.m_planck == doctest::Approx(std::sqrt(si.hbar * si.c / si.G)).epsilon(1e-5));
  const auto ones = PhysicalConstants::dimensionless();
  CHECK(ones.valid());
  CHECK(ones.G == 1.0);
  CHECK(ones.hbar == 1.0);
}

TEST_CASE("effective dipole") {
  SUBCASE("unit inputs") {
    PhysicalConstants c = PhysicalConstants::dimensionless();
    c.hbar = 2.0;
    ExperimentSpec s;
    s.z0 = 0.0;
    CHECK(effective_dipole(s, c) == doctest::Approx(1.0));
  }
  SUBCASE("zero recoil limit") {
    ExperimentSpec s;
    s.z0 = 5.0;
    s.k = 0.0;
    CHECK(effective_dipole(s, PhysicalConstants::dimensionless()) == doctest::Approx(5.0));
  }
  SUBCASE("rubidium at one second") {
    // direct arithmetic: 1 m + hbar k tau / 2 m_a = 1 m + 2.943 mm
    CHECK(effective_dipole(rb780(), PhysicalConstants::si()) ==
          doctest::Approx(1.0029431796).epsilon(1e-8));
  }
  SUBCASE("monotone in z0, k, tau") {
    const auto c = PhysicalConstants::si();
    Rng rng(21, 0);
    for (int i = 0; i < 50; ++i) {
      ExperimentSpec s = rb780(0.1 + rng.uniform());
      s.z0 = rng.uniform();
      const double base = effective_dipole(s, c);
      ExperimentSpec up = s;
      up.z0 += 0.1 + rng.uniform();
      CHECK(effective_dipole(up, c) > base);
      up = s;
      up.k *= 1.0 + rng.uniform();
      CHECK(effective_dipole(up, c) > base);
      up = s;
      up.tau *= 1.0 + rng.uniform();
      CHECK(effective_dipole(up, c) > base);
    }
  }
}

TEST_CASE("standard quantum limit width") {
  PhysicalConstants ones = PhysicalConstants::dimensionless();
  ExperimentSpec s;
  s.tau = 2.0;
  CHECK(standard_quantum_limit_sigma(s, ones) == doctest::Approx(1.0));

  CHECK(standard_quantum_limit_sigma(rb780(), PhysicalConstants::si()) ==
        doctest::Approx(1.9114624e-5).epsilon(1e-6));

  const double base = standard_quantum_limit_sigma(rb780(1.0), PhysicalConstants::si());
  const double quad = standard_quantum_limit_sigma(rb780(4.0), PhysicalConstants::si());
  CHECK(quad == doctest::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("experiment spec validation") {
  ExperimentSpec s;
  CHECK_NOTHROW(s.validate());
  s.tau = -1.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = ExperimentSpec{};
  s.Q = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = ExperimentSpec{};
  s.sigma = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = ExperimentSpec{};
  s.z0 = -0.1;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}
