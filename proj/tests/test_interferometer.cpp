#include <doctest.h>

#include <cmath>

#include "gravbath/interferometer.hpp"
#include "gravbath/quadrature.hpp"
#include "gravbath/rng.hpp"

using namespace gravbath;

TEST_CASE("population from overlap") {
  CHECK(population_from_overlap({{1.0, 0.0}}, 0.0) == doctest::Approx(1.0));
  CHECK(population_from_overlap({{1.0, 0.0}}, M_PI) == doctest::Approx(0.0));
  for (double th : {0.0, 0.3, 1.0, 2.5, -1.2}) {
    CHECK(population_from_overlap({{0.0, 0.0}}, th) == doctest::Approx(0.5));
  }
  SUBCASE("overlap above unit modulus rejected") {
    CHECK_THROWS_AS(population_from_overlap({{1.1, 0.0}}, 0.0), NumericalError);
  }
  SUBCASE("tiny excursions are clamped") {
    const double p = population_from_overlap({{1.0 + 5e-13, 0.0}}, 0.0);
    CHECK(p == 1.0);
  }
}

TEST_CASE("free population") {
  CHECK(free_population(0.0) == doctest::Approx(1.0));
  CHECK(free_population(M_PI / 2) == doctest::Approx(0.5));
  CHECK(free_population(M_PI / 3) == doctest::Approx(0.75));
}

TEST_CASE("ground/excited complementarity is exact") {
  Rng rng(3, 0);
  for (int i = 0; i < 200; ++i) {
    const double r = rng.uniform();
    const double phi = 2.0 * M_PI * rng.uniform();
    const OverlapFactor o{std::polar(r, phi)};
    const OverlapFactor minus{-o.value};
    const double th = 4.0 * M_PI * (rng.uniform() - 0.5);
    CHECK(population_from_overlap(o, th) + population_from_overlap(minus, th) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("three-point stencil annihilates affine trajectories") {
  Rng rng(4, 0);
  ExperimentSpec spec;
  spec.k = 2.7;
  spec.tau = 1.3;
  for (int i = 0; i < 100; ++i) {
    const double a = 10.0 * (rng.uniform() - 0.5);
    const double b = 10.0 * (rng.uniform() - 0.5);
    RelativeTrajectory traj{[a, b](double t) { return a + b * t; }, 2.0 * spec.tau};
    const auto o = overlap_from_relative_trajectory(traj, spec);
    const double tol = 64.0 * 1e-16 * spec.k * (std::abs(a) + 2.0 * std::abs(b) * spec.tau + 1.0);
    CHECK(std::abs(std::arg(o.value)) <= tol);
  }
}

TEST_CASE("quadratic relative trajectory gives k a tau^2") {
  ExperimentSpec spec;
  spec.k = 1.3;
  spec.tau = 0.7;
  const double a = 0.9;
  RelativeTrajectory traj{[a](double t) { return 0.5 * a * t * t; }, 2.0 * spec.tau};
  const auto o = overlap_from_relative_trajectory(traj, spec);
  CHECK(std::arg(o.value) == doctest::Approx(spec.k * a * spec.tau * spec.tau).epsilon(1e-12));
  CHECK(std::abs(o.value) == doctest::Approx(1.0).epsilon(1e-14));

  RelativeTrajectory flat{[](double) { return 0.37; }, 2.0 * spec.tau};
  CHECK(std::arg(overlap_from_relative_trajectory(flat, spec).value) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("uniform acceleration drops out at machine precision") {
  ExperimentSpec spec;
  spec.k = 1e-3;  // keeps k * ulp(g tau^2) well under the 1e-12 budget
  spec.tau = 1.0;
  spec.z0 = 1.0;
  for (double g : {0.0, 9.8, 1e6}) {
    for (int i = 0; i <= 12; ++i) {
      spec.theta0 = 2.0 * M_PI * i / 12.0;
      CHECK(std::abs(uniform_acceleration_population(g, spec) - free_population(spec.theta0)) <
            1e-12);
    }
  }
}

TEST_CASE("collisional decoherence rate reference") {
  const auto ones = PhysicalConstants::dimensionless();
  const double n = 0.7, m_b = 1.3, T = 0.9;

  SUBCASE("constant cross section gives n sigma <v>") {
    const double sigma0 = 2.5;
    const auto r = collisional_gamma_reference(n, m_b, T, [&](double) { return sigma0; }, ones);
    CHECK(r.converged);
    const double mean_speed = std::sqrt(8.0 * ones.k_B * T / (M_PI * m_b));
    CHECK(r.rate == doctest::Approx(n * sigma0 * mean_speed).epsilon(1e-7));
  }
  SUBCASE("zero cross section") {
    const auto r = collisional_gamma_reference(n, m_b, T, [](double) { return 0.0; }, ones);
    CHECK(r.converged);
    CHECK(r.rate == 0.0);
  }
  SUBCASE("1/q^2 with infrared cutoff matches an independent quadrature") {
    const double q_min = 0.2 * std::sqrt(m_b * ones.k_B * T);
    const double q_max = 12.0 * std::sqrt(m_b * ones.k_B * T);
    const auto r = collisional_gamma_reference(
        n, m_b, T, [](double q) { return 1.0 / (q * q); }, ones, q_min, q_max);
    CHECK(r.converged);
    const double qt = std::sqrt(m_b * ones.k_B * T);
    const double norm = std::sqrt(2.0 / M_PI) / (qt * qt * qt);
    const auto integrand = [&](double q) {
      const double f = norm * q * q * std::exp(-0.5 * (q / qt) * (q / qt));
      return f * (q / m_b) / (q * q);
    };
    const double oracle = n * adaptive_simpson(integrand, q_min, q_max, 1e-13);
    CHECK(r.rate == doctest::Approx(oracle).epsilon(1e-6));
  }
  SUBCASE("Coulomb-like 1/q^4 total cross section does not converge") {
    const auto r =
        collisional_gamma_reference(n, m_b, T, [](double q) { return 1.0 / (q * q * q * q); }, ones);
    CHECK_FALSE(r.converged);
  }
}
