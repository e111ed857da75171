#include "gravbath/interferometer.hpp"

#include <cmath>

#include "gravbath/errors.hpp"
#include "gravbath/quadrature.hpp"

namespace gravbath {

double population_from_overlap(const OverlapFactor& overlap, double theta0) {
  const double mag = std::abs(overlap.value);
  if (mag > 1.0 + 1e-12) {
    throw NumericalError("overlap factor with |value| = " + std::to_string(mag) +
                         " > 1: upstream formula bug");
  }
  const std::complex<double> rot{std::cos(theta0), std::sin(theta0)};
  double p = 0.5 + 0.5 * std::real(rot * overlap.value);
  if (p < 0.0 && p > -1e-12) p = 0.0;
  if (p > 1.0 && p < 1.0 + 1e-12) p = 1.0;
  return p;
}

double free_population(double theta0) { return 0.5 + 0.5 * std::cos(theta0); }

OverlapFactor overlap_from_relative_trajectory(const RelativeTrajectory& traj,
                                               const ExperimentSpec& spec) {
  const double tau = spec.tau;
  const double stencil = traj.z_rel(2.0 * tau) - 2.0 * traj.z_rel(tau) + traj.z_rel(0.0);
  const double phase = spec.k * stencil;
  return OverlapFactor{std::complex<double>{std::cos(phase), std::sin(phase)}};
}

double uniform_acceleration_population(double g, const ExperimentSpec& spec) {
  // Laser starts at rest at the origin; atom centroid starts at z0 at rest.
  const auto laser = [g](double t) { return 0.5 * g * t * t; };
  const auto atom = [g, z0 = spec.z0](double t) { return z0 + 0.5 * g * t * t; };
  RelativeTrajectory rel{[laser, atom](double t) { return atom(t) - laser(t); }, 2.0 * spec.tau};
  return population_from_overlap(overlap_from_relative_trajectory(rel, spec), spec.theta0);
}

GammaResult collisional_gamma_reference(double n, double m_b, double T,
                                        const std::function<double(double)>& sigma_of_q,
                                        const PhysicalConstants& constants, double q_min,
                                        double q_max, std::size_t initial_cells) {
  if (!(m_b > 0) || !(T > 0)) throw NumericalError("collisional_gamma_reference: m_b, T must be > 0");
  const double q_thermal = std::sqrt(m_b * constants.k_B * T);
  if (q_max <= 0.0) q_max = 12.0 * q_thermal;
  const double norm = std::sqrt(2.0 / M_PI) / (q_thermal * q_thermal * q_thermal);
  const auto integrand = [&](double q) {
    const double f = norm * q * q * std::exp(-0.5 * (q / q_thermal) * (q / q_thermal));
    return f * (q / m_b) * sigma_of_q(q);
  };

  // Grid-doubling convergence: divergent integrands (e.g. Coulomb-like
  // sigma ~ 1/q^4 down to q=0) keep gaining mass near the endpoint and never
  // settle within 1%.
  std::size_t cells = initial_cells;
  double prev = midpoint_composite(integrand, q_min, q_max, cells);
  for (int round = 0; round < 22; ++round) {
    cells *= 2;
    const double cur = midpoint_composite(integrand, q_min, q_max, cells);
    const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
    if (std::abs(cur - prev) <= 0.01 * scale) {
      // converged in the 1% sense; keep doubling until the O(h^2) error is
      // well below the documented 1e-6 oracle agreement
      double refined = cur;
      double before = prev;
      for (int extra = 0; extra < 10 && std::abs(refined - before) > 1e-9 * scale; ++extra) {
        before = refined;
        cells *= 2;
        refined = midpoint_composite(integrand, q_min, q_max, cells);
      }
      return GammaResult{n * refined, true};
    }
    prev = cur;
  }
  return GammaResult{n * prev, false};
}

}  // namespace gravbath
