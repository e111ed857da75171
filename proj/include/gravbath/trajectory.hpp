#pragma once

#include <functional>
#include <vector>

#include "gravbath/collision_cone.hpp"
#include "gravbath/experiment.hpp"
#include "gravbath/vec3.hpp"

namespace gravbath {

/// Brute-force fly-by result: laser, atom-top-arm and atom-bottom-arm
/// centroid tracks integrated under the exact 1/r force of the straight-line
/// bath trajectory, and the interferometer phase from the three-point stencil
/// of the (arm-averaged atom minus laser) coordinate.
struct TrajectoryResult {
  double phase = 0.0;  ///< [rad]
  std::vector<double> times;
  std::vector<double> z_laser, z_top, z_bottom;  ///< sampled tracks [m]
  double step_used = 0.0;
  double phase_coarse = 0.0;  ///< phase at twice the step, for convergence reporting
};

namespace detail {

/// Velocity-Verlet over [t0, t1] in n equal steps for a set of bodies with a
/// possibly time-dependent acceleration field
/// accel(positions, t, accelerations_out).
void verlet_segment(
    std::vector<Vec3>& pos, std::vector<Vec3>& vel,
    const std::function<void(const std::vector<Vec3>&, double, std::vector<Vec3>&)>& accel,
    double t0, double t1, std::size_t n_steps,
    const std::function<void(double, const std::vector<Vec3>&)>& observer = nullptr);

}  // namespace detail

/// Integrates the three tracked bodies through the pulse sequence (photon
/// recoil hbar k / m_a applied impulsively to the arms) with fixed step,
/// then repeats at half the step. Throws NumericalError when the two phases
/// disagree by more than 1e-6 relative (with an absolute floor at the
/// double-precision cancellation noise of the stencil).
TrajectoryResult integrate_flyby_trajectories(const FlybySpec& flyby, const ExperimentSpec& spec,
                                              const PhysicalConstants& constants, double step);

struct PhaseDifference {
  double value = 0.0;       ///< [rad]
  double tail_bound = 0.0;  ///< analytic bound on the neglected tail [rad]
};

/// Regulated two-path phase difference
/// V0 int_0^t_end dt (1/|r1 - r_b - v t| - 1/|r2 - r_b - v t|), plus the
/// analytic O(1/t_end) tail bound 2 V0 |r1 - r2| / (v^2 t_end). The
/// difference converges as t_end grows even though each single-path phase
/// diverges logarithmically.
PhaseDifference relative_phase_difference(const FlybySpec& flyby, const Vec3& r1, const Vec3& r2,
                                          double V0, double t_end);

/// Unregulated single-path phase V0 int_0^t_end dt / |r - r_b - v t|; grows
/// like (V0/v) ln t_end.
double single_path_phase(const FlybySpec& flyby, const Vec3& r, double V0, double t_end);

/// Independent route to the velocity kick: adaptive time quadrature of the
/// raw z acceleration G m_b (r_b + v_b t - r)_z / |r_b + v_b t - r|^3 around
/// closest approach, with the exact symmetric tail added analytically (the
/// odd tail parts cancel). Validates the closed-form velocity_kick.
double velocity_kick_time_quadrature(const FlybySpec& flyby, const Vec3& target,
                                     const PhysicalConstants& constants, double rel_tol = 1e-10);

}  // namespace gravbath
