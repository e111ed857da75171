#pragma once

#include "gravbath/bath.hpp"
#include "gravbath/experiment.hpp"
#include "gravbath/interferometer.hpp"
#include "gravbath/vec3.hpp"

namespace gravbath {

/// One straight-line bath fly-by: position and velocity at t = 0, mass.
struct FlybySpec {
  Vec3 r_b;          ///< [m]
  Vec3 v_b;          ///< [m/s], |v_b| > 0
  double m_b = 1.0;  ///< [kg]
};

/// Impulsive-limit summary of a fly-by as felt at one target point.
struct KickEvent {
  double t_kick = 0.0;    ///< time of closest approach [s] (may lie outside [0, 2 tau])
  double dv_z = 0.0;      ///< velocity kick, z component [m/s]
  Vec3 grad_dv_z;         ///< spatial gradient of the kick [1/s]
};

/// Time at which the fly-by comes closest to `target`:
/// -(r_b - target) . v_b / v_b^2. Unclamped.
double kick_time(const FlybySpec& flyby, const Vec3& target);

/// Closed-form impulse: the time integral of the z gravitational acceleration
/// at `target` along the unperturbed straight line,
/// (2 G m_b / v_b) [((r_b - r) + v_b t_kick) . e3] / ((r_b - r)^2 - v_b^2 t_kick^2).
/// Throws on zero impact parameter.
double velocity_kick(const FlybySpec& flyby, const Vec3& target, const PhysicalConstants& c);

/// Gradient of the velocity-kick field with respect to the target point.
Vec3 velocity_kick_gradient(const FlybySpec& flyby, const Vec3& target,
                            const PhysicalConstants& c);

KickEvent kick_event(const FlybySpec& flyby, const Vec3& target, const PhysicalConstants& c);

/// Step-function time window (tau - |tau - t_kick|) clamped to zero outside
/// [0, 2 tau]: kicks before the first pulse shift everything identically and
/// kicks after the last pulse never act.
double kick_window(double t_kick, double tau);

/// Total phase of the fly-by overlap (the arguments of the first two factors
/// of the closed form): relative laser/atom kick phase plus the differential
/// two-path term. Shared with the trajectory-oracle comparison.
double flyby_phase(const FlybySpec& flyby, const ExperimentSpec& spec,
                   const PhysicalConstants& c);

/// Three-factor impulsive overlap: relative-kick phase, differential-kick
/// phase, and Gaussian contrast loss, with kicks evaluated at the laser (0)
/// and the atom centroid (d e3).
OverlapFactor flyby_overlap(const FlybySpec& flyby, const ExperimentSpec& spec,
                            const PhysicalConstants& c);

/// Weakest observable kick, (Q k tau sqrt(N))^-1 [m/s].
double sensitivity_floor(const ExperimentSpec& spec, const PhysicalConstants& c);

/// Largest impact parameter readable at sensitivity dv_min for a fly-by of
/// speed v_ref: 2 G m_b / (v_ref dv_min), the inverted perpendicular-passage
/// kick. The reference speed is an explicit input (default elsewhere:
/// 220 km/s galactic virial speed).
double max_readable_impact(const BathSpec& bath, double dv_min, double v_ref,
                           const PhysicalConstants& c);

enum class FlybyGeometry { below_laser, above_laser };

/// |net dominant phase| / (|laser phase| + |atom phase|) for a perpendicular
/// fly-by crossing (0, 0, -b) (below) or (0, 0, +b) (above) at time tau.
/// Common-motion cancellation suppresses the ratio for d << b; below-laser
/// geometry gives d/(d + 2b).
double phase_recovery_ratio(double b, double d, FlybyGeometry geometry,
                            const ExperimentSpec& spec, const PhysicalConstants& c);

}  // namespace gravbath
