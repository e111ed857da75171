#include "gravbath/collision_cone.hpp"

#include <cmath>

#include "gravbath/errors.hpp"

namespace gravbath {

namespace {

void require_moving(const FlybySpec& flyby) {
  if (!(norm2(flyby.v_b) > 0.0)) throw NumericalError("fly-by with zero velocity");
}

}  // namespace

double kick_time(const FlybySpec& flyby, const Vec3& target) {
  require_moving(flyby);
  return -dot(flyby.r_b - target, flyby.v_b) / norm2(flyby.v_b);
}

double velocity_kick(const FlybySpec& flyby, const Vec3& target, const PhysicalConstants& c) {
  require_moving(flyby);
  const double tk = kick_time(flyby, target);
  const Vec3 closest = (flyby.r_b - target) + flyby.v_b * tk;
  // (r_b - r)^2 - v^2 t_kick^2 equals |closest|^2 exactly; the norm form
  // avoids the cancellation of two large squares at small impact parameter.
  const double b2 = norm2(closest);
  if (!(b2 > 0.0)) throw NumericalError("velocity_kick: zero impact parameter");
  return 2.0 * c.G * flyby.m_b / norm(flyby.v_b) * closest.z / b2;
}

Vec3 velocity_kick_gradient(const FlybySpec& flyby, const Vec3& target,
                            const PhysicalConstants& c) {
  require_moving(flyby);
  const double tk = kick_time(flyby, target);
  const Vec3 closest = (flyby.r_b - target) + flyby.v_b * tk;
  const double b2 = norm2(closest);
  if (!(b2 > 0.0)) throw NumericalError("velocity_kick_gradient: zero impact parameter");
  const double v = norm(flyby.v_b);
  const double v2 = v * v;
  const Vec3 e3_perp = Vec3{0.0, 0.0, 1.0} - flyby.v_b * (flyby.v_b.z / v2);
  return (4.0 * c.G * flyby.m_b / v * closest.z / (b2 * b2)) * closest -
         (2.0 * c.G * flyby.m_b / v / b2) * e3_perp;
}

KickEvent kick_event(const FlybySpec& flyby, const Vec3& target, const PhysicalConstants& c) {
  return KickEvent{kick_time(flyby, target), velocity_kick(flyby, target, c),
                   velocity_kick_gradient(flyby, target, c)};
}

double kick_window(double t_kick, double tau) {
  const double w = tau - std::abs(tau - t_kick);
  return w > 0.0 ? w : 0.0;
}

double flyby_phase(const FlybySpec& flyby, const ExperimentSpec& spec,
                   const PhysicalConstants& c) {
  const double d = effective_dipole(spec, c);
  const KickEvent laser = kick_event(flyby, Vec3{0.0, 0.0, 0.0}, c);
  const KickEvent atom = kick_event(flyby, Vec3{0.0, 0.0, d}, c);
  const double w_laser = kick_window(laser.t_kick, spec.tau);
  const double w_atom = kick_window(atom.t_kick, spec.tau);

  const double relative = spec.k * (atom.dv_z * w_atom - laser.dv_z * w_laser);
  const double differential = c.hbar * spec.k * spec.k / (2.0 * spec.m_a) * atom.grad_dv_z.z *
                              (atom.t_kick - spec.tau) * w_atom;
  return relative + differential;
}

OverlapFactor flyby_overlap(const FlybySpec& flyby, const ExperimentSpec& spec,
                            const PhysicalConstants& c) {
  const double d = effective_dipole(spec, c);
  const KickEvent atom = kick_event(flyby, Vec3{0.0, 0.0, d}, c);
  const double w_atom = kick_window(atom.t_kick, spec.tau);

  const double phase = flyby_phase(flyby, spec, c);
  const double grad2 = norm2(atom.grad_dv_z);
  const double ks = spec.k * spec.sigma;
  const double hk = c.hbar * spec.k * atom.t_kick / (2.0 * spec.m_a * spec.sigma);
  const double contrast_exp = grad2 * w_atom * w_atom * 0.5 * (ks * ks + hk * hk);

  return OverlapFactor{std::exp(std::complex<double>{-contrast_exp, phase})};
}

double sensitivity_floor(const ExperimentSpec& spec, const PhysicalConstants&) {
  return 1.0 / (static_cast<double>(spec.Q) * spec.k * spec.tau *
                std::sqrt(static_cast<double>(spec.N_atoms)));
}

double max_readable_impact(const BathSpec& bath, double dv_min, double v_ref,
                           const PhysicalConstants& c) {
  if (!(dv_min > 0.0) || !(v_ref > 0.0)) {
    throw NumericalError("max_readable_impact: dv_min and v_ref must be > 0");
  }
  return 2.0 * c.G * bath.m_b / (v_ref * dv_min);
}

double phase_recovery_ratio(double b, double d, FlybyGeometry geometry,
                            const ExperimentSpec& spec, const PhysicalConstants& c) {
  if (!(b > 0.0) || !(d > 0.0)) throw NumericalError("phase_recovery_ratio: b, d must be > 0");
  // Perpendicular passage through (0, 0, -+b) at time tau.
  const double z_cross = geometry == FlybyGeometry::below_laser ? -b : b;
  const double v = 1.0;
  FlybySpec flyby{Vec3{-v * spec.tau, 0.0, z_cross}, Vec3{v, 0.0, 0.0}, 1.0};

  const KickEvent laser = kick_event(flyby, Vec3{0.0, 0.0, 0.0}, c);
  const KickEvent atom = kick_event(flyby, Vec3{0.0, 0.0, d}, c);
  const double phase_laser = -spec.k * laser.dv_z * kick_window(laser.t_kick, spec.tau);
  const double phase_atom = spec.k * atom.dv_z * kick_window(atom.t_kick, spec.tau);
  return std::abs(phase_atom + phase_laser) / (std::abs(phase_atom) + std::abs(phase_laser));
}

}  // namespace gravbath
