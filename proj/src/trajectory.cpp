#include "gravbath/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "gravbath/errors.hpp"
#include "gravbath/quadrature.hpp"

namespace gravbath {

namespace detail {

void verlet_segment(
    std::vector<Vec3>& pos, std::vector<Vec3>& vel,
    const std::function<void(const std::vector<Vec3>&, double, std::vector<Vec3>&)>& accel,
    double t0, double t1, std::size_t n_steps,
    const std::function<void(double, const std::vector<Vec3>&)>& observer) {
  const std::size_t n_bodies = pos.size();
  const double h = (t1 - t0) / static_cast<double>(n_steps);
  std::vector<Vec3> a0(n_bodies), a1(n_bodies);
  accel(pos, t0, a0);
  if (observer) observer(t0, pos);
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = t0 + h * static_cast<double>(step);
    for (std::size_t b = 0; b < n_bodies; ++b) {
      pos[b] += vel[b] * h + a0[b] * (0.5 * h * h);
    }
    accel(pos, t + h, a1);
    for (std::size_t b = 0; b < n_bodies; ++b) {
      vel[b] += (a0[b] + a1[b]) * (0.5 * h);
      a0[b] = a1[b];
    }
    if (observer) observer(t + h, pos);
  }
}

}  // namespace detail

namespace {

struct FlybyRun {
  double phase = 0.0;
  double stencil_scale = 0.0;  // sum of |c| at the stencil points, for the FP noise floor
  std::vector<double> times, z_laser, z_top, z_bottom;
};

FlybyRun run_flyby(const FlybySpec& flyby, const ExperimentSpec& spec,
                   const PhysicalConstants& constants, std::size_t steps_per_segment,
                   std::size_t record_stride) {
  const double recoil = constants.hbar * spec.k / spec.m_a;
  const double tau = spec.tau;
  const double Gm = constants.G * flyby.m_b;

  auto accel = [&](const std::vector<Vec3>& pos, double t, std::vector<Vec3>& out) {
    const Vec3 bath = flyby.r_b + flyby.v_b * t;
    for (std::size_t b = 0; b < pos.size(); ++b) {
      const Vec3 rel = bath - pos[b];
      const double r2 = norm2(rel);
      const double r = std::sqrt(r2);
      out[b] = rel * (Gm / (r2 * r));
    }
  };

  // bodies: 0 laser, 1 atom top arm, 2 atom bottom arm
  std::vector<Vec3> pos{{0, 0, 0}, {0, 0, spec.z0}, {0, 0, spec.z0}};
  std::vector<Vec3> vel{{0, 0, 0}, {0, 0, recoil}, {0, 0, 0}};

  FlybyRun run;
  auto centroid = [&]() { return 0.5 * (pos[1].z + pos[2].z) - pos[0].z; };
  const double c0 = centroid();

  std::size_t tick = 0;
  auto observer = [&](double t, const std::vector<Vec3>& p) {
    if (tick++ % record_stride == 0) {
      run.times.push_back(t);
      run.z_laser.push_back(p[0].z);
      run.z_top.push_back(p[1].z);
      run.z_bottom.push_back(p[2].z);
    }
  };

  detail::verlet_segment(pos, vel, accel, 0.0, tau, steps_per_segment, observer);
  const double c1 = centroid();
  vel[1].z -= recoil;  // pi pulse swaps which arm carries the photon momentum
  vel[2].z += recoil;
  detail::verlet_segment(pos, vel, accel, tau, 2.0 * tau, steps_per_segment, observer);
  const double c2 = centroid();

  run.phase = spec.k * (c2 - 2.0 * c1 + c0);
  run.stencil_scale = std::abs(c0) + 2.0 * std::abs(c1) + std::abs(c2);
  return run;
}

}  // namespace

TrajectoryResult integrate_flyby_trajectories(const FlybySpec& flyby, const ExperimentSpec& spec,
                                              const PhysicalConstants& constants, double step) {
  if (!(step > 0.0) || !(spec.tau > 0.0)) {
    throw NumericalError("integrate_flyby_trajectories: step and tau must be > 0");
  }
  if (!(norm2(flyby.v_b) > 0.0)) throw NumericalError("fly-by with zero velocity");

  const auto steps = static_cast<std::size_t>(std::ceil(spec.tau / step));
  const std::size_t stride = std::max<std::size_t>(1, steps / 256);
  const FlybyRun coarse = run_flyby(flyby, spec, constants, steps, stride);
  const FlybyRun fine = run_flyby(flyby, spec, constants, 2 * steps, 2 * stride);

  // Rounding errors in the stencil random-walk as sqrt(step count); phases
  // near that floor cannot be held to the relative tolerance.
  const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon() * spec.k *
                             fine.stencil_scale *
                             std::sqrt(static_cast<double>(4 * steps));
  const double tol = std::max(1e-6 * std::abs(fine.phase), noise_floor);
  if (std::abs(fine.phase - coarse.phase) > tol) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "trajectory integration not converged: step halving moved the phase by %.3e "
                  "(tolerance %.3e)",
                  std::abs(fine.phase - coarse.phase), tol);
    throw NumericalError(msg);
  }

  TrajectoryResult out;
  out.phase = fine.phase;
  out.phase_coarse = coarse.phase;
  out.times = fine.times;
  out.z_laser = fine.z_laser;
  out.z_top = fine.z_top;
  out.z_bottom = fine.z_bottom;
  out.step_used = spec.tau / static_cast<double>(2 * steps);
  return out;
}

PhaseDifference relative_phase_difference(const FlybySpec& flyby, const Vec3& r1, const Vec3& r2,
                                          double V0, double t_end) {
  const double v2 = norm2(flyby.v_b);
  if (!(v2 > 0.0)) throw NumericalError("relative_phase_difference: zero bath velocity");
  if (!(t_end > 0.0)) throw NumericalError("relative_phase_difference: t_end must be > 0");

  const auto integrand = [&](double t) {
    const Vec3 bath = flyby.r_b + flyby.v_b * t;
    return 1.0 / norm(r1 - bath) - 1.0 / norm(r2 - bath);
  };
  // Integrate in segments growing geometrically so the long 1/t^2 tail does
  // not starve the adaptive rule of resolution near t = 0.
  double total = 0.0;
  double lo = 0.0;
  double hi = std::min(t_end, 1.0 + 2.0 * norm(flyby.r_b) / std::sqrt(v2));
  while (lo < t_end) {
    total += adaptive_simpson(integrand, lo, hi, 1e-12);
    lo = hi;
    hi = std::min(t_end, 2.0 * hi);
  }
  const double tail = 2.0 * std::abs(V0) * norm(r1 - r2) / (v2 * t_end);
  return PhaseDifference{V0 * total, tail};
}

double velocity_kick_time_quadrature(const FlybySpec& flyby, const Vec3& target,
                                     const PhysicalConstants& constants, double rel_tol) {
  const double v2 = norm2(flyby.v_b);
  if (!(v2 > 0.0)) throw NumericalError("velocity_kick_time_quadrature: zero velocity");
  const double v = std::sqrt(v2);
  const Vec3 rho = flyby.r_b - target;
  const double t_k = -dot(rho, flyby.v_b) / v2;
  const Vec3 closest = rho + flyby.v_b * t_k;
  const double b2 = norm2(closest);
  if (!(b2 > 0.0)) throw NumericalError("velocity_kick_time_quadrature: zero impact parameter");
  const double b = std::sqrt(b2);

  const auto accel_z = [&](double t) {
    const Vec3 rel = rho + flyby.v_b * t;
    const double r2 = norm2(rel);
    return rel.z / (r2 * std::sqrt(r2));
  };
  const double half_width = 256.0 * b / v;
  const double peak_scale = std::abs(closest.z) / b2 + std::abs(flyby.v_b.z) / (v * b) + 1.0 / b2;
  const double core = adaptive_simpson(accel_z, t_k - half_width, t_k + half_width,
                                       rel_tol * peak_scale * b / v);
  // |s| > half_width: the numerator splits into closest.z + v_b.z s; the odd
  // part cancels between the two tails, the even part integrates exactly.
  const double tail =
      closest.z * 2.0 / (v * b2) * (1.0 - v * half_width / std::sqrt(v2 * half_width * half_width + b2));
  return constants.G * flyby.m_b * (core + tail);
}

double single_path_phase(const FlybySpec& flyby, const Vec3& r, double V0, double t_end) {
  const double v2 = norm2(flyby.v_b);
  if (!(v2 > 0.0)) throw NumericalError("single_path_phase: zero bath velocity");
  const auto integrand = [&](double t) { return 1.0 / norm(r - flyby.r_b - flyby.v_b * t); };
  double total = 0.0;
  double lo = 0.0;
  double hi = std::min(t_end, 1.0 + 2.0 * norm(flyby.r_b) / std::sqrt(v2));
  while (lo < t_end) {
    total += adaptive_simpson(integrand, lo, hi, 1e-12);
    lo = hi;
    hi = std::min(t_end, 2.0 * hi);
  }
  return V0 * total;
}

}  // namespace gravbath
