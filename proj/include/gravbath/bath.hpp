#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "gravbath/constants.hpp"
#include "gravbath/errors.hpp"
#include "gravbath/rng.hpp"
#include "gravbath/vec3.hpp"

namespace gravbath {

/// Free-particle Boltzmann bath, sampled in a finite ball of radius r_max.
/// The infinite-volume limit is approximated by r_max >> r_min; truncation
/// error on the curvature variance is O((r_min/r_max)^3).
struct BathSpec {
  double m_b = 1.0;     ///< bath particle mass [kg]
  double n0 = 1.0;      ///< number density [1/m^3]
  double v_beta = 0.0;  ///< thermal velocity scale sqrt(k_B T / m_b) [m/s]
  double r_min = 1.0;   ///< multipole cutoff radius [m]
  double r_max = 20.0;  ///< sampling outer radius [m]

  void validate() const {
    if (!(m_b > 0)) throw ConfigError("bath.m_b must be > 0");
    if (!(n0 > 0)) throw ConfigError("bath.n0 must be > 0");
    if (!(v_beta >= 0)) throw ConfigError("bath.v_beta must be >= 0");
    if (!(r_min > 0)) throw ConfigError("bath.r_min must be > 0");
    if (!(r_max > r_min)) throw ConfigError("bath.r_max must be > bath.r_min");
  }

  double sampling_volume() const { return 4.0 * M_PI / 3.0 * r_max * r_max * r_max; }
};

struct BathParticle {
  Vec3 position;  ///< [m]
  Vec3 velocity;  ///< [m/s]
};

/// One bath realization. `distant` and `collision_cone` partition the
/// particle indices: distant particles keep straight-line distance >= r_min
/// from the origin throughout [0, 2 tau], the rest form the collision cone.
struct BathSample {
  std::vector<BathParticle> particles;
  std::vector<std::uint32_t> distant;
  std::vector<std::uint32_t> collision_cone;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::uint64_t singular_redraws = 0;  ///< positions rejected by the origin guard
};

struct SymMat3 {
  double xx = 0, yy = 0, zz = 0, xy = 0, xz = 0, yz = 0;

  double operator()(int i, int j) const {
    if (i == j) return i == 0 ? xx : (i == 1 ? yy : zz);
    const int a = i < j ? i : j, b = i < j ? j : i;
    if (a == 0) return b == 1 ? xy : xz;
    return yz;
  }
  double trace() const { return xx + yy + zz; }
  double frobenius() const {
    return std::sqrt(xx * xx + yy * yy + zz * zz + 2.0 * (xy * xy + xz * xz + yz * yz));
  }
};

/// Gradient and traceless Hessian of the bath potential (G and test mass
/// factored out) at the origin, plus optionally the Hessian's time
/// derivative at t=0.
struct MultipoleCoefficients {
  Vec3 grad;                       ///< Phi^i [kg/m^2]
  SymMat3 hess;                    ///< Phi^i_j [kg/m^3]
  std::optional<SymMat3> hess_dot; ///< d/dt Phi^i_j at t=0 [kg m^-3 s^-1]

  Vec3 hess_z_row() const { return {hess.xz, hess.yz, hess.zz}; }
  /// Phi^z_j Phi^j_z, the contraction appearing in all second-order terms.
  double hess_z_row_sq() const {
    return hess.xz * hess.xz + hess.yz * hess.yz + hess.zz * hess.zz;
  }
};

/// Squared straight-line closest-approach distance of r + v t to the origin
/// over t in [0, t_max].
inline double closest_approach_sq(const Vec3& r, const Vec3& v, double t_max) {
  const double v2 = norm2(v);
  if (v2 <= 0.0) return norm2(r);
  double t = -dot(r, v) / v2;
  if (t < 0.0) t = 0.0;
  if (t > t_max) t = t_max;
  return norm2(r + v * t);
}

namespace detail {

/// Running sums of the analytic derivatives of m_b/|r - r_b| at r = 0.
/// Shared by the streaming ensemble kernel and multipole_at_origin so the two
/// paths produce identical floating-point results.
struct MultipoleAccumulator {
  double gx = 0, gy = 0, gz = 0;
  double xx = 0, yy = 0, zz = 0, xy = 0, xz = 0, yz = 0;
  double dxx = 0, dyy = 0, dzz = 0, dxy = 0, dxz = 0, dyz = 0;

  inline void add(double m_b, double x, double y, double z) {
    const double x2 = x * x, y2 = y * y, z2 = z * z;
    const double r2 = x2 + y2 + z2;
    const double r = std::sqrt(r2);
    const double t = m_b / (r2 * r2 * r);
    xx += t * (3.0 * x2 - r2);
    yy += t * (3.0 * y2 - r2);
    zz += t * (3.0 * z2 - r2);
    xy += 3.0 * t * x * y;
    xz += 3.0 * t * x * z;
    yz += 3.0 * t * y * z;
    const double g = t * r2;  // m_b / r^3
    gx += g * x;
    gy += g * y;
    gz += g * z;
  }

  inline void add_dot(double m_b, double x, double y, double z, double vx, double vy, double vz) {
    const double x2 = x * x, y2 = y * y, z2 = z * z;
    const double r2 = x2 + y2 + z2;
    const double r = std::sqrt(r2);
    const double t = m_b / (r2 * r2 * r);
    const double rv = x * vx + y * vy + z * vz;
    const double s = 5.0 * rv / r2;
    dxx += t * (6.0 * x * vx - 2.0 * rv - s * (3.0 * x2 - r2));
    dyy += t * (6.0 * y * vy - 2.0 * rv - s * (3.0 * y2 - r2));
    dzz += t * (6.0 * z * vz - 2.0 * rv - s * (3.0 * z2 - r2));
    dxy += t * (3.0 * (vx * y + x * vy) - s * 3.0 * x * y);
    dxz += t * (3.0 * (vx * z + x * vz) - s * 3.0 * x * z);
    dyz += t * (3.0 * (vy * z + y * vz) - s * 3.0 * y * z);
  }
};

/// Draws one Poisson bath realization. A zero-temperature bath is delivered
/// in compacted candidate blocks via
///   visitor.static_block(ux, uy, uz, u2, take, r_max, u_min2)
/// with positions in unit-ball coordinates (scale by r_max; distant means
/// u2 >= u_min2); a thermal bath is delivered per particle via
///   visitor.particle(x, y, z, vx, vy, vz, distant).
/// Draw order is fixed by this kernel, so every consumer keyed by
/// (seed, index) sees the same realization.
template <class Visitor>
std::uint64_t visit_bath_sample(const BathSpec& spec, double tau, std::uint64_t seed,
                                std::uint64_t index, Visitor&& visitor,
                                std::uint64_t* singular_redraws = nullptr) {
  Rng rng(seed, index);
  const std::uint64_t count = rng.poisson(spec.n0 * spec.sampling_volume());
  const double r_max = spec.r_max;
  const double guard = 1e-9 * spec.r_min / r_max;
  const double guard2 = guard * guard;
  const double u_min2 = (spec.r_min / r_max) * (spec.r_min / r_max);
  std::uint64_t rejected = 0;

  if (spec.v_beta == 0.0) {
    // Candidates are generated in blocks and compacted branch-free, which
    // sidesteps the ~50% mispredicted rejection branch of the naive loop.
    constexpr int kBlock = 128;
    alignas(32) double cx[kBlock], cy[kBlock], cz[kBlock], cu2[kBlock];
    alignas(32) double ax[kBlock], ay[kBlock], az[kBlock], au2[kBlock];
    std::uint64_t done = 0;
    while (done < count) {
      for (int j = 0; j < kBlock; ++j) {
        const double x = Rng::symmetric_from_bits(rng.next_u64());
        const double y = Rng::symmetric_from_bits(rng.next_u64());
        const double z = Rng::symmetric_from_bits(rng.next_u64());
        cx[j] = x;
        cy[j] = y;
        cz[j] = z;
        cu2[j] = x * x + y * y + z * z;
      }
      int accepted = 0;
      for (int j = 0; j < kBlock; ++j) {
        ax[accepted] = cx[j];
        ay[accepted] = cy[j];
        az[accepted] = cz[j];
        au2[accepted] = cu2[j];
        // bitwise & keeps the ~50% in-ball test branch-free
        accepted += static_cast<int>(static_cast<unsigned>(cu2[j] <= 1.0) &
                                     static_cast<unsigned>(cu2[j] >= guard2));
        rejected += static_cast<unsigned>(cu2[j] <= 1.0) & static_cast<unsigned>(cu2[j] < guard2);
      }
      const auto take = static_cast<int>(
          std::min<std::uint64_t>(static_cast<std::uint64_t>(accepted), count - done));
      visitor.static_block(ax, ay, az, au2, take, r_max, u_min2);
      done += static_cast<std::uint64_t>(take);
    }
  } else {
    const double window = 2.0 * tau;
    const double r_min2 = spec.r_min * spec.r_min;
    for (std::uint64_t i = 0; i < count; ++i) {
      double x, y, z, u2;
      for (;;) {
        x = rng.uniform_symmetric();
        y = rng.uniform_symmetric();
        z = rng.uniform_symmetric();
        u2 = x * x + y * y + z * z;
        if (u2 > 1.0) continue;
        if (u2 < guard2) {
          ++rejected;
          continue;
        }
        break;
      }
      const Vec3 pos{x * r_max, y * r_max, z * r_max};
      const Vec3 vel{spec.v_beta * rng.gaussian(), spec.v_beta * rng.gaussian(),
                     spec.v_beta * rng.gaussian()};
      const bool distant = closest_approach_sq(pos, vel, window) >= r_min2;
      visitor.particle(pos.x, pos.y, pos.z, vel.x, vel.y, vel.z, distant);
    }
  }
  if (singular_redraws) *singular_redraws = rejected;
  return count;
}

/// Register-blocked multipole accumulation over one compacted static block;
/// shared by the streaming ensemble and (through sample_bath's particle
/// lists) by multipole_at_origin, so the two routes sum identical terms in
/// identical order.
inline void accumulate_static_block(MultipoleAccumulator& acc, double m_b, const double* ux,
                                    const double* uy, const double* uz, const double* u2,
                                    int take, double r_max, double u_min2) {
  double xx = acc.xx, yy = acc.yy, zz = acc.zz;
  double xy = acc.xy, xz = acc.xz, yz = acc.yz;
  double gx = acc.gx, gy = acc.gy, gz = acc.gz;
  for (int j = 0; j < take; ++j) {
    if (u2[j] < u_min2) continue;  // collision cone
    const double x = ux[j] * r_max, y = uy[j] * r_max, z = uz[j] * r_max;
    const double x2 = x * x, y2 = y * y, z2 = z * z;
    const double r2 = x2 + y2 + z2;
    const double r = std::sqrt(r2);
    const double t = m_b / (r2 * r2 * r);
    xx += t * (3.0 * x2 - r2);
    yy += t * (3.0 * y2 - r2);
    zz += t * (3.0 * z2 - r2);
    xy += 3.0 * t * x * y;
    xz += 3.0 * t * x * z;
    yz += 3.0 * t * y * z;
    const double g = t * r2;
    gx += g * x;
    gy += g * y;
    gz += g * z;
  }
  acc.xx = xx;
  acc.yy = yy;
  acc.zz = zz;
  acc.xy = xy;
  acc.xz = xz;
  acc.yz = yz;
  acc.gx = gx;
  acc.gy = gy;
  acc.gz = gz;
}

}  // namespace detail

/// Draws a bath realization: particle count Poisson with mean
/// n0 * (4 pi / 3) r_max^3, positions uniform in the r_max ball, velocities
/// isotropic Gaussian with per-component sigma v_beta. The distant /
/// collision-cone split uses the exact straight-line closest approach to the
/// origin over [0, 2 tau]. Deterministic for fixed (seed, index).
BathSample sample_bath(const BathSpec& spec, double tau, std::uint64_t seed,
                       std::uint64_t index = 0);

/// Exact multipole sums over the selected sector of a sample. Throws on a
/// particle within 1e-9 r_min of the origin. hess_dot is filled only when
/// with_time_derivative is set.
MultipoleCoefficients multipole_at_origin(const BathSample& sample, const BathSpec& spec,
                                          bool restrict_to_distant,
                                          bool with_time_derivative = false);

/// d/dt Phi^z_z at t=0 over the selected sector:
/// m_b sum 3 (r^2 - 5 z^2)(r.v)/r^7 + 6 z v_z / r^5.
double time_derivative_hess_zz(const BathSample& sample, const BathSpec& spec,
                               bool restrict_to_distant = true);

/// Characteristic tidal fluctuation scale xi^2 = (G m_b)^2 n0 / r_min^3 [1/s^4].
inline double xi_squared(const BathSpec& spec, const PhysicalConstants& c) {
  return (c.G * spec.m_b) * (c.G * spec.m_b) * spec.n0 / (spec.r_min * spec.r_min * spec.r_min);
}

/// Variance of G Phi^i_j over the distant sector:
/// (4 pi / 3) (3 + delta_ij)/5 xi^2 [1/s^4].
inline double hess_variance(const BathSpec& spec, const PhysicalConstants& c, int i, int j) {
  if (i < 0 || i > 2 || j < 0 || j > 2) throw ConfigError("hess_variance: axis index out of range");
  const double delta = (i == j) ? 1.0 : 0.0;
  return 4.0 * M_PI / 3.0 * (3.0 + delta) / 5.0 * xi_squared(spec, c);
}

}  // namespace gravbath
