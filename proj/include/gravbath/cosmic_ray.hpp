#pragma once

#include "gravbath/constants.hpp"
#include "gravbath/errors.hpp"

namespace gravbath {

/// Passing charged particle interacting with the atom through the DC-Stark
/// shift of its slowly varying Coulomb field.
struct CosmicRaySpec {
  double q = 0.0;         ///< charge [C]
  double v = 0.0;         ///< speed [m/s]
  double b = 0.0;         ///< impact parameter [m]
  double alpha_a = 0.0;   ///< atomic polarizability [C^2 m^2 / J]
  double m_a = 0.0;       ///< atom mass [kg]
  double E_applied = 0.0; ///< optional static bias field [V/m]
  double n_cr = 0.0;      ///< cosmic-ray number density [1/m^3]

  void validate() const {
    if (q == 0.0) throw ConfigError("cosmic.q must be nonzero");
    if (!(v > 0)) throw ConfigError("cosmic.v must be > 0");
    if (!(b > 0)) throw ConfigError("cosmic.b must be > 0");
    if (!(alpha_a > 0)) throw ConfigError("cosmic.alpha_a must be > 0");
    if (!(m_a > 0)) throw ConfigError("cosmic.m_a must be > 0");
    if (!(E_applied >= 0)) throw ConfigError("cosmic.E_applied must be >= 0");
    if (!(n_cr >= 0)) throw ConfigError("cosmic.n_cr must be >= 0");
  }
};

/// DC-Stark velocity kick (alpha_a/m_a) (q/(4 pi eps0))^2 / (b^4 v) [m/s].
/// Order-of-magnitude form: the O(1) angular factor of the exact time
/// integral (3 pi / 4) is deliberately dropped, as in the source estimate.
double stark_kick(const CosmicRaySpec& spec, const PhysicalConstants& c);

/// Kick boosted by an applied static field parallel to the impact parameter:
/// (alpha_a/m_a) (e/(4 pi eps0 b^2)) (E_applied + e/(4 pi eps0 b^2)) / v [m/s].
double stark_kick_with_bias(const CosmicRaySpec& spec, const PhysicalConstants& c);

struct EventRate {
  double rate = 0.0;          ///< n_cr v pi b_max^2 [1/s]
  double waiting_time = 0.0;  ///< 1/rate [s]; +inf when the rate vanishes
};

/// Readable-event rate through the disc of radius b_max.
EventRate event_rate(const CosmicRaySpec& spec, double b_max, double tau);

}  // namespace gravbath
