#include "gravbath/cosmic_ray.hpp"

#include <cmath>
#include <limits>

namespace gravbath {

double stark_kick(const CosmicRaySpec& spec, const PhysicalConstants& c) {
  const double qk = spec.q * c.coulomb;
  const double b2 = spec.b * spec.b;
  return spec.alpha_a / spec.m_a * qk * qk / (b2 * b2 * spec.v);
}

double stark_kick_with_bias(const CosmicRaySpec& spec, const PhysicalConstants& c) {
  const double ray_field = c.e_charge * c.coulomb / (spec.b * spec.b);
  return spec.alpha_a / spec.m_a * ray_field * (spec.E_applied + ray_field) / spec.v;
}

EventRate event_rate(const CosmicRaySpec& spec, double b_max, double /*tau*/) {
  if (!(b_max > 0.0)) throw NumericalError("event_rate: b_max must be > 0");
  const double rate = spec.n_cr * spec.v * M_PI * b_max * b_max;
  const double waiting = rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
  return EventRate{rate, waiting};
}

}  // namespace gravbath
