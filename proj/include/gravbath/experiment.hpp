#pragma once

#include <cmath>
#include <cstdint>

#include "gravbath/constants.hpp"
#include "gravbath/errors.hpp"

namespace gravbath {

/// Three-pulse Mach-Zehnder interferometer parameters.
struct ExperimentSpec {
  double m_a = 1.0;           ///< atom mass [kg]
  double k = 1.0;             ///< photon wavevector magnitude [1/m]
  double tau = 1.0;           ///< interpulse time [s]
  double theta0 = 0.0;        ///< control phase [rad]
  double z0 = 0.0;            ///< initial atom-laser separation [m]
  double sigma = 1.0;         ///< wavepacket width [m]
  std::int64_t Q = 1;         ///< momentum multiplier (enters sensitivity only)
  std::int64_t N_atoms = 1;   ///< atoms per shot

  void validate() const {
    if (!(m_a > 0)) throw ConfigError("experiment.m_a must be > 0");
    if (!(k > 0)) throw ConfigError("experiment.k must be > 0");
    if (!(tau > 0)) throw ConfigError("experiment.tau must be > 0");
    if (!(sigma > 0)) throw ConfigError("experiment.sigma must be > 0");
    if (!(z0 >= 0)) throw ConfigError("experiment.z0 must be >= 0");
    if (Q < 1) throw ConfigError("experiment.Q must be >= 1");
    if (N_atoms < 1) throw ConfigError("experiment.N_atoms must be >= 1");
  }
};

/// d = z0 + hbar k tau / (2 m_a), the laser-to-center-of-atomic-motion
/// distance. Sets the dipole-like response of the interferometer to field
/// curvature. Monotone increasing in z0, k and tau.
inline double effective_dipole(const ExperimentSpec& s, const PhysicalConstants& c) {
  return s.z0 + c.hbar * s.k * s.tau / (2.0 * s.m_a);
}

/// Wavepacket width sqrt(hbar tau / 2 m_a) minimizing the combined
/// position/momentum decoherence exponents (standard quantum limit).
inline double standard_quantum_limit_sigma(const ExperimentSpec& s, const PhysicalConstants& c) {
  return std::sqrt(c.hbar * s.tau / (2.0 * s.m_a));
}

}  // namespace gravbath
