#pragma once

namespace gravbath {

/// Fundamental constants in SI units. Two presets exist: CODATA SI values for
/// real-world numbers, and an all-ones set used by the Monte Carlo oracles so
/// every effect stays O(1) in double precision.
struct PhysicalConstants {
  double G = 1.0;         ///< gravitational constant [m^3 kg^-1 s^-2]
  double hbar = 1.0;      ///< reduced Planck constant [J s]
  double k_B = 1.0;       ///< Boltzmann constant [J/K]
  double coulomb = 1.0;   ///< 1/(4 pi eps0) [N m^2 C^-2]
  double e_charge = 1.0;  ///< elementary charge [C]
  double c = 1.0;         ///< speed of light [m/s]
  double m_planck = 1.0;  ///< Planck mass [kg]

  static PhysicalConstants si() {
    PhysicalConstants k;
    k.G = 6.67430e-11;
    k.hbar = 1.054571817e-34;
    k.k_B = 1.380649e-23;
    k.coulomb = 8.9875517923e9;
    k.e_charge = 1.602176634e-19;
    k.c = 299792458.0;
    k.m_planck = 2.176434e-8;
    return k;
  }

  static PhysicalConstants dimensionless() { return PhysicalConstants{}; }

  bool valid() const {
    return G > 0 && hbar > 0 && k_B > 0 && coulomb > 0 && e_charge > 0 && c > 0 && m_planck > 0;
  }
};

}  // namespace gravbath
