#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gravbath/bath.hpp"
#include "gravbath/experiment.hpp"
#include "gravbath/interferometer.hpp"

namespace gravbath {

/// Phase-space displacement generated by one bath configuration, strictly to
/// second order in G: exp(i Theta) with
/// Theta = c_phase + c_r . r + c_p . p.
struct ThetaDisplacement {
  double c_phase = 0.0;  ///< [rad]
  Vec3 c_r;              ///< [rad/m]
  Vec3 c_p;              ///< [rad s / (kg m)]
};

/// Y_2,0 angular asymmetry of amplitude n_asym between r_min and R_prime.
struct BiasSpec {
  double n_asym = 0.0;   ///< [1/m^3]
  double R_prime = 0.0;  ///< [m]

  void validate(const BathSpec& bath) const {
    if (!(n_asym >= 0)) throw ConfigError("bias.n_asym must be >= 0");
    if (!(R_prime > bath.r_min)) throw ConfigError("bias.R_prime must be > bath.r_min");
  }
};

/// Validity-regime diagnostics for the second-order distant-sector forms.
/// Soft by default; the CLI turns violations into hard failures under
/// --strict-regime.
struct RegimeCheck {
  double xi2_tau4 = 0.0;           ///< must be << 1
  double k2sigma2_xi2_tau4 = 0.0;  ///< must be << 1
  double vbeta_tau_over_rmin = 0.0;///< must be << 1 (time-dependence correction)
  double n0_rmin3 = 0.0;           ///< must be >> 1 (Gaussianity)

  std::vector<std::string> violations(double threshold = 0.1) const;
  bool ok(double threshold = 0.1) const { return violations(threshold).empty(); }
};

RegimeCheck check_regime(const BathSpec& bath, const ExperimentSpec& spec,
                         const PhysicalConstants& constants);

/// Displacement coefficients for a fixed bath configuration, with Einstein
/// sums over the Hessian indices carried out exactly.
ThetaDisplacement theta_displacement(const MultipoleCoefficients& phi, const ExperimentSpec& spec,
                                     const PhysicalConstants& constants);

/// Gaussian-wavepacket expectation of exp(i Theta) truncated at second order
/// in G: phase terms from the displacement, contrast terms
/// -(k^2 sigma^2/2 + hbar^2 k^2 tau^2 / 8 m^2 sigma^2) tau^4 G^2 Phi^z_j Phi^j_z
/// from the finite phase-space width.
OverlapFactor gaussian_state_overlap(const ThetaDisplacement& theta, const ExperimentSpec& spec,
                                     const MultipoleCoefficients& phi,
                                     const PhysicalConstants& constants);

/// Complex fringe amplitude after the bath average: population is
/// 1/2 + 1/2 Re(e^{i theta0} amplitude), contrast its modulus, phase shift
/// its argument.
struct Fringe {
  std::complex<double> amplitude{1.0, 0.0};
  double contrast() const { return std::abs(amplitude); }
  double phase_shift() const { return std::arg(amplitude); }
};

/// Bath-averaged fringe keeping the full square-root product (principal
/// branches; each radicand has positive real part in the validity regime,
/// which makes the principal branch the one continuously connected to
/// tau -> 0). Throws NumericalError on a non-positive radicand real part.
Fringe distant_fringe_exact(const BathSpec& bath, const ExperimentSpec& spec,
                            const PhysicalConstants& constants);

/// Leading-order fringe: single exponential contrast factor, real square
/// roots, and the quadratic-in-Phi mean phase shift.
Fringe distant_fringe_approx(const BathSpec& bath, const ExperimentSpec& spec,
                             const PhysicalConstants& constants);

double averaged_population_exact(const BathSpec& bath, const ExperimentSpec& spec, double theta0,
                                 const PhysicalConstants& constants);
double averaged_population_approx(const BathSpec& bath, const ExperimentSpec& spec, double theta0,
                                  const PhysicalConstants& constants);

/// t_dec = (k^2 d^2 xi^2)^(-1/4) [s].
double decoherence_time(const BathSpec& bath, const ExperimentSpec& spec,
                        const PhysicalConstants& constants);

/// <Phi^z_z> = m_b n_asym ln(R'/r_min) for the Y_2,0 shell [kg/m^3].
double bias_mean_hess(const BiasSpec& bias, const BathSpec& bath);

/// Biased-bath fringe with general Hessian-mean vector
/// (<Phi^z_x>, <Phi^z_y>, <Phi^z_z>); fluctuations keep the isotropic
/// variances. Reduces to distant_fringe_exact at zero means.
Fringe bias_fringe(const BathSpec& bath, const Vec3& hess_z_means, const ExperimentSpec& spec,
                   const PhysicalConstants& constants);

double bias_population_with_means(const BathSpec& bath, const Vec3& hess_z_means,
                                  const ExperimentSpec& spec, double theta0,
                                  const PhysicalConstants& constants);

/// Y_2,0 bias model: <Phi^z_x> = <Phi^z_y> = 0, <Phi^z_z> from bias_mean_hess.
double bias_population(const BathSpec& bath, const BiasSpec& bias, const ExperimentSpec& spec,
                       double theta0, const PhysicalConstants& constants);

/// Interpulse time at which the mean bias phase A <Phi^z_z> reaches 1 rad,
/// for a fixed effective dipole d [s].
double bias_phase_time(const BathSpec& bath, const BiasSpec& bias, double k, double d,
                       const PhysicalConstants& constants);

/// Dominant contrast factor including the lowest-order bath time dependence
/// (valid for v_beta tau << r_min):
/// exp{-(8pi/15) k^2 d^2 xi^2 tau^4}
/// * exp{-(24pi/5) k^2 (z0 + (7/12) hbar k tau/m_a)^2 xi^2 tau^4 v_b^2 tau^2 / r_min^2}.
double time_dependent_contrast(const BathSpec& bath, const ExperimentSpec& spec,
                               const PhysicalConstants& constants);

}  // namespace gravbath
