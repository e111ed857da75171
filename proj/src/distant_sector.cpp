#include "gravbath/distant_sector.hpp"

#include <cmath>

namespace gravbath {

namespace {

constexpr double kFourPiThirds = 4.0 * M_PI / 3.0;

/// (3 + delta_zj)/5 angular weights for j = x, y, z.
constexpr double angular_weight(int j) { return (j == 2 ? 4.0 : 3.0) / 5.0; }

/// k^2 sigma^2 + hbar^2 k^2 tau^2 / (4 m^2 sigma^2): twice the Gaussian-width
/// coefficient of Eq-36 type contrast loss.
double width_sum(const ExperimentSpec& s, const PhysicalConstants& c) {
  const double ks = s.k * s.sigma;
  const double hk = c.hbar * s.k * s.tau / (2.0 * s.m_a * s.sigma);
  return ks * ks + hk * hk;
}

/// 7 k z0 / 6 + hbar k^2 tau / (4 m): twice the quadratic mean-phase
/// coefficient.
double phase_sum(const ExperimentSpec& s, const PhysicalConstants& c) {
  return 7.0 * s.k * s.z0 / 6.0 + c.hbar * s.k * s.k * s.tau / (4.0 * s.m_a);
}

}  // namespace

std::vector<std::string> RegimeCheck::violations(double threshold) const {
  std::vector<std::string> out;
  if (xi2_tau4 > threshold) out.push_back("xi2*tau^4 = " + std::to_string(xi2_tau4));
  if (k2sigma2_xi2_tau4 > threshold)
    out.push_back("k^2 sigma^2 xi^2 tau^4 = " + std::to_string(k2sigma2_xi2_tau4));
  if (vbeta_tau_over_rmin > threshold)
    out.push_back("v_beta*tau/r_min = " + std::to_string(vbeta_tau_over_rmin));
  if (n0_rmin3 < 1.0 / threshold) out.push_back("n0*r_min^3 = " + std::to_string(n0_rmin3));
  return out;
}

RegimeCheck check_regime(const BathSpec& bath, const ExperimentSpec& spec,
                         const PhysicalConstants& constants) {
  RegimeCheck r;
  const double t2 = spec.tau * spec.tau;
  r.xi2_tau4 = xi_squared(bath, constants) * t2 * t2;
  r.k2sigma2_xi2_tau4 = spec.k * spec.k * spec.sigma * spec.sigma * r.xi2_tau4;
  r.vbeta_tau_over_rmin = bath.v_beta * spec.tau / bath.r_min;
  r.n0_rmin3 = bath.n0 * bath.r_min * bath.r_min * bath.r_min;
  return r;
}

ThetaDisplacement theta_displacement(const MultipoleCoefficients& phi, const ExperimentSpec& spec,
                                     const PhysicalConstants& constants) {
  const double G = constants.G;
  const double tau2 = spec.tau * spec.tau;
  const double tau4 = tau2 * tau2;

  // (Phi Phi)_{zi} = Phi^z_j Phi^j_i, summed over j.
  double pp_z[3];
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += phi.hess(2, j) * phi.hess(j, i);
    pp_z[i] = s;
  }

  ThetaDisplacement out;
  out.c_phase = (G * phi.hess.zz * tau2 / 2.0 + G * G * pp_z[2] * tau4 / 8.0) *
                (constants.hbar * spec.k * spec.k * spec.tau / spec.m_a);
  double cr[3], cp[3];
  for (int i = 0; i < 3; ++i) {
    const double linear = G * phi.hess(2, i) * tau2;
    cr[i] = spec.k * (linear + 7.0 / 12.0 * G * G * pp_z[i] * tau4);
    cp[i] = spec.k * spec.tau / spec.m_a * (linear + 0.25 * G * G * pp_z[i] * tau4);
  }
  out.c_r = {cr[0], cr[1], cr[2]};
  out.c_p = {cp[0], cp[1], cp[2]};
  return out;
}

OverlapFactor gaussian_state_overlap(const ThetaDisplacement& theta, const ExperimentSpec& spec,
                                     const MultipoleCoefficients& phi,
                                     const PhysicalConstants& constants) {
  const double tau2 = spec.tau * spec.tau;
  const double tau4 = tau2 * tau2;
  // The initial state sits at (z0 e_3, p = 0), so only the z components of
  // the displacement contribute to the phase.
  const double phase = theta.c_phase + theta.c_r.z * spec.z0;
  const double G2pp = constants.G * constants.G * phi.hess_z_row_sq();
  const double real_part = -0.5 * width_sum(spec, constants) * tau4 * G2pp;
  const std::complex<double> expo{real_part, phase};
  return OverlapFactor{std::exp(expo)};
}

Fringe distant_fringe_exact(const BathSpec& bath, const ExperimentSpec& spec,
                            const PhysicalConstants& constants) {
  const double t2 = spec.tau * spec.tau;
  const double xi2_tau4 = xi_squared(bath, constants) * t2 * t2;
  const double d = effective_dipole(spec, constants);
  const double contrast_exp = 8.0 * M_PI / 15.0 * spec.k * spec.k * d * d * xi2_tau4;

  const std::complex<double> sc{width_sum(spec, constants), -phase_sum(spec, constants)};
  std::complex<double> root{1.0, 0.0};
  for (int j = 0; j < 3; ++j) {
    const std::complex<double> radicand = 1.0 + kFourPiThirds * angular_weight(j) * sc * xi2_tau4;
    if (!(radicand.real() > 0.0)) {
      throw NumericalError("distant-sector radicand has non-positive real part: regime violated");
    }
    root *= std::sqrt(radicand);
  }
  return Fringe{std::exp(-contrast_exp) / root};
}

Fringe distant_fringe_approx(const BathSpec& bath, const ExperimentSpec& spec,
                             const PhysicalConstants& constants) {
  const double t2 = spec.tau * spec.tau;
  const double xi2_tau4 = xi_squared(bath, constants) * t2 * t2;
  const double d = effective_dipole(spec, constants);
  const double contrast_exp = 8.0 * M_PI / 15.0 * spec.k * spec.k * d * d * xi2_tau4;

  double denom = 1.0;
  for (int j = 0; j < 3; ++j) {
    const double radicand = 1.0 + kFourPiThirds * angular_weight(j) * width_sum(spec, constants) * xi2_tau4;
    if (!(radicand > 0.0)) {
      throw NumericalError("distant-sector radicand non-positive: regime violated");
    }
    denom *= std::sqrt(radicand);
  }
  const double shift = kFourPiThirds * spec.k *
                       (7.0 / 6.0 * spec.z0 + constants.hbar * spec.k * spec.tau / (4.0 * spec.m_a)) *
                       xi2_tau4;
  const double mag = std::exp(-contrast_exp) / denom;
  return Fringe{std::complex<double>{mag * std::cos(shift), mag * std::sin(shift)}};
}

double averaged_population_exact(const BathSpec& bath, const ExperimentSpec& spec, double theta0,
                                 const PhysicalConstants& constants) {
  const Fringe f = distant_fringe_exact(bath, spec, constants);
  const std::complex<double> rot{std::cos(theta0), std::sin(theta0)};
  return 0.5 + 0.5 * std::real(rot * f.amplitude);
}

double averaged_population_approx(const BathSpec& bath, const ExperimentSpec& spec, double theta0,
                                  const PhysicalConstants& constants) {
  const Fringe f = distant_fringe_approx(bath, spec, constants);
  const std::complex<double> rot{std::cos(theta0), std::sin(theta0)};
  return 0.5 + 0.5 * std::real(rot * f.amplitude);
}

double decoherence_time(const BathSpec& bath, const ExperimentSpec& spec,
                        const PhysicalConstants& constants) {
  const double d = effective_dipole(spec, constants);
  return std::pow(spec.k * spec.k * d * d * xi_squared(bath, constants), -0.25);
}

double bias_mean_hess(const BiasSpec& bias, const BathSpec& bath) {
  bias.validate(bath);
  return bath.m_b * bias.n_asym * std::log(bias.R_prime / bath.r_min);
}

Fringe bias_fringe(const BathSpec& bath, const Vec3& hess_z_means, const ExperimentSpec& spec,
                   const PhysicalConstants& constants) {
  const double G = constants.G;
  const double tau2 = spec.tau * spec.tau;
  const double tau4 = tau2 * tau2;
  const double d = effective_dipole(spec, constants);

  const double A = spec.k * d * tau2 * G;
  const double B = 0.5 * width_sum(spec, constants) * tau4 * G * G;
  const double C = 0.5 * phase_sum(spec, constants) * tau4 * G * G;

  const double mean_sq = norm2(hess_z_means);
  const double var_zz = hess_variance(bath, constants, 2, 2) / (G * G);

  const double damping = std::exp(-0.5 * A * A * var_zz - B * mean_sq);
  const double phase = A * hess_z_means.z + C * mean_sq;

  std::complex<double> root{1.0, 0.0};
  for (int j = 0; j < 3; ++j) {
    const double var_j = hess_variance(bath, constants, 2, j) / (G * G);
    const std::complex<double> radicand = 1.0 + 2.0 * std::complex<double>{B, -C} * var_j;
    if (!(radicand.real() > 0.0)) {
      throw NumericalError("bias-population radicand has non-positive real part: regime violated");
    }
    root *= std::sqrt(radicand);
  }
  const std::complex<double> rot{std::cos(phase), std::sin(phase)};
  return Fringe{damping * rot / root};
}

double bias_population_with_means(const BathSpec& bath, const Vec3& hess_z_means,
                                  const ExperimentSpec& spec, double theta0,
                                  const PhysicalConstants& constants) {
  const Fringe f = bias_fringe(bath, hess_z_means, spec, constants);
  const std::complex<double> rot{std::cos(theta0), std::sin(theta0)};
  return 0.5 + 0.5 * std::real(rot * f.amplitude);
}

double bias_population(const BathSpec& bath, const BiasSpec& bias, const ExperimentSpec& spec,
                       double theta0, const PhysicalConstants& constants) {
  // Axial symmetry of the Y_2,0 shell zeroes the off-axis means.
  return bias_population_with_means(bath, Vec3{0.0, 0.0, bias_mean_hess(bias, bath)}, spec,
                                    theta0, constants);
}

double bias_phase_time(const BathSpec& bath, const BiasSpec& bias, double k, double d,
                       const PhysicalConstants& constants) {
  const double mean = bias_mean_hess(bias, bath);
  if (!(mean > 0.0) || !(k > 0.0) || !(d > 0.0)) {
    throw NumericalError("bias_phase_time requires positive k, d, and bias mean");
  }
  return 1.0 / std::sqrt(k * d * constants.G * mean);
}

double time_dependent_contrast(const BathSpec& bath, const ExperimentSpec& spec,
                               const PhysicalConstants& constants) {
  const double t2 = spec.tau * spec.tau;
  const double xi2_tau4 = xi_squared(bath, constants) * t2 * t2;
  const double d = effective_dipole(spec, constants);
  const double static_exp = 8.0 * M_PI / 15.0 * spec.k * spec.k * d * d * xi2_tau4;

  const double d7 = spec.z0 + 7.0 / 12.0 * constants.hbar * spec.k * spec.tau / spec.m_a;
  const double drift = bath.v_beta * spec.tau / bath.r_min;
  const double dot_exp = 24.0 * M_PI / 5.0 * spec.k * spec.k * d7 * d7 * xi2_tau4 * drift * drift;
  return std::exp(-static_exp) * std::exp(-dot_exp);
}

}  // namespace gravbath
