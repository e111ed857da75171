#pragma once

#include <complex>
#include <functional>

#include "gravbath/constants.hpp"
#include "gravbath/experiment.hpp"

namespace gravbath {

/// Complex arm-overlap factor <(U^b)^dag U^t>. The experimenter phase
/// e^{i theta0} is *excluded* here and applied by population_from_overlap, so
/// bath physics stays separated from the control phase. |value| <= 1 + 1e-12.
struct OverlapFactor {
  std::complex<double> value{1.0, 0.0};
};

/// Atom-centroid minus laser displacement z(t), defined and finite on
/// [0, t_max] with t_max = 2 tau.
struct RelativeTrajectory {
  std::function<double(double)> z_rel;
  double t_max = 0.0;
};

/// Ground-state population 1/2 + 1/2 Re(e^{i theta0} overlap). Rejects
/// |overlap| > 1 + 1e-12 (an upstream formula bug); results within 1e-12
/// outside [0,1] are clamped.
double population_from_overlap(const OverlapFactor& overlap, double theta0);

/// Noiseless output population 1/2 + 1/2 cos(theta0).
double free_population(double theta0);

/// Semiclassical centroid overlap exp{i k [z(2tau) - 2 z(tau) + z(0)]}.
/// Pure phase; the three-point stencil annihilates any trajectory affine in
/// t, which is how shared (equivalence-principle) motion drops out.
/// Wavepacket-spread corrections live in the distant-sector and
/// collision-cone closed forms.
OverlapFactor overlap_from_relative_trajectory(const RelativeTrajectory& traj,
                                               const ExperimentSpec& spec);

/// Output population under a global acceleration g applied to both the atom
/// and the laser. Equal to free_population(spec.theta0) for every g; built by
/// giving both bodies the +g t^2/2 term and evaluating the relative
/// trajectory, so the cancellation is exercised rather than assumed.
double uniform_acceleration_population(double g, const ExperimentSpec& spec);

struct GammaResult {
  double rate = 0.0;     ///< [1/s]
  bool converged = true; ///< false when grid refinement keeps moving the result
};

/// Reference collisional decoherence rate Gamma = n int dq f(q,T) (q/m_b)
/// sigma(q) for a superposition separation large against the thermal de
/// Broglie wavelength. Midpoint-composite quadrature with grid doubling;
/// convergence fails (flagged, not thrown) when refinement changes the result
/// by more than 1%, which is how the divergent 1/r total cross section shows
/// up. q_max <= 0 selects 12 thermal momentum widths.
GammaResult collisional_gamma_reference(double n, double m_b, double T,
                                        const std::function<double(double)>& sigma_of_q,
                                        const PhysicalConstants& constants, double q_min = 0.0,
                                        double q_max = 0.0, std::size_t initial_cells = 64);

}  // namespace gravbath
