#pragma once

#include <cstdint>
#include <vector>

#include "gravbath/bath.hpp"
#include "gravbath/distant_sector.hpp"
#include "gravbath/experiment.hpp"

namespace gravbath {

/// Monte Carlo estimate with its statistical error; bit-reproducible from
/// (seed, n_samples) for any worker count.
struct EnsembleResult {
  double mean_population = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Distant-sector multipole components collected over many bath realizations.
/// Stored G-free (raw Phi sums); per-sample z-row is all the closed forms
/// need. trace_rel holds |trace(hess)| / ||hess||_F per sample.
struct MultipoleEnsemble {
  std::vector<double> zx, zy, zz;  ///< Phi^z_x, Phi^z_y, Phi^z_z per sample [kg/m^3]
  std::vector<double> zz_dot;      ///< d/dt Phi^z_z per sample (empty unless collected)
  std::vector<double> trace_rel;
  std::uint64_t seed = 0;
  double tau = 0.0;

  double max_trace_rel() const;
};

/// Streams n bath realizations (keyed by seed and sample index) through the
/// multipole accumulator, restricted to the distant sector. Workers split the
/// index range; results land in per-index slots, so the ensemble is identical
/// for any worker count.
MultipoleEnsemble collect_multipole_ensemble(const BathSpec& bath, double tau, std::size_t n,
                                             std::uint64_t seed, int workers = 0,
                                             bool with_time_derivative = false);

/// Per-configuration Gaussian-state overlap pushed through the population
/// formula and averaged: mean +- standard error.
EnsembleResult population_from_ensemble(const MultipoleEnsemble& ensemble,
                                        const ExperimentSpec& spec, double theta0,
                                        const PhysicalConstants& constants);

/// Brute-force bath average of the output population: draw, reduce to
/// multipoles, evaluate the per-configuration overlap, average. The oracle
/// counterpart of averaged_population_exact. Requires n_samples >= 100.
EnsembleResult ensemble_average_population(const BathSpec& bath, const ExperimentSpec& spec,
                                           double theta0, std::size_t n_samples,
                                           std::uint64_t seed, const PhysicalConstants& constants,
                                           int workers = 0);

/// Mean of Re D over sampled (Phi^z_z, dPhi^z_z/dt) pairs with the
/// linear-in-time phase D = exp{i k G [Phi tau^2 d + Phi_dot tau^3
/// (z0 + (7/12) hbar k tau / m)]}; the Monte Carlo side of
/// time_dependent_contrast. Requires an ensemble collected with the time
/// derivative.
EnsembleResult timedep_contrast_from_ensemble(const MultipoleEnsemble& ensemble,
                                              const ExperimentSpec& spec,
                                              const PhysicalConstants& constants);

}  // namespace gravbath
