#include "gravbath/ensemble.hpp"

#include <cmath>

#include "gravbath/interferometer.hpp"
#include "gravbath/parallel.hpp"
#include "gravbath/stats.hpp"

namespace gravbath {

double MultipoleEnsemble::max_trace_rel() const {
  double m = 0.0;
  for (double t : trace_rel) m = std::max(m, t);
  return m;
}

MultipoleEnsemble collect_multipole_ensemble(const BathSpec& bath, double tau, std::size_t n,
                                             std::uint64_t seed, int workers,
                                             bool with_time_derivative) {
  bath.validate();
  MultipoleEnsemble out;
  out.seed = seed;
  out.tau = tau;
  out.zx.resize(n);
  out.zy.resize(n);
  out.zz.resize(n);
  out.trace_rel.resize(n);
  if (with_time_derivative) out.zz_dot.resize(n);

  struct AccumulateVisitor {
    detail::MultipoleAccumulator acc;
    double m_b;
    bool with_dot;

    void static_block(const double* ux, const double* uy, const double* uz, const double* u2,
                      int take, double r_max, double u_min2) {
      detail::accumulate_static_block(acc, m_b, ux, uy, uz, u2, take, r_max, u_min2);
    }

    void particle(double x, double y, double z, double vx, double vy, double vz, bool distant) {
      if (!distant) return;
      acc.add(m_b, x, y, z);
      if (with_dot) acc.add_dot(m_b, x, y, z, vx, vy, vz);
    }
  };

  parallel_indexed(n, workers, [&](std::size_t i) {
    AccumulateVisitor visitor{{}, bath.m_b, with_time_derivative};
    detail::visit_bath_sample(bath, tau, seed, i, visitor);
    const detail::MultipoleAccumulator& acc = visitor.acc;
    out.zx[i] = acc.xz;
    out.zy[i] = acc.yz;
    out.zz[i] = acc.zz;
    if (with_time_derivative) out.zz_dot[i] = acc.dzz;
    const SymMat3 hess{acc.xx, acc.yy, acc.zz, acc.xy, acc.xz, acc.yz};
    const double scale = hess.frobenius();
    out.trace_rel[i] = scale > 0.0 ? std::abs(hess.trace()) / scale : 0.0;
  });
  return out;
}

EnsembleResult population_from_ensemble(const MultipoleEnsemble& ensemble,
                                        const ExperimentSpec& spec, double theta0,
                                        const PhysicalConstants& constants) {
  const std::size_t n = ensemble.zz.size();
  std::vector<double> pops(n);
  for (std::size_t i = 0; i < n; ++i) {
    MultipoleCoefficients phi;
    phi.hess.xz = ensemble.zx[i];
    phi.hess.yz = ensemble.zy[i];
    phi.hess.zz = ensemble.zz[i];
    const auto theta = theta_displacement(phi, spec, constants);
    const auto overlap = gaussian_state_overlap(theta, spec, phi, constants);
    pops[i] = population_from_overlap(overlap, theta0);
  }
  return EnsembleResult{mean(pops), std_error_of_mean(pops), n, ensemble.seed};
}

EnsembleResult ensemble_average_population(const BathSpec& bath, const ExperimentSpec& spec,
                                           double theta0, std::size_t n_samples,
                                           std::uint64_t seed, const PhysicalConstants& constants,
                                           int workers) {
  if (n_samples < 100) throw ConfigError("ensemble_average_population: n_samples must be >= 100");
  const auto ensemble =
      collect_multipole_ensemble(bath, spec.tau, n_samples, seed, workers, false);
  return population_from_ensemble(ensemble, spec, theta0, constants);
}

EnsembleResult timedep_contrast_from_ensemble(const MultipoleEnsemble& ensemble,
                                              const ExperimentSpec& spec,
                                              const PhysicalConstants& constants) {
  if (ensemble.zz_dot.size() != ensemble.zz.size()) {
    throw ConfigError("timedep_contrast_from_ensemble: ensemble lacks time derivatives");
  }
  const std::size_t n = ensemble.zz.size();
  const double tau2 = spec.tau * spec.tau;
  const double tau3 = tau2 * spec.tau;
  const double d = effective_dipole(spec, constants);
  const double d7 = spec.z0 + 7.0 / 12.0 * constants.hbar * spec.k * spec.tau / spec.m_a;
  std::vector<double> re(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phase =
        spec.k * constants.G * (ensemble.zz[i] * tau2 * d + ensemble.zz_dot[i] * tau3 * d7);
    re[i] = std::cos(phase);
  }
  return EnsembleResult{mean(re), std_error_of_mean(re), n, ensemble.seed};
}

}  // namespace gravbath
