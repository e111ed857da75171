#include "gravbath/sweep.hpp"

#include <cmath>
#include <ostream>

#include "gravbath/ensemble.hpp"
#include "gravbath/format.hpp"
#include "gravbath/parallel.hpp"
#include "gravbath/stats.hpp"
#include "gravbath/trajectory.hpp"
#include "gravbath/version.hpp"

namespace gravbath {

std::vector<std::string> output_header(const RunConfig& config, const std::string& kind) {
  std::vector<std::string> lines;
  lines.push_back("gravbath " + std::string(kVersion) + " " + kind);
  lines.push_back("rng = " + std::string(Rng::kAlgorithm));
  lines.push_back("config:");
  std::string rendered = render_config(config);
  std::size_t pos = 0;
  while (pos < rendered.size()) {
    const auto nl = rendered.find('\n', pos);
    lines.push_back("  " + rendered.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

namespace {

std::vector<double> axis_values(const SweepConfig& s) {
  std::vector<double> values(static_cast<std::size_t>(s.count));
  if (s.count == 1) {
    values[0] = s.start;
    return values;
  }
  for (int i = 0; i < s.count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(s.count - 1);
    values[static_cast<std::size_t>(i)] =
        s.log_scale ? s.start * std::pow(s.stop / s.start, f) : s.start + (s.stop - s.start) * f;
  }
  return values;
}

void apply_axis(const std::string& axis, double value, ExperimentSpec& exp, BathSpec& bath) {
  if (axis == "tau") exp.tau = value;
  else if (axis == "z0") exp.z0 = value;
  else if (axis == "sigma") exp.sigma = value;
  else if (axis == "k") exp.k = value;
  else if (axis == "theta0") exp.theta0 = value;
  else if (axis == "v_beta") bath.v_beta = value;
  else if (axis == "n0") bath.n0 = value;
  else if (axis == "m_b") bath.m_b = value;
  else if (axis == "r_min") {
    const double ratio = bath.r_max / bath.r_min;
    bath.r_min = value;
    bath.r_max = ratio * value;
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "'");
  }
}

std::string flags_string(const RegimeCheck& check) {
  const auto violations = check.violations();
  if (violations.empty()) return "ok";
  std::string joined;
  for (const auto& v : violations) {
    if (!joined.empty()) joined += ";";
    joined += v;
  }
  return joined;
}

}  // namespace

void write_table(std::ostream& out, const OutputTable& table, char delimiter) {
  for (const auto& line : table.header_comments) out << "# " << line << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << delimiter;
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << delimiter;
      out << row[i];
    }
    out << '\n';
  }
}

OutputTable run_sweep(const RunConfig& config, int workers) {
  if (!config.sweep) throw ConfigError("sweep subcommand requires a [sweep] section");
  const SweepConfig& sweep = *config.sweep;
  const PhysicalConstants constants = config.constants();
  const std::vector<double> values = axis_values(sweep);

  OutputTable table;
  table.header_comments = output_header(config, "sweep");

  if (sweep.axis == "d_over_b") {
    table.columns = {"d_over_b", "recovery_ratio", "phase_atom", "phase_laser", "error"};
    table.rows.assign(values.size(), {});
    parallel_indexed(values.size(), workers, [&](std::size_t i) {
      std::vector<std::string> row(5, "");
      row[0] = format_full(values[i]);
      try {
        const double d = values[i] * sweep.b;
        const double ratio =
            phase_recovery_ratio(sweep.b, d, sweep.geometry, config.experiment, constants);
        // Constituent phases of the same perpendicular crossing, for plotting.
        const double z_cross = sweep.geometry == FlybyGeometry::below_laser ? -sweep.b : sweep.b;
        FlybySpec flyby{{-config.experiment.tau, 0.0, z_cross}, {1.0, 0.0, 0.0}, 1.0};
        const auto laser = kick_event(flyby, {0, 0, 0}, constants);
        const auto atom = kick_event(flyby, {0, 0, d}, constants);
        row[1] = format_full(ratio);
        row[2] = format_full(config.experiment.k * atom.dv_z *
                             kick_window(atom.t_kick, config.experiment.tau));
        row[3] = format_full(-config.experiment.k * laser.dv_z *
                             kick_window(laser.t_kick, config.experiment.tau));
      } catch (const std::exception& e) {
        row[4] = e.what();
      }
      table.rows[i] = std::move(row);
    });
    return table;
  }

  table.columns = {"value",    "rho_theta0_0", "rho_theta0_pi", "contrast",
                   "phase_shift", "regime_flags", "error"};
  table.rows.assign(values.size(), {});
  parallel_indexed(values.size(), workers, [&](std::size_t i) {
    std::vector<std::string> row(7, "");
    row[0] = format_full(values[i]);
    try {
      ExperimentSpec exp = config.experiment;
      BathSpec bath = config.bath;
      apply_axis(sweep.axis, values[i], exp, bath);
      exp.validate();
      bath.validate();
      const RegimeCheck regime = check_regime(bath, exp, constants);
      if (config.strict_regime && !regime.ok()) {
        throw NumericalError("regime violated at " + sweep.axis + " = " + format_full(values[i]) +
                             ": " + flags_string(regime));
      }
      // With a [bias] section present the fringe comes from the biased form.
      const Fringe fringe =
          config.bias
              ? bias_fringe(bath, {0, 0, bias_mean_hess(*config.bias, bath)}, exp, constants)
              : distant_fringe_exact(bath, exp, constants);
      const double re = fringe.amplitude.real();
      row[1] = format_full(0.5 + 0.5 * re);
      row[2] = format_full(0.5 - 0.5 * re);
      row[3] = format_full(fringe.contrast());
      row[4] = format_full(fringe.phase_shift());
      row[5] = flags_string(regime);
    } catch (const NumericalError& e) {
      if (config.strict_regime) throw;
      row[6] = e.what();
    } catch (const ConfigError& e) {
      row[6] = e.what();
    }
    table.rows[i] = std::move(row);
  });
  return table;
}

namespace {

struct CheckBuilder {
  ValidationReport report;

  void relative(const std::string& name, double measured, double expected, double tol) {
    const bool pass = std::abs(measured - expected) <= tol * std::abs(expected);
    report.checks.push_back({name, measured, expected, tol, pass});
  }
  void absolute(const std::string& name, double measured, double expected, double tol) {
    const bool pass = std::abs(measured - expected) <= tol;
    report.checks.push_back({name, measured, expected, tol, pass});
  }
  void at_least(const std::string& name, double measured, double floor) {
    report.checks.push_back({name, measured, floor, 0.0, measured >= floor});
  }
};

/// Random fly-by in the impulsive validity window: perpendicular-ish passage
/// with kick times inside the pulse sequence for both targets and closest
/// approach far above both the path separation and the kick-induced drift.
struct OracleFlyby {
  FlybySpec flyby;
  ExperimentSpec spec;
};

OracleFlyby draw_oracle_flyby(Rng& rng) {
  for (;;) {
    ExperimentSpec spec;
    spec.m_a = 1.0;
    spec.k = 1.0;
    spec.tau = 1.0;
    spec.sigma = 0.05;
    spec.z0 = 0.05 + 0.25 * rng.uniform();

    const double b = 0.02 + 0.06 * rng.uniform();
    const double speed = 8.0 + 12.0 * rng.uniform();
    const double t_cross = 0.3 + 1.4 * rng.uniform();

    // near-perpendicular travel: the impulsive error grows with the kick
    // width b/v and with the velocity component along the measurement axis
    const double phi = 2.0 * M_PI * rng.uniform();
    const double cz = 0.1 * (rng.uniform() - 0.5);
    const double sz = std::sqrt(1.0 - cz * cz);
    const Vec3 dir{sz * std::cos(phi), sz * std::sin(phi), cz};
    const double psi = 2.0 * M_PI * rng.uniform();
    Vec3 u{-dir.y, dir.x, 0.0};
    const double un = norm(u);
    if (un < 1e-6) continue;
    u = u * (1.0 / un);
    const Vec3 w{dir.y * u.z - dir.z * u.y, dir.z * u.x - dir.x * u.z,
                 dir.x * u.y - dir.y * u.x};
    const Vec3 offset = (u * std::cos(psi) + w * std::sin(psi)) * b;

    FlybySpec flyby;
    flyby.v_b = dir * speed;
    flyby.r_b = offset - flyby.v_b * t_cross;
    // kick scaled so bodies drift by at most ~1e-3 b during the run
    flyby.m_b = 5e-4 * b * b * speed / spec.tau;

    const Vec3 atom{0.0, 0.0, spec.z0};  // hbar = 1e-5 keeps d ~ z0
    const double tk0 = kick_time(flyby, {0, 0, 0});
    const double tkd = kick_time(flyby, atom);
    if (tk0 < 0.25 || tk0 > 1.75 || tkd < 0.25 || tkd > 1.75) continue;
    const double b0 = std::sqrt(closest_approach_sq(flyby.r_b, flyby.v_b, 2.0 * spec.tau));
    const double bd = std::sqrt(closest_approach_sq(flyby.r_b - atom, flyby.v_b, 2.0 * spec.tau));
    if (b0 < 0.025 || bd < 0.025) continue;
    return OracleFlyby{flyby, spec};
  }
}

}  // namespace

ValidationReport run_validation(const RunConfig& config, int workers) {
  CheckBuilder out;
  const std::size_t n = std::max<std::size_t>(config.oracle.n_samples, 500);
  const std::uint64_t seed = config.oracle.seed;
  PhysicalConstants ones = PhysicalConstants::dimensionless();

  // Static bath: xi^2 = 1, Gaussian regime n0 r_min^3 = 100.
  BathSpec bath_static{0.1, 100.0, 0.0, 1.0, 10.0};
  const double xi2 = xi_squared(bath_static, ones);
  const auto ens = collect_multipole_ensemble(bath_static, 0.3, n, seed, workers, false);
  {
    const double tol = std::max(0.02, 6.0 * std::sqrt(2.0 / static_cast<double>(n)));
    out.relative("var_hess_zz", variance(ens.zz), hess_variance(bath_static, ones, 2, 2), tol);
    out.relative("var_hess_zy", variance(ens.zy), hess_variance(bath_static, ones, 2, 1), tol);
    out.absolute("trace_zero_max_rel", ens.max_trace_rel(), 0.0, 1e-10);
    out.absolute("mean_hess_zz_sigmas", mean(ens.zz) / std_error_of_mean(ens.zz), 0.0, 3.0);
    const double tol_skew = 0.1 + 3.0 * std::sqrt(6.0 / static_cast<double>(n));
    out.absolute("gaussianity_skew_high_density", skewness(ens.zz), 0.0, tol_skew);
  }

  // Ensemble average against the closed-form population at xi^2 tau^4 = 1e-2.
  {
    PhysicalConstants c = ones;
    c.hbar = 0.1;
    ExperimentSpec exp;
    exp.m_a = 1.0;
    exp.k = 1.0;
    exp.z0 = 0.5;
    exp.tau = std::pow(1e-2 / xi2, 0.25);
    exp.sigma = standard_quantum_limit_sigma(exp, c);
    for (double theta0 : {0.0, M_PI / 2}) {
      const auto mc = population_from_ensemble(ens, exp, theta0, c);
      const double closed = averaged_population_exact(bath_static, exp, theta0, c);
      out.absolute("ensemble_vs_eq38_theta" + format_full(theta0),
                   (mc.mean_population - closed) / mc.std_error, 0.0, 3.0);
    }
    // Relative gap between the full and leading-order averages shrinks as
    // (xi^2 tau^4)^2: slope of the log-log gap must reach 2.
    std::vector<double> lx, ly;
    for (int i = 0; i < 7; ++i) {
      const double xt4 = std::pow(10.0, -4.0 + 2.0 * i / 6.0);
      ExperimentSpec e2 = exp;
      e2.tau = std::pow(xt4 / xi2, 0.25);
      e2.sigma = standard_quantum_limit_sigma(e2, c);
      const double gap = std::abs(averaged_population_exact(bath_static, e2, M_PI / 3, c) -
                                  averaged_population_approx(bath_static, e2, M_PI / 3, c));
      lx.push_back(std::log(xt4));
      ly.push_back(std::log(gap));
    }
    const double mx = mean(lx), my = mean(ly);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    out.at_least("eq38_vs_eq39_slope", sxy / sxx, 1.8);
  }

  // Moving bath: variance of the Hessian time derivative and its
  // decorrelation from the static part. The reference statistics are defined
  // on the position-only cut (velocities unrestricted), which a zero-length
  // partition window reproduces exactly.
  {
    BathSpec bath_dot{0.1, 100.0, 1.0, 1.0, 5.0};
    const std::size_t n_dot = std::min<std::size_t>(n, 40000);
    const auto ens_dot =
        collect_multipole_ensemble(bath_dot, 0.0, n_dot, seed + 1, workers, true);
    const double expected = 48.0 * M_PI / 5.0 * xi_squared(bath_dot, ones) *
                            bath_dot.v_beta * bath_dot.v_beta /
                            (bath_dot.r_min * bath_dot.r_min);
    const double tol = std::max(0.03, 6.0 * std::sqrt(2.0 / static_cast<double>(n_dot)));
    out.relative("var_hess_dot_zz", variance(ens_dot.zz_dot), expected, tol);
    out.absolute("corr_phi_phidot_sigmas",
                 correlation(ens_dot.zz, ens_dot.zz_dot) *
                     std::sqrt(static_cast<double>(n_dot)),
                 0.0, 3.0);
  }

  // Time-dependent contrast: sampled linear-in-time phase vs the closed form,
  // again on the position-cut ensemble.
  {
    BathSpec bath_drift{0.05, 100.0, 0.2, 1.0, 10.0};
    PhysicalConstants c = ones;
    c.hbar = 0.1;
    ExperimentSpec exp;
    exp.m_a = 1.0;
    exp.k = 1.0;
    exp.z0 = 0.5;
    exp.tau = 0.5;
    exp.sigma = standard_quantum_limit_sigma(exp, c);
    const std::size_t n_drift = std::min<std::size_t>(n, 20000);
    const auto ens_drift =
        collect_multipole_ensemble(bath_drift, 0.0, n_drift, seed + 2, workers, true);
    const auto mc = timedep_contrast_from_ensemble(ens_drift, exp, c);
    const double closed = time_dependent_contrast(bath_drift, exp, c);
    out.absolute("timedep_contrast_mc_sigmas", (mc.mean_population - closed) / mc.std_error, 0.0,
                 3.0);
  }

  // Impulsive closed form against the trajectory integrator.
  {
    Rng rng(seed, 7001);
    PhysicalConstants c = ones;
    c.hbar = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      OracleFlyby of = draw_oracle_flyby(rng);
      const double b_ref = std::sqrt(closest_approach_sq(of.flyby.r_b, of.flyby.v_b, 2.0));
      const double step = b_ref / (2000.0 * norm(of.flyby.v_b));
      const auto traj = integrate_flyby_trajectories(of.flyby, of.spec, c, step);
      const double impulsive = flyby_phase(of.flyby, of.spec, c);
      worst = std::max(worst, std::abs(traj.phase - impulsive) / std::abs(impulsive));
    }
    out.absolute("impulsive_vs_trajectory_max_rel", worst, 0.0, 0.01);
  }

  // Kick closed form against time quadrature, gradient against central
  // differences.
  {
    Rng rng(seed, 7002);
    double worst_kick = 0.0, worst_grad = 0.0;
    for (int i = 0; i < 20; ++i) {
      const OracleFlyby of = draw_oracle_flyby(rng);
      const Vec3 target{0.0, 0.0, of.spec.z0};
      const double closed = velocity_kick(of.flyby, target, ones);
      const double quad = velocity_kick_time_quadrature(of.flyby, target, ones, 1e-11);
      const double scale = 2.0 * ones.G * of.flyby.m_b /
                           (norm(of.flyby.v_b) *
                            std::sqrt(closest_approach_sq(of.flyby.r_b - target, of.flyby.v_b,
                                                          2.0 * of.spec.tau)));
      worst_kick = std::max(worst_kick, std::abs(quad - closed) / scale);

      const Vec3 grad = velocity_kick_gradient(of.flyby, target, ones);
      const double h = 1e-6 * std::sqrt(closest_approach_sq(of.flyby.r_b - target, of.flyby.v_b,
                                                            2.0 * of.spec.tau));
      Vec3 fd;
      fd.x = (velocity_kick(of.flyby, target + Vec3{h, 0, 0}, ones) -
              velocity_kick(of.flyby, target - Vec3{h, 0, 0}, ones)) /
             (2.0 * h);
      fd.y = (velocity_kick(of.flyby, target + Vec3{0, h, 0}, ones) -
              velocity_kick(of.flyby, target - Vec3{0, h, 0}, ones)) /
             (2.0 * h);
      fd.z = (velocity_kick(of.flyby, target + Vec3{0, 0, h}, ones) -
              velocity_kick(of.flyby, target - Vec3{0, 0, h}, ones)) /
             (2.0 * h);
      worst_grad = std::max(worst_grad, norm(fd - grad) / norm(grad));
    }
    out.absolute("kick_quadrature_max_scaled_err", worst_kick, 0.0, 1e-8);
    out.absolute("kick_gradient_fd_max_rel", worst_grad, 0.0, 1e-5);
  }

  // Gaussianity degrades once n0 r_min^3 drops to order one.
  {
    BathSpec bath_sparse{0.1, 1.0, 0.0, 1.0, 10.0};
    const std::size_t n_sparse = std::max<std::size_t>(n, 20000);
    const auto ens_sparse =
        collect_multipole_ensemble(bath_sparse, 0.3, n_sparse, seed + 3, workers, false);
    out.at_least("gaussianity_skew_low_density", skewness(ens_sparse.zz), 0.08);
  }

  return out.report;
}

OutputTable validation_table(const ValidationReport& report, const RunConfig& config) {
  OutputTable table;
  table.header_comments = output_header(config, "validate");
  table.columns = {"check", "measured", "expected", "tolerance", "pass"};
  for (const auto& c : report.checks) {
    table.rows.push_back({c.name, format_full(c.measured), format_full(c.expected),
                          format_full(c.tolerance), c.pass ? "1" : "0"});
  }
  return table;
}

}  // namespace gravbath
