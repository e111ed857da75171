#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gravbath/ensemble.hpp"
#include "gravbath/format.hpp"
#include "gravbath/parallel.hpp"
#include "gravbath/sweep.hpp"
#include "gravbath/trajectory.hpp"
#include "gravbath/version.hpp"

namespace {

using namespace gravbath;

struct CliOptions {
  std::string config_path;
  std::string output_override;
  std::string trajectory_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool strict_regime = false;
};

RunConfig load_config(const CliOptions& opt) {
  std::ifstream in(opt.config_path);
  if (!in) throw ConfigError("cannot open config file '" + opt.config_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig cfg = parse_config(buf.str());
  if (opt.seed_set) cfg.oracle.seed = opt.seed;
  if (!opt.output_override.empty()) cfg.output.path = opt.output_override;
  cfg.strict_regime = opt.strict_regime;
  return cfg;
}

void emit(const RunConfig& cfg, const OutputTable& table) {
  if (cfg.output.path.empty()) {
    write_table(std::cout, table, cfg.output.delimiter);
    return;
  }
  std::ofstream out(cfg.output.path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + cfg.output.path + "'");
  write_table(out, table, cfg.output.delimiter);
}

int cmd_sweep(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  emit(cfg, run_sweep(cfg, opt.threads));
  return 0;
}

int cmd_validate(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  const ValidationReport report = run_validation(cfg, opt.threads);
  emit(cfg, validation_table(report, cfg));
  return report.all_pass() ? 0 : 1;
}

int cmd_flyby(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  if (!cfg.flyby) throw ConfigError("flyby subcommand requires a [flyby] section");
  const PhysicalConstants constants = cfg.constants();
  const FlybySpec& flyby = *cfg.flyby;
  const ExperimentSpec& exp = cfg.experiment;
  const double d = effective_dipole(exp, constants);

  const KickEvent laser = kick_event(flyby, {0, 0, 0}, constants);
  const KickEvent atom = kick_event(flyby, {0, 0, d}, constants);
  const OverlapFactor overlap = flyby_overlap(flyby, exp, constants);
  const double population = population_from_overlap(overlap, exp.theta0);

  OutputTable table;
  table.header_comments = output_header(cfg, "flyby");
  table.columns = {"t_kick_laser", "t_kick_atom", "dv_z_laser", "dv_z_atom",
                   "grad_dv_x",    "grad_dv_y",   "grad_dv_z",  "overlap_re",
                   "overlap_im",   "contrast",    "phase",      "population",
                   "trajectory_phase", "error"};
  std::string traj_phase, error;
  try {
    const double b0 = std::sqrt(closest_approach_sq(flyby.r_b, flyby.v_b, 2.0 * exp.tau));
    const double step = std::min(b0 / norm(flyby.v_b), exp.tau) / 2000.0;
    const TrajectoryResult traj = integrate_flyby_trajectories(flyby, exp, constants, step);
    traj_phase = format_full(traj.phase);
    if (!opt.trajectory_path.empty()) {
      OutputTable tracks;
      tracks.header_comments = output_header(cfg, "flyby-trajectory");
      tracks.columns = {"t", "z_laser", "z_top", "z_bottom"};
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        tracks.rows.push_back({format_full(traj.times[i]), format_full(traj.z_laser[i]),
                               format_full(traj.z_top[i]), format_full(traj.z_bottom[i])});
      }
      std::ofstream out(opt.trajectory_path, std::ios::binary);
      if (!out) throw ConfigError("cannot open trajectory file '" + opt.trajectory_path + "'");
      write_table(out, tracks, cfg.output.delimiter);
    }
  } catch (const NumericalError& e) {
    error = e.what();
  }
  table.rows.push_back({format_full(laser.t_kick), format_full(atom.t_kick),
                        format_full(laser.dv_z), format_full(atom.dv_z),
                        format_full(atom.grad_dv_z.x), format_full(atom.grad_dv_z.y),
                        format_full(atom.grad_dv_z.z), format_full(overlap.value.real()),
                        format_full(overlap.value.imag()), format_full(std::abs(overlap.value)),
                        format_full(std::arg(overlap.value)), format_full(population), traj_phase,
                        error});
  emit(cfg, table);
  return 0;
}

int cmd_cosmic(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  if (!cfg.cosmic) throw ConfigError("cosmic subcommand requires a [cosmic] section");
  const PhysicalConstants constants = cfg.constants();
  const CosmicRaySpec& ray = *cfg.cosmic;
  const double kick = stark_kick(ray, constants);
  const double kick_biased = stark_kick_with_bias(ray, constants);
  const EventRate rate = event_rate(ray, ray.b, cfg.experiment.tau);

  OutputTable table;
  table.header_comments = output_header(cfg, "cosmic");
  table.columns = {"stark_kick", "stark_kick_with_bias", "event_rate", "waiting_time"};
  table.rows.push_back({format_full(kick), format_full(kick_biased), format_full(rate.rate),
                        format_full(rate.waiting_time)});
  emit(cfg, table);
  return 0;
}

int cmd_dump_bath(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  const BathSample sample = sample_bath(cfg.bath, cfg.experiment.tau, cfg.oracle.seed);
  OutputTable table;
  table.header_comments = output_header(cfg, "dump-bath");
  table.columns = {"seed", "index", "x", "y", "z", "vx", "vy", "vz", "sector"};
  std::vector<bool> in_cone(sample.particles.size(), false);
  for (auto idx : sample.collision_cone) in_cone[idx] = true;
  for (std::size_t i = 0; i < sample.particles.size(); ++i) {
    const BathParticle& p = sample.particles[i];
    table.rows.push_back({std::to_string(sample.seed), std::to_string(i),
                          format_full(p.position.x), format_full(p.position.y),
                          format_full(p.position.z), format_full(p.velocity.x),
                          format_full(p.velocity.y), format_full(p.velocity.z),
                          in_cone[i] ? "collision_cone" : "distant"});
  }
  emit(cfg, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atom-interferometer backgrounds from long-range-force baths"};
  app.set_version_flag("--version", std::string("gravbath ") + gravbath::kVersion);
  app.require_subcommand(1);

  CliOptions opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", opt.config_path, "run configuration file")->required();
    sub->add_option("--seed", opt.seed, "override oracle.seed")->each([&](const std::string&) {
      opt.seed_set = true;
    });
    sub->add_option("--threads", opt.threads, "worker count (default: GRAVBATH_THREADS or hardware)");
    sub->add_flag("--strict-regime", opt.strict_regime, "fail instead of flagging regime violations");
    sub->add_option("--output", opt.output_override, "override output.path");
    return sub;
  };

  auto* sweep = add_common(app.add_subcommand("sweep", "evaluate closed forms across a parameter sweep"));
  auto* validate = add_common(app.add_subcommand("validate", "run the oracle validation battery"));
  auto* flyby = add_common(app.add_subcommand("flyby", "impulsive and trajectory-integrated fly-by"));
  flyby->add_option("--trajectory", opt.trajectory_path, "write integrated tracks to this file");
  auto* cosmic = add_common(app.add_subcommand("cosmic", "DC-Stark kick and event-rate estimates"));
  auto* dump = add_common(app.add_subcommand("dump-bath", "sample one bath realization and dump it"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(opt);
    if (validate->parsed()) return cmd_validate(opt);
    if (flyby->parsed()) return cmd_flyby(opt);
    if (cosmic->parsed()) return cmd_cosmic(opt);
    if (dump->parsed()) return cmd_dump_bath(opt);
  } catch (const gravbath::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const gravbath::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
