// Acceptance suite: every release gate runs here at full statistical weight,
// one [PASS]/[FAIL] line per criterion. The heavy Monte Carlo ensembles are
// deterministic (fixed seeds, indexed streams), so a green run is
// reproducible bit for bit. Expect tens of minutes on a small machine; the
// dominant cost is criterion 1's 10^5 x ~3.4M-particle ensemble.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gravbath/collision_cone.hpp"
#include "gravbath/cosmic_ray.hpp"
#include "gravbath/distant_sector.hpp"
#include "gravbath/ensemble.hpp"
#include "gravbath/stats.hpp"
#include "gravbath/trajectory.hpp"

using namespace gravbath;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr double kYear = 365.25 * 86400.0;

// --- criterion 1 + 2: sampled tidal-tensor statistics ----------------------

void criterion_1(const PhysicalConstants& ones) {
  const auto t0 = std::chrono::steady_clock::now();
  BathSpec bath{0.1, 100.0, 0.0, 1.0, 20.0};  // n0 r_min^3 = 100, r_max = 20 r_min
  const std::size_t n = 100000;
  const auto ens = collect_multipole_ensemble(bath, 0.3, n, 20240101, 0, false);
  const double vzz = variance(ens.zz);
  const double vzy = variance(ens.zy);
  const double ezz = hess_variance(bath, ones, 2, 2);
  const double ezy = hess_variance(bath, ones, 2, 1);
  const double trace = ens.max_trace_rel();
  const bool pass = std::abs(vzz / ezz - 1.0) <= 0.02 && std::abs(vzy / ezy - 1.0) <= 0.02 &&
                    trace <= 1e-10;
  report("1 variance oracle",
         pass,
         fmt("var(G Phi^z_z)/expected = %.5f, var(G Phi^z_y)/expected = %.5f (|ratio-1| <= 0.02), "
             "max |trace|/||hess|| = %.2e (<= 1e-10), %zu samples in %.0f s",
             vzz / ezz, vzy / ezy, trace, n, seconds_since(t0)));
}

void criterion_2(const PhysicalConstants& ones) {
  BathSpec bath{0.1, 100.0, 1.0, 1.0, 5.0};
  const std::size_t n = 40000;
  // Position-only cut (zero-length partition window): the reference variance
  // integrates positions outside r_min with unrestricted velocities.
  const auto ens = collect_multipole_ensemble(bath, 0.0, n, 20240202, 0, true);
  const double vdot = variance(ens.zz_dot);
  const double expected = 48.0 * M_PI / 5.0 * xi_squared(bath, ones) * bath.v_beta * bath.v_beta /
                          (bath.r_min * bath.r_min);
  const double corr_sigmas =
      std::abs(correlation(ens.zz, ens.zz_dot)) * std::sqrt(static_cast<double>(n));
  const bool pass = std::abs(vdot / expected - 1.0) <= 0.03 && corr_sigmas <= 3.0;
  report("2 time-derivative oracle", pass,
         fmt("var(G dPhi^z_z/dt)/expected = %.5f (|ratio-1| <= 0.03), |corr| = %.2f sigma (<= 3)",
             vdot / expected, corr_sigmas));
}

// --- criterion 3 + 4: closed forms against the ensemble --------------------

struct DistantSetup {
  PhysicalConstants c;
  BathSpec bath;
  ExperimentSpec exp;

  explicit DistantSetup(double xi2_tau4) {
    c = PhysicalConstants::dimensionless();
    c.hbar = 0.1;
    bath = BathSpec{0.1, 100.0, 0.0, 1.0, 10.0};  // xi^2 = 1
    exp.m_a = 1.0;
    exp.k = 1.0;
    exp.z0 = 0.5;
    exp.tau = std::pow(xi2_tau4 / xi_squared(bath, c), 0.25);
    exp.sigma = standard_quantum_limit_sigma(exp, c);
  }
};

void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = 100000;
  // One zero-temperature ensemble serves every (tau, theta0) pair: the
  // partition is velocity-free, so tau only enters the closed forms.
  const DistantSetup ref(1e-2);
  const auto ens = collect_multipole_ensemble(ref.bath, ref.exp.tau, n, 20240303, 0, false);
  bool pass = true;
  std::string detail;
  for (double xt4 : {1e-3, 1e-2}) {
    const DistantSetup s(xt4);
    for (double theta0 : {0.0, M_PI / 4, M_PI / 2, M_PI}) {
      const auto mc = population_from_ensemble(ens, s.exp, theta0, s.c);
      const double closed = averaged_population_exact(s.bath, s.exp, theta0, s.c);
      const double sigmas = (mc.mean_population - closed) / mc.std_error;
      if (std::abs(sigmas) > 3.0) pass = false;
      detail += fmt("%.1f/%.2f:%+.2fs ", xt4 * 1000, theta0, sigmas);
    }
  }
  report("3 ensemble vs closed form", pass,
         fmt("pulls (xi2tau4[e-3]/theta0:sigmas, |.| <= 3): %s(%zu samples, %.0f s)",
             detail.c_str(), n, seconds_since(t0)));
}

void criterion_4() {
  std::vector<double> lx, ly;
  for (int i = 0; i < 7; ++i) {
    const double xt4 = std::pow(10.0, -4.0 + 2.0 * i / 6.0);
    const DistantSetup s(xt4);
    const double gap = std::abs(averaged_population_exact(s.bath, s.exp, M_PI / 3, s.c) -
                                averaged_population_approx(s.bath, s.exp, M_PI / 3, s.c));
    lx.push_back(std::log(xt4));
    ly.push_back(std::log(gap));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  report("4 Eq38-Eq39 gap scaling", slope >= 1.8,
         fmt("log-log slope over xi^2 tau^4 in [1e-4,1e-2] = %.3f (>= 1.8)", slope));
}

// --- criterion 5: equivalence principle -------------------------------------

void criterion_5() {
  ExperimentSpec spec;
  spec.k = 1e-3;
  spec.tau = 1.0;
  spec.z0 = 1.0;
  double worst = 0.0;
  for (double g : {0.0, 9.8, 1e6}) {
    for (int i = 0; i <= 16; ++i) {
      spec.theta0 = 2.0 * M_PI * i / 16.0;
      worst = std::max(worst, std::abs(uniform_acceleration_population(g, spec) -
                                       free_population(spec.theta0)));
    }
  }
  const bool pass_a = worst < 1e-12;

  // trajectory route: a very distant fly-by leaves only the tidal residue
  PhysicalConstants c = PhysicalConstants::dimensionless();
  c.hbar = 1e-5;
  ExperimentSpec espec;
  espec.tau = 1.0;
  espec.z0 = 1.0;
  const double R = 1e4, v = 1e3, Gm = 1e3;
  FlybySpec f{{R, 0, -0.4 * R}, {0, v, 0}, Gm};
  const auto traj = integrate_flyby_trajectories(f, espec, c, espec.tau / 20000.0);
  const double extent = espec.z0 + c.hbar * espec.k / espec.m_a * espec.tau;
  const double r_run = std::sqrt(closest_approach_sq(f.r_b, f.v_b, 2.0 * espec.tau));
  const double bound =
      2.0 * espec.k * espec.tau * espec.tau * 2.0 * c.G * f.m_b * extent / (r_run * r_run * r_run);
  const bool pass_b = std::abs(traj.phase) < bound;
  report("5 equivalence principle", pass_a && pass_b,
         fmt("max population deviation %.2e (< 1e-12); distant fly-by |phase| = %.2e < tidal "
             "bound %.2e",
             worst, std::abs(traj.phase), bound));
}

// --- criterion 6: impulsive limit -------------------------------------------

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

    const double phi = 2.0 * M_PI * rng.uniform();
    const double cz = 0.1 * (rng.uniform() - 0.5);
    const double sz = std::sqrt(1.0 - cz * cz);
    const Vec3 dir{sz * std::cos(phi), sz * std::sin(phi), cz};
    const double psi = 2.0 * M_PI * rng.uniform();
    Vec3 u{-dir.y, dir.x, 0.0};
    const double un = norm(u);
    if (un < 1e-6) continue;
    u = u * (1.0 / un);
    const Vec3 w{dir.y * u.z - dir.z * u.y, dir.z * u.x - dir.x * u.z, dir.x * u.y - dir.y * u.x};
    const Vec3 offset = (u * std::cos(psi) + w * std::sin(psi)) * b;

    FlybySpec flyby;
    flyby.v_b = dir * speed;
    flyby.r_b = offset - flyby.v_b * t_cross;
    flyby.m_b = 5e-4 * b * b * speed / spec.tau;

    const Vec3 atom{0.0, 0.0, spec.z0};
    const double tk0 = kick_time(flyby, {0, 0, 0});
    const double tkd = kick_time(flyby, atom);
    if (tk0 < 0.25 || tk0 > 1.75 || tkd < 0.25 || tkd > 1.75) continue;
    const double b0 = std::sqrt(closest_approach_sq(flyby.r_b, flyby.v_b, 2.0 * spec.tau));
    const double bd = std::sqrt(closest_approach_sq(flyby.r_b - atom, flyby.v_b, 2.0 * spec.tau));
    if (b0 < 0.025 || bd < 0.025) continue;
    return OracleFlyby{flyby, spec};
  }
}

void criterion_6(const PhysicalConstants& ones) {
  const auto t0 = std::chrono::steady_clock::now();
  PhysicalConstants c = ones;
  c.hbar = 1e-5;  // path separation 1e-5: closest approaches sit 10^3 above it
  Rng rng(20240606, 0);
  double worst_phase = 0.0, worst_kick = 0.0, worst_grad = 0.0;
  for (int i = 0; i < 50; ++i) {
    const OracleFlyby of = draw_oracle_flyby(rng);
    const double b_ref = std::sqrt(closest_approach_sq(of.flyby.r_b, of.flyby.v_b, 2.0));
    const auto traj = integrate_flyby_trajectories(of.flyby, of.spec, c,
                                                   b_ref / (2000.0 * norm(of.flyby.v_b)));
    const double impulsive = flyby_phase(of.flyby, of.spec, c);
    worst_phase = std::max(worst_phase,
                           std::abs(traj.phase - impulsive) / std::abs(impulsive));
  }
  for (int i = 0; i < 100; ++i) {
    const OracleFlyby of = draw_oracle_flyby(rng);
    const Vec3 target{0.0, 0.0, of.spec.z0};
    const double closed = velocity_kick(of.flyby, target, ones);
    const double quad = velocity_kick_time_quadrature(of.flyby, target, ones, 1e-11);
    worst_kick = std::max(worst_kick, std::abs(quad - closed) / std::abs(closed));

    const Vec3 grad = velocity_kick_gradient(of.flyby, target, ones);
    const double h =
        1e-6 * std::sqrt(closest_approach_sq(of.flyby.r_b - target, of.flyby.v_b, 2.0));
    Vec3 fd;
    fd.x = (velocity_kick(of.flyby, target + Vec3{h, 0, 0}, ones) -
            velocity_kick(of.flyby, target - Vec3{h, 0, 0}, ones)) /
           (2 * h);
    fd.y = (velocity_kick(of.flyby, target + Vec3{0, h, 0}, ones) -
            velocity_kick(of.flyby, target - Vec3{0, h, 0}, ones)) /
           (2 * h);
    fd.z = (velocity_kick(of.flyby, target + Vec3{0, 0, h}, ones) -
            velocity_kick(of.flyby, target - Vec3{0, 0, h}, ones)) /
           (2 * h);
    worst_grad = std::max(worst_grad, norm(fd - grad) / norm(grad));
  }
  const bool pass = worst_phase <= 0.01 && worst_kick <= 1e-8 && worst_grad <= 1e-5;
  report("6 impulsive limit", pass,
         fmt("50 fly-bys: max |phase err| = %.3e (<= 1e-2); 100 kicks: quadrature %.2e (<= 1e-8), "
             "gradient FD %.2e (<= 1e-5); %.0f s",
             worst_phase, worst_kick, worst_grad, seconds_since(t0)));
}

// --- criterion 7: headline numbers ------------------------------------------

void criterion_7(const PhysicalConstants& si) {
  bool pass = true;
  std::string detail;

  {  // decoherence time ~ 10 years
    BathSpec dm;
    dm.m_b = si.m_planck;
    dm.n0 = 5e-22 / si.m_planck;  // 5e-25 g/cm^3
    dm.r_min = 1.0;
    dm.r_max = 20.0;
    ExperimentSpec exp;
    exp.m_a = 1.4431606e-25;
    exp.k = 2.0 * M_PI / 780e-9;
    exp.tau = 1.0;
    exp.z0 = 1.0;
    exp.sigma = 1e-5;
    const double t = decoherence_time(dm, exp, si) / kYear;
    const double ratio = t / 10.0;
    pass = pass && ratio < 3.0 && ratio > 1.0 / 3.0;
    detail += fmt("t_dec = %.1f yr (x%.2f of 10 yr); ", t, ratio);
  }
  {  // sensitivity floor ~ 1e-12 m/s
    ExperimentSpec exp;
    exp.k = 2.0 * M_PI / 780e-9;
    exp.tau = 1.0;
    exp.Q = 100;
    exp.N_atoms = 1000000;
    const double dv = sensitivity_floor(exp, si);
    const double ratio = dv / 1e-12;
    pass = pass && ratio < 2.0 && ratio > 0.5;
    detail += fmt("dv_min = %.2e (x%.2f of 1e-12); ", dv, ratio);
  }
  {  // DC-Stark kick ~ 1e-40 m/s
    CosmicRaySpec ray;
    ray.q = si.e_charge;
    ray.v = si.c;
    ray.b = 1.0;
    ray.alpha_a = 50e-30 / si.coulomb;
    ray.m_a = 1.4431606e-25;
    const double kick = stark_kick(ray, si);
    const double ratio = kick / 1e-40;
    pass = pass && ratio < 3.0 && ratio > 1.0 / 3.0;
    detail += fmt("stark = %.2e (x%.2f of 1e-40); ", kick, ratio);
  }
  {  // one readable cosmic ray every ~10 years
    CosmicRaySpec ray;
    ray.q = si.e_charge;
    ray.v = si.c;
    ray.b = 1e-7;
    ray.alpha_a = 50e-30 / si.coulomb;
    ray.m_a = 1.4431606e-25;
    ray.n_cr = 1e-3;
    const double wait = event_rate(ray, 1e-7, 1.0).waiting_time / kYear;
    const double ratio = 10.0 / wait;
    pass = pass && ratio < 3.0 && ratio > 1.0 / 3.0;
    detail += fmt("waiting = %.2f yr (10 yr / x%.2f); ", wait, ratio);
  }
  {  // bias phase time ~ 5000 years
    BathSpec bath;
    bath.m_b = 1.0;
    bath.r_min = 1.0;
    bath.r_max = 20.0;
    BiasSpec bias{5e-22, 1e20};  // m_b n_asym = 5e-25 g/cm^3 with unit m_b
    const double k270 = 2.0 * M_PI / 270e-9;
    const double t = bias_phase_time(bath, bias, k270, 1.0, si) / kYear;
    const double ratio = t / 5000.0;
    pass = pass && ratio < 3.0 && ratio > 1.0 / 3.0;
    detail += fmt("t_phase = %.0f yr (x%.2f of 5000 yr)", t, ratio);
  }
  report("7 headline numbers", pass, detail);
}

// --- criterion 8: Fig. 3 reproduction ----------------------------------------

void criterion_8(const PhysicalConstants& ones) {
  ExperimentSpec spec;
  const double b = 0.05;
  const double at10 = phase_recovery_ratio(b, 10.0 * b, FlybyGeometry::below_laser, spec, ones);
  bool monotone = true;
  double last = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double d_over_b = std::pow(10.0, -1.0 + 4.0 * i / 60.0);
    const double r = phase_recovery_ratio(b, d_over_b * b, FlybyGeometry::below_laser, spec, ones);
    if (r <= last) monotone = false;
    last = r;
  }
  const double at1000 = phase_recovery_ratio(b, 1000.0 * b, FlybyGeometry::below_laser, spec, ones);
  const bool pass = at10 >= 0.75 && at10 <= 0.85 && monotone && at1000 > 0.99;
  report("8 phase recovery ratio", pass,
         fmt("ratio(d=10b) = %.4f (in [0.75,0.85]); monotone over d/b in [0.1,1e3]: %s; "
             "ratio(d=1000b) = %.4f (> 0.99)",
             at10, monotone ? "yes" : "no", at1000));
}

// --- criterion 9: 1/r regularization -----------------------------------------

void criterion_9() {
  FlybySpec f{{2.0, 1.0, 0}, {3.0, 0, 0}, 1.0};
  const Vec3 r1{0.5, 0, 0.3}, r2{-0.5, 0, -0.3};
  const double V0 = 1.0, v = norm(f.v_b);
  bool pass = true;
  std::string detail;
  double t_end = 1000.0;
  for (int i = 0; i < 3; ++i) {
    const auto a = relative_phase_difference(f, r1, r2, V0, t_end);
    const auto bb = relative_phase_difference(f, r1, r2, V0, 2.0 * t_end);
    const double change = std::abs(bb.value - a.value);
    if (change > a.tail_bound) pass = false;
    const double grow =
        single_path_phase(f, r1, V0, 2.0 * t_end) - single_path_phase(f, r1, V0, t_end);
    const double expected = V0 / v * std::log(2.0);
    if (std::abs(grow / expected - 1.0) > 0.05) pass = false;
    detail += fmt("T=%.0f: dDelta=%.1e<=%.1e, growth/ln2=%.4f; ", t_end, change, a.tail_bound,
                  grow / expected);
    t_end *= 2.0;
  }
  report("9 divergence regularization", pass, detail);
}

// --- criterion 10: byte-identical outputs across worker counts ---------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_10(const std::string& cli) {
  const std::string dir = "acceptance_tmp";
  const int mkdir_rc = std::system(("mkdir -p " + dir).c_str());
  if (mkdir_rc != 0) {
    report("10 determinism across workers", false, "could not create scratch directory");
    return;
  }
  {
    std::ofstream cfg(dir + "/sweep.cfg");
    cfg << "[experiment]\nk = 1\nz0 = 0.5\nsigma = 0.1\n"
           "[bath]\nm_b = 0.1\nn0 = 100\nr_min = 1\nr_max = 10\n"
           "[sweep]\naxis = tau\nstart = 0.05\nstop = 0.6\ncount = 64\nscale = log\n"
           "[oracle]\nseed = 7\n";
  }
  {
    std::ofstream cfg(dir + "/validate.cfg");
    cfg << "[oracle]\nn_samples = 600\nseed = 7\n";
  }
  bool pass = true;
  std::string detail;
  for (const std::string sub : {"sweep", "validate"}) {
    const std::string f1 = dir + "/" + sub + "_w1.csv";
    const std::string f8 = dir + "/" + sub + "_w8.csv";
    const std::string base = cli + " " + sub + " " + dir + "/" + sub + ".cfg --seed 7 --output ";
    const int rc1 = std::system((base + f1 + " --threads 1").c_str());
    const int rc8 = std::system((base + f8 + " --threads 8").c_str());
    const bool ran = (rc1 == 0 || sub == "validate") && (rc8 == 0 || sub == "validate");
    const std::string b1 = slurp(f1), b8 = slurp(f8);
    const bool same = ran && !b1.empty() && b1 == b8;
    if (!same) pass = false;
    detail += fmt("%s: %zu bytes, identical=%s; ", sub.c_str(), b1.size(), same ? "yes" : "no");
  }
  report("10 determinism across workers", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const auto ones = PhysicalConstants::dimensionless();
  const auto si = PhysicalConstants::si();
  const auto t0 = std::chrono::steady_clock::now();

  criterion_7(si);
  criterion_4();
  criterion_5();
  criterion_8(ones);
  criterion_9();
  criterion_6(ones);
  if (argc > 1) {
    criterion_10(argv[1]);
  } else {
    report("10 determinism across workers", false, "pass the gravbath CLI path as argv[1]");
  }
  criterion_2(ones);
  criterion_3();
  criterion_1(ones);

  std::printf("%s: %d criterion(s) failed, total %.0f s\n", g_failures == 0 ? "OK" : "FAILED",
              g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
