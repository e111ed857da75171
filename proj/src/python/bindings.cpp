#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gravbath/collision_cone.hpp"
#include "gravbath/cosmic_ray.hpp"
#include "gravbath/distant_sector.hpp"
#include "gravbath/ensemble.hpp"
#include "gravbath/interferometer.hpp"
#include "gravbath/trajectory.hpp"
#include "gravbath/version.hpp"

namespace py = pybind11;
using namespace gravbath;

namespace {

Vec3 to_vec3(const std::array<double, 3>& a) { return Vec3{a[0], a[1], a[2]}; }
std::array<double, 3> from_vec3(const Vec3& v) { return {v.x, v.y, v.z}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Atom-interferometer signal and decoherence estimates for long-range-force "
            "backgrounds, with Monte Carlo and trajectory oracles.";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "GravbathConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "GravbathNumericalError", PyExc_ArithmeticError);

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_static("si", &PhysicalConstants::si)
      .def_static("dimensionless", &PhysicalConstants::dimensionless)
      .def_readwrite("G", &PhysicalConstants::G)
      .def_readwrite("hbar", &PhysicalConstants::hbar)
      .def_readwrite("k_B", &PhysicalConstants::k_B)
      .def_readwrite("coulomb", &PhysicalConstants::coulomb)
      .def_readwrite("e_charge", &PhysicalConstants::e_charge)
      .def_readwrite("c", &PhysicalConstants::c)
      .def_readwrite("m_planck", &PhysicalConstants::m_planck);

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("m_a", &ExperimentSpec::m_a)
      .def_readwrite("k", &ExperimentSpec::k)
      .def_readwrite("tau", &ExperimentSpec::tau)
      .def_readwrite("theta0", &ExperimentSpec::theta0)
      .def_readwrite("z0", &ExperimentSpec::z0)
      .def_readwrite("sigma", &ExperimentSpec::sigma)
      .def_readwrite("Q", &ExperimentSpec::Q)
      .def_readwrite("N_atoms", &ExperimentSpec::N_atoms)
      .def("validate", &ExperimentSpec::validate);

  py::class_<BathSpec>(m, "BathSpec")
      .def(py::init<>())
      .def_readwrite("m_b", &BathSpec::m_b)
      .def_readwrite("n0", &BathSpec::n0)
      .def_readwrite("v_beta", &BathSpec::v_beta)
      .def_readwrite("r_min", &BathSpec::r_min)
      .def_readwrite("r_max", &BathSpec::r_max)
      .def("validate", &BathSpec::validate);

  py::class_<BiasSpec>(m, "BiasSpec")
      .def(py::init<>())
      .def_readwrite("n_asym", &BiasSpec::n_asym)
      .def_readwrite("R_prime", &BiasSpec::R_prime);

  py::class_<CosmicRaySpec>(m, "CosmicRaySpec")
      .def(py::init<>())
      .def_readwrite("q", &CosmicRaySpec::q)
      .def_readwrite("v", &CosmicRaySpec::v)
      .def_readwrite("b", &CosmicRaySpec::b)
      .def_readwrite("alpha_a", &CosmicRaySpec::alpha_a)
      .def_readwrite("m_a", &CosmicRaySpec::m_a)
      .def_readwrite("E_applied", &CosmicRaySpec::E_applied)
      .def_readwrite("n_cr", &CosmicRaySpec::n_cr);

  py::class_<FlybySpec>(m, "FlybySpec")
      .def(py::init([](std::array<double, 3> r, std::array<double, 3> v, double m_b) {
             return FlybySpec{to_vec3(r), to_vec3(v), m_b};
           }),
           py::arg("r_b"), py::arg("v_b"), py::arg("m_b"))
      .def_property("r_b", [](const FlybySpec& f) { return from_vec3(f.r_b); },
                    [](FlybySpec& f, std::array<double, 3> v) { f.r_b = to_vec3(v); })
      .def_property("v_b", [](const FlybySpec& f) { return from_vec3(f.v_b); },
                    [](FlybySpec& f, std::array<double, 3> v) { f.v_b = to_vec3(v); })
      .def_readwrite("m_b", &FlybySpec::m_b);

  py::class_<BathSample>(m, "BathSample")
      .def_property_readonly("n_particles",
                             [](const BathSample& s) { return s.particles.size(); })
      .def_property_readonly("n_distant", [](const BathSample& s) { return s.distant.size(); })
      .def_property_readonly("n_collision_cone",
                             [](const BathSample& s) { return s.collision_cone.size(); })
      .def_readonly("seed", &BathSample::seed)
      .def("particle",
           [](const BathSample& s, std::size_t i) {
             const auto& p = s.particles.at(i);
             return py::make_tuple(from_vec3(p.position), from_vec3(p.velocity));
           });

  py::class_<SymMat3>(m, "SymMat3")
      .def("__call__", &SymMat3::operator())
      .def("trace", &SymMat3::trace)
      .def_readonly("xx", &SymMat3::xx)
      .def_readonly("yy", &SymMat3::yy)
      .def_readonly("zz", &SymMat3::zz)
      .def_readonly("xy", &SymMat3::xy)
      .def_readonly("xz", &SymMat3::xz)
      .def_readonly("yz", &SymMat3::yz);

  py::class_<MultipoleCoefficients>(m, "MultipoleCoefficients")
      .def(py::init<>())
      .def_property_readonly("grad",
                             [](const MultipoleCoefficients& c) { return from_vec3(c.grad); })
      .def_readonly("hess", &MultipoleCoefficients::hess)
      .def_property_readonly("hess_dot_zz",
                             [](const MultipoleCoefficients& c) -> py::object {
                               if (!c.hess_dot) return py::none();
                               return py::float_(c.hess_dot->zz);
                             })
      .def("hess_z_row_sq", &MultipoleCoefficients::hess_z_row_sq);

  py::class_<EnsembleResult>(m, "EnsembleResult")
      .def_readonly("mean_population", &EnsembleResult::mean_population)
      .def_readonly("std_error", &EnsembleResult::std_error)
      .def_readonly("n_samples", &EnsembleResult::n_samples)
      .def_readonly("seed", &EnsembleResult::seed);

  py::class_<TrajectoryResult>(m, "TrajectoryResult")
      .def_readonly("phase", &TrajectoryResult::phase)
      .def_readonly("times", &TrajectoryResult::times)
      .def_readonly("z_laser", &TrajectoryResult::z_laser)
      .def_readonly("z_top", &TrajectoryResult::z_top)
      .def_readonly("z_bottom", &TrajectoryResult::z_bottom)
      .def_readonly("step_used", &TrajectoryResult::step_used);

  py::enum_<FlybyGeometry>(m, "FlybyGeometry")
      .value("below_laser", FlybyGeometry::below_laser)
      .value("above_laser", FlybyGeometry::above_laser);

  // units_core
  m.def("effective_dipole", &effective_dipole, py::arg("spec"), py::arg("constants"));
  m.def("standard_quantum_limit_sigma", &standard_quantum_limit_sigma, py::arg("spec"),
        py::arg("constants"));

  // interferometer
  m.def("population_from_overlap",
        [](std::complex<double> overlap, double theta0) {
          return population_from_overlap(OverlapFactor{overlap}, theta0);
        },
        py::arg("overlap"), py::arg("theta0"));
  m.def("free_population", &free_population, py::arg("theta0"));
  m.def("uniform_acceleration_population", &uniform_acceleration_population, py::arg("g"),
        py::arg("spec"));
  m.def("collisional_gamma_reference",
        [](double n, double m_b, double T, const std::function<double(double)>& sigma_of_q,
           const PhysicalConstants& constants, double q_min, double q_max) {
          const auto r = collisional_gamma_reference(n, m_b, T, sigma_of_q, constants, q_min, q_max);
          return py::make_tuple(r.rate, r.converged);
        },
        py::arg("n"), py::arg("m_b"), py::arg("T"), py::arg("sigma_of_q"), py::arg("constants"),
        py::arg("q_min") = 0.0, py::arg("q_max") = 0.0);

  // bath
  m.def("sample_bath", &sample_bath, py::arg("spec"), py::arg("tau"), py::arg("seed"),
        py::arg("index") = 0);
  m.def("multipole_at_origin", &multipole_at_origin, py::arg("sample"), py::arg("spec"),
        py::arg("restrict_to_distant"), py::arg("with_time_derivative") = false);
  m.def("time_derivative_hess_zz", &time_derivative_hess_zz, py::arg("sample"), py::arg("spec"),
        py::arg("restrict_to_distant") = true);
  m.def("xi_squared", &xi_squared, py::arg("spec"), py::arg("constants"));
  m.def("hess_variance", &hess_variance, py::arg("spec"), py::arg("constants"), py::arg("i"),
        py::arg("j"));

  // distant sector
  m.def("averaged_population_exact", &averaged_population_exact, py::arg("bath"), py::arg("spec"),
        py::arg("theta0"), py::arg("constants"));
  m.def("averaged_population_approx", &averaged_population_approx, py::arg("bath"),
        py::arg("spec"), py::arg("theta0"), py::arg("constants"));
  m.def("decoherence_time", &decoherence_time, py::arg("bath"), py::arg("spec"),
        py::arg("constants"));
  m.def("bias_mean_hess", &bias_mean_hess, py::arg("bias"), py::arg("bath"));
  m.def("bias_population", &bias_population, py::arg("bath"), py::arg("bias"), py::arg("spec"),
        py::arg("theta0"), py::arg("constants"));
  m.def("bias_phase_time", &bias_phase_time, py::arg("bath"), py::arg("bias"), py::arg("k"),
        py::arg("d"), py::arg("constants"));
  m.def("time_dependent_contrast", &time_dependent_contrast, py::arg("bath"), py::arg("spec"),
        py::arg("constants"));
  m.def("gaussian_state_overlap",
        [](const ExperimentSpec& spec, const MultipoleCoefficients& phi,
           const PhysicalConstants& constants) {
          return gaussian_state_overlap(theta_displacement(phi, spec, constants), spec, phi,
                                        constants)
              .value;
        },
        py::arg("spec"), py::arg("phi"), py::arg("constants"));

  // collision cone
  m.def("kick_time",
        [](const FlybySpec& f, std::array<double, 3> target) {
          return kick_time(f, to_vec3(target));
        },
        py::arg("flyby"), py::arg("target"));
  m.def("velocity_kick",
        [](const FlybySpec& f, std::array<double, 3> target, const PhysicalConstants& c) {
          return velocity_kick(f, to_vec3(target), c);
        },
        py::arg("flyby"), py::arg("target"), py::arg("constants"));
  m.def("velocity_kick_gradient",
        [](const FlybySpec& f, std::array<double, 3> target, const PhysicalConstants& c) {
          return from_vec3(velocity_kick_gradient(f, to_vec3(target), c));
        },
        py::arg("flyby"), py::arg("target"), py::arg("constants"));
  m.def("flyby_overlap",
        [](const FlybySpec& f, const ExperimentSpec& s, const PhysicalConstants& c) {
          return flyby_overlap(f, s, c).value;
        },
        py::arg("flyby"), py::arg("spec"), py::arg("constants"));
  m.def("sensitivity_floor", &sensitivity_floor, py::arg("spec"), py::arg("constants"));
  m.def("max_readable_impact", &max_readable_impact, py::arg("bath"), py::arg("dv_min"),
        py::arg("v_ref"), py::arg("constants"));
  m.def("phase_recovery_ratio", &phase_recovery_ratio, py::arg("b"), py::arg("d"),
        py::arg("geometry"), py::arg("spec"), py::arg("constants"));

  // cosmic rays
  m.def("stark_kick", &stark_kick, py::arg("spec"), py::arg("constants"));
  m.def("stark_kick_with_bias", &stark_kick_with_bias, py::arg("spec"), py::arg("constants"));
  m.def("event_rate",
        [](const CosmicRaySpec& spec, double b_max, double tau) {
          const auto r = event_rate(spec, b_max, tau);
          return py::make_tuple(r.rate, r.waiting_time);
        },
        py::arg("spec"), py::arg("b_max"), py::arg("tau"));

  // oracles
  m.def("ensemble_average_population", &ensemble_average_population, py::arg("bath"),
        py::arg("spec"), py::arg("theta0"), py::arg("n_samples"), py::arg("seed"),
        py::arg("constants"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("integrate_flyby_trajectories", &integrate_flyby_trajectories, py::arg("flyby"),
        py::arg("spec"), py::arg("constants"), py::arg("step"),
        py::call_guard<py::gil_scoped_release>());
  m.def("relative_phase_difference",
        [](const FlybySpec& f, std::array<double, 3> r1, std::array<double, 3> r2, double V0,
           double t_end) {
          const auto r = relative_phase_difference(f, to_vec3(r1), to_vec3(r2), V0, t_end);
          return py::make_tuple(r.value, r.tail_bound);
        },
        py::arg("flyby"), py::arg("r1"), py::arg("r2"), py::arg("V0"), py::arg("t_end"));
  m.def("single_path_phase",
        [](const FlybySpec& f, std::array<double, 3> r, double V0, double t_end) {
          return single_path_phase(f, to_vec3(r), V0, t_end);
        },
        py::arg("flyby"), py::arg("r"), py::arg("V0"), py::arg("t_end"));
}
