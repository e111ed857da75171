#include "gravbath/bath.hpp"

namespace gravbath {

namespace {

struct MaterializeVisitor {
  BathSample& sample;

  void emplace(double x, double y, double z, double vx, double vy, double vz, bool distant) {
    const auto idx = static_cast<std::uint32_t>(sample.particles.size());
    sample.particles.push_back({{x, y, z}, {vx, vy, vz}});
    if (distant) {
      sample.distant.push_back(idx);
    } else {
      sample.collision_cone.push_back(idx);
    }
  }

  void static_block(const double* ux, const double* uy, const double* uz, const double* u2,
                    int take, double r_max, double u_min2) {
    for (int j = 0; j < take; ++j) {
      emplace(ux[j] * r_max, uy[j] * r_max, uz[j] * r_max, 0.0, 0.0, 0.0, u2[j] >= u_min2);
    }
  }

  void particle(double x, double y, double z, double vx, double vy, double vz, bool distant) {
    emplace(x, y, z, vx, vy, vz, distant);
  }
};

}  // namespace

BathSample sample_bath(const BathSpec& spec, double tau, std::uint64_t seed, std::uint64_t index) {
  spec.validate();
  BathSample sample;
  sample.seed = seed;
  sample.index = index;
  sample.particles.reserve(static_cast<std::size_t>(spec.n0 * spec.sampling_volume() * 1.05) + 16);
  MaterializeVisitor visitor{sample};
  detail::visit_bath_sample(spec, tau, seed, index, visitor, &sample.singular_redraws);
  return sample;
}

namespace {

const std::vector<std::uint32_t>* selected_indices(const BathSample& sample,
                                                   bool restrict_to_distant) {
  return restrict_to_distant ? &sample.distant : nullptr;
}

void check_guard(const BathSample& sample, const BathSpec& spec, std::uint32_t idx) {
  const double guard = 1e-9 * spec.r_min;
  if (norm2(sample.particles[idx].position) < guard * guard) {
    throw NumericalError("bath particle " + std::to_string(idx) +
                         " inside the origin singularity guard");
  }
}

}  // namespace

MultipoleCoefficients multipole_at_origin(const BathSample& sample, const BathSpec& spec,
                                          bool restrict_to_distant, bool with_time_derivative) {
  detail::MultipoleAccumulator acc;
  auto add_particle = [&](std::uint32_t idx) {
    check_guard(sample, spec, idx);
    const BathParticle& p = sample.particles[idx];
    acc.add(spec.m_b, p.position.x, p.position.y, p.position.z);
    if (with_time_derivative) {
      acc.add_dot(spec.m_b, p.position.x, p.position.y, p.position.z, p.velocity.x, p.velocity.y,
                  p.velocity.z);
    }
  };
  if (const auto* idxs = selected_indices(sample, restrict_to_distant)) {
    for (std::uint32_t idx : *idxs) add_particle(idx);
  } else {
    for (std::uint32_t idx = 0; idx < sample.particles.size(); ++idx) add_particle(idx);
  }

  MultipoleCoefficients out;
  out.grad = {acc.gx, acc.gy, acc.gz};
  out.hess = {acc.xx, acc.yy, acc.zz, acc.xy, acc.xz, acc.yz};
  if (with_time_derivative) {
    out.hess_dot = SymMat3{acc.dxx, acc.dyy, acc.dzz, acc.dxy, acc.dxz, acc.dyz};
  }
  return out;
}

double time_derivative_hess_zz(const BathSample& sample, const BathSpec& spec,
                               bool restrict_to_distant) {
  detail::MultipoleAccumulator acc;
  auto add_particle = [&](std::uint32_t idx) {
    check_guard(sample, spec, idx);
    const BathParticle& p = sample.particles[idx];
    acc.add_dot(spec.m_b, p.position.x, p.position.y, p.position.z, p.velocity.x, p.velocity.y,
                p.velocity.z);
  };
  if (const auto* idxs = selected_indices(sample, restrict_to_distant)) {
    for (std::uint32_t idx : *idxs) add_particle(idx);
  } else {
    for (std::uint32_t idx = 0; idx < sample.particles.size(); ++idx) add_particle(idx);
  }
  return acc.dzz;
}

}  // namespace gravbath
