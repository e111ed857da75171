#pragma once

#include <optional>
#include <string>

#include "gravbath/bath.hpp"
#include "gravbath/collision_cone.hpp"
#include "gravbath/constants.hpp"
#include "gravbath/cosmic_ray.hpp"
#include "gravbath/distant_sector.hpp"
#include "gravbath/experiment.hpp"

namespace gravbath {

enum class UnitsPreset { dimensionless, si };

struct SweepConfig {
  std::string axis;       ///< tau, z0, sigma, k, theta0, v_beta, r_min, n0, m_b, d_over_b
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool log_scale = false;
  // d_over_b sweeps only: fixed impact parameter and crossing side.
  double b = 0.0;
  FlybyGeometry geometry = FlybyGeometry::below_laser;
};

struct OracleConfig {
  std::size_t n_samples = 10000;
  std::uint64_t seed = 1;
};

struct OutputConfig {
  std::string path;  ///< empty = stdout
  char delimiter = ',';
};

/// Fully resolved run configuration; see docs/config grammar in the README.
struct RunConfig {
  UnitsPreset preset = UnitsPreset::dimensionless;
  ExperimentSpec experiment;
  BathSpec bath;
  std::optional<BiasSpec> bias;
  std::optional<CosmicRaySpec> cosmic;
  std::optional<FlybySpec> flyby;
  std::optional<SweepConfig> sweep;
  OracleConfig oracle;
  OutputConfig output;
  bool strict_regime = false;

  PhysicalConstants constants() const {
    return preset == UnitsPreset::si ? PhysicalConstants::si()
                                     : PhysicalConstants::dimensionless();
  }
};

/// Parses the line-oriented `[section]` / `key = value` / `#`-comment format.
/// Unknown sections or keys, malformed numbers, and spec-invariant violations
/// throw ConfigError carrying the offending line number or field.
RunConfig parse_config(const std::string& text);

/// Canonical echo of every resolved value, one `section.key = value` per
/// line; embedded as comments in every output file.
std::string render_config(const RunConfig& config);

}  // namespace gravbath
