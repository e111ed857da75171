#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gravbath/config.hpp"

namespace gravbath {

/// Delimited-text table with a comment header block. Rows are pre-formatted
/// so that a file written from the same config and seed is byte-identical for
/// any worker count.
struct OutputTable {
  std::vector<std::string> header_comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_table(std::ostream& out, const OutputTable& table, char delimiter);

/// Comment block carried by every output file: tool version, RNG algorithm,
/// and the full resolved config.
std::vector<std::string> output_header(const RunConfig& config, const std::string& kind);

/// One row per sweep point, evaluated in parallel with a deterministic
/// indexed merge. Evaluator failures land in the row's error column and the
/// run continues (unless strict_regime aborts on a regime violation).
OutputTable run_sweep(const RunConfig& config, int workers);

struct ValidationCheck {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Runs the derived-oracle battery (variance of the sampled tidal tensor,
/// ensemble-vs-closed-form populations, impulsive-vs-trajectory phases,
/// quadrature and finite-difference kick checks, Gaussianity diagnostics) in
/// the dimensionless preset. config.oracle controls the sample budget and
/// seed; tolerances widen as 1/sqrt(n) where statistics dominate.
ValidationReport run_validation(const RunConfig& config, int workers);

OutputTable validation_table(const ValidationReport& report, const RunConfig& config);

}  // namespace gravbath
