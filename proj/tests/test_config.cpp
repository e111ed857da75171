#include <doctest.h>

#include <string>

#include "gravbath/config.hpp"

using namespace gravbath;

TEST_CASE("minimal config fills documented defaults") {
  const auto cfg = parse_config("");
  CHECK(cfg.preset == UnitsPreset::dimensionless);
  CHECK(cfg.experiment.m_a == 1.0);
  CHECK(cfg.experiment.tau == 1.0);
  CHECK(cfg.experiment.Q == 1);
  CHECK(cfg.bath.r_min == 1.0);
  CHECK(cfg.bath.r_max == 20.0);  // 20 r_min unless stated
  CHECK_FALSE(cfg.bias.has_value());
  CHECK_FALSE(cfg.sweep.has_value());
  CHECK(cfg.oracle.n_samples == 10000);
  CHECK(cfg.oracle.seed == 1);
  CHECK(cfg.output.delimiter == ',');
}

TEST_CASE("values, comments and sections parse") {
  const std::string text = R"(# run card
[units]
preset = si

[experiment]
tau = 2.5e-1   # trailing comment
z0 = 1.0
Q = 100

[bath]
m_b = 2.176434e-8
n0 = 2.3e-14
r_min = 0.5
)";
  const auto cfg = parse_config(text);
  CHECK(cfg.preset == UnitsPreset::si);
  CHECK(cfg.experiment.tau == doctest::Approx(0.25));
  CHECK(cfg.experiment.Q == 100);
  CHECK(cfg.bath.r_min == doctest::Approx(0.5));
  CHECK(cfg.bath.r_max == doctest::Approx(10.0));  // scaled default
  CHECK(cfg.constants().G == doctest::Approx(6.67430e-11));
}

TEST_CASE("diagnostics carry the offending line and field") {
  SUBCASE("unknown key with line number") {
    const std::string text = "[experiment]\ntau = 1\n\nwavelength = 780e-9\n";
    try {
      parse_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 4") != std::string::npos);
      CHECK(msg.find("wavelength") != std::string::npos);
    }
  }
  SUBCASE("invariant violation names the field") {
    try {
      parse_config("[experiment]\ntau = -3\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("tau") != std::string::npos);
    }
  }
  SUBCASE("unknown section") {
    CHECK_THROWS_AS(parse_config("[reactor]\npower = 1\n"), ConfigError);
  }
  SUBCASE("malformed number") {
    CHECK_THROWS_AS(parse_config("[experiment]\ntau = fast\n"), ConfigError);
  }
  SUBCASE("key outside a section") {
    CHECK_THROWS_AS(parse_config("tau = 1\n"), ConfigError);
  }
  SUBCASE("unknown sweep axis") {
    CHECK_THROWS_AS(parse_config("[sweep]\naxis = wavelength\nstart=1\nstop=2\ncount=2\n"),
                    ConfigError);
  }
  SUBCASE("log sweep needs positive bounds") {
    CHECK_THROWS_AS(
        parse_config("[sweep]\naxis = tau\nstart = 0\nstop = 1\ncount = 4\nscale = log\n"),
        ConfigError);
  }
  SUBCASE("ratio sweep needs an impact parameter") {
    CHECK_THROWS_AS(
        parse_config("[sweep]\naxis = d_over_b\nstart = 1\nstop = 10\ncount = 4\n"), ConfigError);
  }
  SUBCASE("bias radius must clear the cutoff") {
    CHECK_THROWS_AS(parse_config("[bath]\nr_min = 2\n[bias]\nn_asym = 1\nR_prime = 1\n"),
                    ConfigError);
  }
}

TEST_CASE("render round-trips through the parser") {
  const std::string text = R"([units]
preset = si
[experiment]
tau = 0.25
sigma = 2e-5
[bath]
m_b = 3.5
n0 = 0.125
v_beta = 0.25
r_min = 2
r_max = 64
[bias]
n_asym = 0.5
R_prime = 32
[sweep]
axis = tau
start = 0.125
stop = 8
count = 5
scale = log
[oracle]
n_samples = 300
seed = 99
[output]
format = tsv
)";
  const auto cfg = parse_config(text);
  const auto again = parse_config(render_config(cfg));
  CHECK(again.preset == cfg.preset);
  CHECK(again.experiment.tau == cfg.experiment.tau);
  CHECK(again.experiment.sigma == cfg.experiment.sigma);
  CHECK(again.bath.m_b == cfg.bath.m_b);
  CHECK(again.bath.r_max == cfg.bath.r_max);
  REQUIRE(again.bias.has_value());
  CHECK(again.bias->R_prime == cfg.bias->R_prime);
  REQUIRE(again.sweep.has_value());
  CHECK(again.sweep->count == cfg.sweep->count);
  CHECK(again.sweep->log_scale);
  CHECK(again.oracle.seed == 99);
  CHECK(again.output.delimiter == '\t');
}
