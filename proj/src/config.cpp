#include "gravbath/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "gravbath/format.hpp"

namespace gravbath {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) fail(line, "trailing characters in number '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "not a number: '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const std::int64_t x = std::stoll(v, &used);
    if (used != v.size()) fail(line, "trailing characters in integer '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "not an integer: '" + v + "'");
  }
}

const std::set<std::string> kSweepAxes = {"tau", "z0", "sigma", "k",  "theta0",
                                          "v_beta", "r_min", "n0", "m_b", "d_over_b"};

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool r_max_set = false;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> known = {"units",  "experiment", "bath",  "bias",
                                                  "cosmic", "flyby",      "sweep", "oracle",
                                                  "output"};
      if (!known.count(section)) fail(line_no, "unknown section [" + section + "]");
      if (section == "bias") cfg.bias.emplace();
      if (section == "cosmic") cfg.cosmic.emplace();
      if (section == "flyby") cfg.flyby.emplace();
      if (section == "sweep") cfg.sweep.emplace();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line_no, "expected 'key = value'");
    if (section.empty()) fail(line_no, "key '" + key + "' outside any [section]");

    auto unknown_key = [&]() { fail(line_no, "unknown key '" + key + "' in [" + section + "]"); };

    if (section == "units") {
      if (key == "preset") {
        if (value == "si") {
          cfg.preset = UnitsPreset::si;
        } else if (value == "dimensionless") {
          cfg.preset = UnitsPreset::dimensionless;
        } else {
          fail(line_no, "units.preset must be 'si' or 'dimensionless'");
        }
      } else {
        unknown_key();
      }
    } else if (section == "experiment") {
      auto& e = cfg.experiment;
      if (key == "m_a") e.m_a = parse_double(value, line_no);
      else if (key == "k") e.k = parse_double(value, line_no);
      else if (key == "tau") e.tau = parse_double(value, line_no);
      else if (key == "theta0") e.theta0 = parse_double(value, line_no);
      else if (key == "z0") e.z0 = parse_double(value, line_no);
      else if (key == "sigma") e.sigma = parse_double(value, line_no);
      else if (key == "Q") e.Q = parse_int(value, line_no);
      else if (key == "N_atoms") e.N_atoms = parse_int(value, line_no);
      else unknown_key();
    } else if (section == "bath") {
      auto& b = cfg.bath;
      if (key == "m_b") b.m_b = parse_double(value, line_no);
      else if (key == "n0") b.n0 = parse_double(value, line_no);
      else if (key == "v_beta") b.v_beta = parse_double(value, line_no);
      else if (key == "r_min") b.r_min = parse_double(value, line_no);
      else if (key == "r_max") { b.r_max = parse_double(value, line_no); r_max_set = true; }
      else unknown_key();
    } else if (section == "bias") {
      if (key == "n_asym") cfg.bias->n_asym = parse_double(value, line_no);
      else if (key == "R_prime") cfg.bias->R_prime = parse_double(value, line_no);
      else unknown_key();
    } else if (section == "cosmic") {
      auto& c = *cfg.cosmic;
      if (key == "q") c.q = parse_double(value, line_no);
      else if (key == "v") c.v = parse_double(value, line_no);
      else if (key == "b") c.b = parse_double(value, line_no);
      else if (key == "alpha_a") c.alpha_a = parse_double(value, line_no);
      else if (key == "m_a") c.m_a = parse_double(value, line_no);
      else if (key == "E_applied") c.E_applied = parse_double(value, line_no);
      else if (key == "n_cr") c.n_cr = parse_double(value, line_no);
      else unknown_key();
    } else if (section == "flyby") {
      auto& f = *cfg.flyby;
      if (key == "rx") f.r_b.x = parse_double(value, line_no);
      else if (key == "ry") f.r_b.y = parse_double(value, line_no);
      else if (key == "rz") f.r_b.z = parse_double(value, line_no);
      else if (key == "vx") f.v_b.x = parse_double(value, line_no);
      else if (key == "vy") f.v_b.y = parse_double(value, line_no);
      else if (key == "vz") f.v_b.z = parse_double(value, line_no);
      else if (key == "m_b") f.m_b = parse_double(value, line_no);
      else unknown_key();
    } else if (section == "sweep") {
      auto& s = *cfg.sweep;
      if (key == "axis") {
        if (!kSweepAxes.count(value)) fail(line_no, "unknown sweep axis '" + value + "'");
        s.axis = value;
      } else if (key == "start") s.start = parse_double(value, line_no);
      else if (key == "stop") s.stop = parse_double(value, line_no);
      else if (key == "count") s.count = static_cast<int>(parse_int(value, line_no));
      else if (key == "scale") {
        if (value == "log") s.log_scale = true;
        else if (value == "linear") s.log_scale = false;
        else fail(line_no, "sweep.scale must be 'log' or 'linear'");
      } else if (key == "b") s.b = parse_double(value, line_no);
      else if (key == "geometry") {
        if (value == "below") s.geometry = FlybyGeometry::below_laser;
        else if (value == "above") s.geometry = FlybyGeometry::above_laser;
        else fail(line_no, "sweep.geometry must be 'below' or 'above'");
      } else unknown_key();
    } else if (section == "oracle") {
      if (key == "n_samples") {
        const auto n = parse_int(value, line_no);
        if (n < 1) fail(line_no, "oracle.n_samples must be >= 1");
        cfg.oracle.n_samples = static_cast<std::size_t>(n);
      } else if (key == "seed") {
        cfg.oracle.seed = static_cast<std::uint64_t>(parse_int(value, line_no));
      } else unknown_key();
    } else if (section == "output") {
      if (key == "path") cfg.output.path = value;
      else if (key == "format") {
        if (value == "csv") cfg.output.delimiter = ',';
        else if (value == "tsv") cfg.output.delimiter = '\t';
        else fail(line_no, "output.format must be 'csv' or 'tsv'");
      } else unknown_key();
    }
  }

  if (!r_max_set) cfg.bath.r_max = 20.0 * cfg.bath.r_min;

  cfg.experiment.validate();
  cfg.bath.validate();
  if (cfg.bias) cfg.bias->validate(cfg.bath);
  if (cfg.cosmic) cfg.cosmic->validate();
  if (cfg.flyby && !(norm2(cfg.flyby->v_b) > 0.0)) {
    throw ConfigError("flyby velocity must be nonzero");
  }
  if (cfg.sweep) {
    const auto& s = *cfg.sweep;
    if (s.axis.empty()) throw ConfigError("sweep.axis is required in [sweep]");
    if (s.count < 1) throw ConfigError("sweep.count must be >= 1");
    if (s.log_scale && (!(s.start > 0.0) || !(s.stop > 0.0))) {
      throw ConfigError("log-scale sweep requires positive start/stop");
    }
    if (s.axis == "d_over_b" && !(s.b > 0.0)) {
      throw ConfigError("d_over_b sweep requires sweep.b > 0");
    }
  }
  return cfg;
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[units]\npreset = " << (c.preset == UnitsPreset::si ? "si" : "dimensionless") << '\n';
  const auto& e = c.experiment;
  out << "[experiment]\n"
      << "m_a = " << format_full(e.m_a) << '\n'
      << "k = " << format_full(e.k) << '\n'
      << "tau = " << format_full(e.tau) << '\n'
      << "theta0 = " << format_full(e.theta0) << '\n'
      << "z0 = " << format_full(e.z0) << '\n'
      << "sigma = " << format_full(e.sigma) << '\n'
      << "Q = " << e.Q << '\n'
      << "N_atoms = " << e.N_atoms << '\n';
  const auto& b = c.bath;
  out << "[bath]\n"
      << "m_b = " << format_full(b.m_b) << '\n'
      << "n0 = " << format_full(b.n0) << '\n'
      << "v_beta = " << format_full(b.v_beta) << '\n'
      << "r_min = " << format_full(b.r_min) << '\n'
      << "r_max = " << format_full(b.r_max) << '\n';
  if (c.bias) {
    out << "[bias]\n"
        << "n_asym = " << format_full(c.bias->n_asym) << '\n'
        << "R_prime = " << format_full(c.bias->R_prime) << '\n';
  }
  if (c.cosmic) {
    const auto& r = *c.cosmic;
    out << "[cosmic]\n"
        << "q = " << format_full(r.q) << '\n'
        << "v = " << format_full(r.v) << '\n'
        << "b = " << format_full(r.b) << '\n'
        << "alpha_a = " << format_full(r.alpha_a) << '\n'
        << "m_a = " << format_full(r.m_a) << '\n'
        << "E_applied = " << format_full(r.E_applied) << '\n'
        << "n_cr = " << format_full(r.n_cr) << '\n';
  }
  if (c.flyby) {
    const auto& f = *c.flyby;
    out << "[flyby]\n"
        << "rx = " << format_full(f.r_b.x) << '\n'
        << "ry = " << format_full(f.r_b.y) << '\n'
        << "rz = " << format_full(f.r_b.z) << '\n'
        << "vx = " << format_full(f.v_b.x) << '\n'
        << "vy = " << format_full(f.v_b.y) << '\n'
        << "vz = " << format_full(f.v_b.z) << '\n'
        << "m_b = " << format_full(f.m_b) << '\n';
  }
  if (c.sweep) {
    const auto& s = *c.sweep;
    out << "[sweep]\n"
        << "axis = " << s.axis << '\n'
        << "start = " << format_full(s.start) << '\n'
        << "stop = " << format_full(s.stop) << '\n'
        << "count = " << s.count << '\n'
        << "scale = " << (s.log_scale ? "log" : "linear") << '\n';
    if (s.axis == "d_over_b") {
      out << "b = " << format_full(s.b) << '\n'
          << "geometry = " << (s.geometry == FlybyGeometry::below_laser ? "below" : "above")
          << '\n';
    }
  }
  out << "[oracle]\n"
      << "n_samples = " << c.oracle.n_samples << '\n'
      << "seed = " << c.oracle.seed << '\n';
  out << "[output]\n"
      << "format = " << (c.output.delimiter == '\t' ? "tsv" : "csv") << '\n';
  if (!c.output.path.empty()) out << "path = " << c.output.path << '\n';
  return out.str();
}

}  // namespace gravbath
