#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "casiga/convergence.hpp"
#include "casiga/errors.hpp"

namespace casiga {

/// Run configuration for the command-line driver. The text form is one
/// `key=value` per line and round-trips losslessly.
struct RunConfig {
  std::string benchmark = "plate";    // cook | plate | block3d
  std::string technology = "cas1";    // cs | cas1 | cas2
  int quadrature_points = 3;          // 2 | 3
  int levels = 8;                     // refinement levels (block3d: fixed mesh)
  std::string output_dir = "out";
  int samples_per_element = 4;        // field-export density per direction

  void validate() const {
    benchmark_from_string(benchmark);
    technology_from_string(technology);
    if (quadrature_points != 2 && quadrature_points != 3) {
      throw ConfigError("quadrature points per direction must be 2 or 3");
    }
    if (levels < 1 || levels > 8) throw ConfigError("levels must be in 1..8");
    if (samples_per_element < 1 || samples_per_element > 64) {
      throw ConfigError("samples per element must be in 1..64");
    }
    if (output_dir.empty()) throw ConfigError("output directory must be set");
  }

  BenchmarkCaseSpec case_spec() const {
    BenchmarkCaseSpec spec;
    spec.benchmark = benchmark_from_string(benchmark);
    spec.technology = technology_from_string(technology);
    spec.quadrature_points = quadrature_points;
    spec.levels = levels;
    return spec;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "benchmark=" << benchmark << '\n';
    os << "technology=" << technology << '\n';
    os << "quad=" << quadrature_points << '\n';
    os << "levels=" << levels << '\n';
    os << "output=" << output_dir << '\n';
    os << "samples=" << samples_per_element << '\n';
    return os.str();
  }

  static RunConfig from_text(std::istream& is) {
    RunConfig cfg;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("config line missing '=': " + line);
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      if (key == "benchmark") {
        cfg.benchmark = value;
      } else if (key == "technology") {
        cfg.technology = value;
      } else if (key == "quad") {
        cfg.quadrature_points = std::stoi(value);
      } else if (key == "levels") {
        cfg.levels = std::stoi(value);
      } else if (key == "output") {
        cfg.output_dir = value;
      } else if (key == "samples") {
        cfg.samples_per_element = std::stoi(value);
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
    return cfg;
  }

  static RunConfig from_text(const std::string& text) {
    std::istringstream is(text);
    return from_text(is);
  }
};

}  // namespace casiga
