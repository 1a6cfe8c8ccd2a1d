#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "casiga/benchmarks.hpp"

namespace casiga {

enum class BenchmarkName { kCook, kPlateHole, kBlock3d };

inline std::string to_string(BenchmarkName b) {
  switch (b) {
    case BenchmarkName::kCook:
      return "cook";
    case BenchmarkName::kPlateHole:
      return "plate";
    case BenchmarkName::kBlock3d:
      return "block3d";
  }
  return "?";
}

inline BenchmarkName benchmark_from_string(const std::string& s) {
  if (s == "cook") return BenchmarkName::kCook;
  if (s == "plate") return BenchmarkName::kPlateHole;
  if (s == "block3d") return BenchmarkName::kBlock3d;
  throw ConfigError("unknown benchmark '" + s + "'");
}

/// One experiment: benchmark, technology, quadrature and refinement depth.
/// Cook and plate start from 2x2 elements (level 1) and refine uniformly;
/// the block runs a fixed 16^3 mesh.
struct BenchmarkCaseSpec {
  BenchmarkName benchmark = BenchmarkName::kPlateHole;
  ElementTechnology technology = ElementTechnology::kCAS1;
  int quadrature_points = 3;
  int levels = 8;
};

struct ConvergenceRow {
  int level = 0;
  int elements_per_direction = 0;
  std::optional<double> qoi;          // cook: vertical tip displacement
  std::optional<double> e_l2_u;       // plate: displacement error
  std::optional<double> e_l2_sigma;   // plate: stress error
  std::optional<double> rate_u;       // log2(e_coarse / e_fine)
  std::optional<double> rate_sigma;
  std::optional<double> oscillation;  // block: hydrostatic-stress indicator
};

struct ConvergenceReport {
  BenchmarkCaseSpec spec;
  std::vector<ConvergenceRow> rows;
};

namespace detail {

inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_cell(const std::optional<double>& v) {
  return v ? format_g17(*v) : std::string();
}

}  // namespace detail

inline void write_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "level,n_el_per_direction,qoi,e_l2_u,e_l2_sigma,rate_u,rate_sigma,"
        "oscillation_indicator\n";
  for (const auto& r : report.rows) {
    os << r.level << ',' << r.elements_per_direction << ','
       << detail::format_cell(r.qoi) << ',' << detail::format_cell(r.e_l2_u) << ','
       << detail::format_cell(r.e_l2_sigma) << ',' << detail::format_cell(r.rate_u)
       << ',' << detail::format_cell(r.rate_sigma) << ','
       << detail::format_cell(r.oscillation) << '\n';
  }
}

/// Optional per-level callbacks so callers (field export, acceptance
/// checks) can reuse the solved systems instead of re-solving.
struct ConvergenceObservers {
  std::function<void(int level, const BenchmarkSetup<2>&, const Solution&)> on_level_2d;
  std::function<void(const BenchmarkSetup<3>&, const Solution&)> on_block;
};

/// Run the refinement study for one case. Levels are solved coarse to fine;
/// rates between successive uniform refinements are log2(e_coarse/e_fine).
inline ConvergenceReport run_convergence(const BenchmarkCaseSpec& spec,
                                         const ConvergenceObservers* observers = nullptr) {
  ConvergenceReport report{spec, {}};
  switch (spec.benchmark) {
    case BenchmarkName::kCook: {
      for (int level = 1; level <= spec.levels; ++level) {
        const int n = 1 << level;
        const BenchmarkSetup<2> setup = build_cook_case(n);
        const Solution sol = solve_case(setup, spec.technology, spec.quadrature_points);
        ConvergenceRow row;
        row.level = level;
        row.elements_per_direction = n;
        row.qoi = cook_tip_displacement(setup.mesh, sol.displacement);
        report.rows.push_back(row);
        if (observers && observers->on_level_2d) observers->on_level_2d(level, setup, sol);
      }
      break;
    }
    case BenchmarkName::kPlateHole: {
      for (int level = 1; level <= spec.levels; ++level) {
        const int n = 1 << level;
        const BenchmarkSetup<2> setup = build_plate_case(n);
        const Solution sol = solve_case(setup, spec.technology, spec.quadrature_points);
        const L2Errors e = error_l2(setup.mesh, sol.displacement, setup.material,
                                    spec.technology, spec.quadrature_points);
        ConvergenceRow row;
        row.level = level;
        row.elements_per_direction = n;
        row.e_l2_u = e.displacement;
        row.e_l2_sigma = e.stress;
        if (!report.rows.empty()) {
          row.rate_u = std::log2(*report.rows.back().e_l2_u / e.displacement);
          row.rate_sigma = std::log2(*report.rows.back().e_l2_sigma / e.stress);
        }
        report.rows.push_back(row);
        if (observers && observers->on_level_2d) observers->on_level_2d(level, setup, sol);
      }
      break;
    }
    case BenchmarkName::kBlock3d: {
      const BenchmarkSetup<3> setup = build_block_case();
      const Solution sol = solve_case(setup, spec.technology, spec.quadrature_points);
      const std::vector<double> samples = block_midline_hydrostatic(
          setup.mesh, sol.displacement, setup.material, spec.technology);
      // normalize by the CAS1 reference profile along the same line
      double ref_max;
      if (spec.technology == ElementTechnology::kCAS1) {
        ref_max = max_abs(samples);
      } else {
        const Solution ref =
            solve_case(setup, ElementTechnology::kCAS1, spec.quadrature_points);
        ref_max = max_abs(block_midline_hydrostatic(
            setup.mesh, ref.displacement, setup.material, ElementTechnology::kCAS1));
      }
      ConvergenceRow row;
      row.level = 1;
      row.elements_per_direction = setup.mesh.num_elements(0);
      row.oscillation = oscillation_indicator(samples, ref_max);
      report.rows.push_back(row);
      if (observers && observers->on_block) observers->on_block(setup, sol);
      break;
    }
  }
  return report;
}

}  // namespace casiga
