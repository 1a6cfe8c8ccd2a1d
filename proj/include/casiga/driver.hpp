#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>

#include "casiga/convergence.hpp"
#include "casiga/field_export.hpp"
#include "casiga/patch_io.hpp"
#include "casiga/run_config.hpp"

namespace casiga {

/// Execute one configured run: solve every refinement level, write the
/// convergence table, the resolved config, and the finest-level field
/// samples. All reductions are serial, so outputs are byte-identical for a
/// fixed configuration.
inline int run(const RunConfig& cfg, std::ostream& log = std::cout) {
  cfg.validate();
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);

  const BenchmarkCaseSpec spec = cfg.case_spec();
  const std::string title = cfg.benchmark + " " + cfg.technology + " fields";

  ConvergenceObservers observers;
  observers.on_level_2d = [&](int level, const BenchmarkSetup<2>& setup,
                              const Solution& sol) {
    if (level != spec.levels) return;
    const FieldSamples<2> samples =
        sample_fields(setup.mesh, sol.displacement, setup.material, spec.technology,
                      cfg.samples_per_element);
    std::ofstream os(dir / "fields.vtk");
    write_vtk_structured_grid(os, samples, title);
  };
  observers.on_block = [&](const BenchmarkSetup<3>& setup, const Solution& sol) {
    const FieldSamples<3> samples =
        sample_fields(setup.mesh, sol.displacement, setup.material, spec.technology,
                      cfg.samples_per_element);
    std::ofstream os(dir / "fields.vtk");
    write_vtk_structured_grid(os, samples, title);
  };

  const ConvergenceReport report = run_convergence(spec, &observers);
  {
    std::ofstream os(dir / "convergence.csv");
    write_csv(os, report);
  }
  {
    std::ofstream os(dir / "config.txt");
    os << cfg.to_text();
  }

  const ConvergenceRow& last = report.rows.back();
  log << cfg.benchmark << ' ' << cfg.technology << " quad=" << cfg.quadrature_points;
  if (last.qoi) log << " tip_displacement=" << detail::format_g17(*last.qoi);
  if (last.e_l2_u) log << " e_l2_u=" << detail::format_g17(*last.e_l2_u);
  if (last.e_l2_sigma) log << " e_l2_sigma=" << detail::format_g17(*last.e_l2_sigma);
  if (last.oscillation) {
    log << " oscillation_indicator=" << detail::format_g17(*last.oscillation);
  }
  log << '\n';
  return 0;
}

/// Write the (refined) benchmark patch in the structured text format.
inline void export_benchmark_patch(const std::string& benchmark, int level,
                                   std::ostream& os) {
  const BenchmarkName name = benchmark_from_string(benchmark);
  const int n = 1 << level;
  switch (name) {
    case BenchmarkName::kCook:
      write_patch(os, build_cook_case(n).mesh.patch());
      break;
    case BenchmarkName::kPlateHole:
      write_patch(os, build_plate_case(n).mesh.patch());
      break;
    case BenchmarkName::kBlock3d:
      write_patch(os, build_block_case().mesh.patch());
      break;
  }
}

}  // namespace casiga
