#pragma once

#include <array>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "casiga/fields.hpp"

namespace casiga {

/// Solution fields on a structured per-element sample grid. Sample points
/// include the element corners; interior element boundaries are shared, so
/// points per direction = n_el * samples + 1. Lexicographic ordering, first
/// direction fastest. CS and CAS runs sample identical locations, which
/// keeps their field files directly comparable.
template <int Dim>
struct FieldSamples {
  std::array<int, Dim> dims{};
  std::vector<typename Mesh<Dim>::Point> points;
  std::vector<Eigen::Matrix<double, Dim, 1>> displacement;
  std::vector<SymTensor<Dim>> stress;
  std::vector<double> hydrostatic;
};

template <int Dim>
FieldSamples<Dim> sample_fields(const Mesh<Dim>& mesh, const Eigen::VectorXd& u,
                                const Material& mat, ElementTechnology tech,
                                int samples_per_element) {
  if (samples_per_element < 1) throw DomainError("need at least one sample per element");
  FieldEvaluator<Dim> fields(mesh, u, mat, tech);
  FieldSamples<Dim> out;
  long total = 1;
  for (int d = 0; d < Dim; ++d) {
    out.dims[d] = mesh.num_elements(d) * samples_per_element + 1;
    total *= out.dims[d];
  }
  out.points.resize(total);
  out.displacement.resize(total);
  out.stress.resize(total);
  out.hydrostatic.resize(total);
  for (long p = 0; p < total; ++p) {
    std::array<int, Dim> g{};
    long rest = p;
    for (int d = 0; d < Dim; ++d) {
      g[d] = static_cast<int>(rest % out.dims[d]);
      rest /= out.dims[d];
    }
    std::array<int, Dim> em{};
    std::array<double, Dim> parent{};
    for (int d = 0; d < Dim; ++d) {
      em[d] = std::min(g[d] / samples_per_element, mesh.num_elements(d) - 1);
      const int s = g[d] - em[d] * samples_per_element;
      parent[d] = -1.0 + 2.0 * s / samples_per_element;
    }
    const auto sample = fields.at_parent(mesh.element_id(em), parent);
    out.points[p] = sample.x;
    out.displacement[p] = sample.displacement;
    out.stress[p] = sample.stress;
    out.hydrostatic[p] = fields.hydrostatic_stress(sample);
  }
  return out;
}

namespace detail {

inline void print_g17(std::ostream& os, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

template <int Dim>
void print_point3(std::ostream& os, const Eigen::Matrix<double, Dim, 1>& p) {
  for (int d = 0; d < 3; ++d) {
    if (d) os << ' ';
    print_g17(os, d < Dim ? p[d] : 0.0);
  }
  os << '\n';
}

}  // namespace detail

inline const char* voigt_name(int dim, int v) {
  static const char* names2[] = {"stress_xx", "stress_yy", "stress_xy"};
  static const char* names3[] = {"stress_xx", "stress_yy", "stress_zz",
                                 "stress_xy", "stress_yz", "stress_xz"};
  return dim == 2 ? names2[v] : names3[v];
}

/// Legacy VTK structured-grid writer (ASCII). Point data: displacement
/// vector, one scalar array per Voigt stress component, hydrostatic stress.
template <int Dim>
void write_vtk_structured_grid(std::ostream& os, const FieldSamples<Dim>& f,
                               const std::string& title) {
  long total = 1;
  for (int d = 0; d < Dim; ++d) total *= f.dims[d];
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
  os << "DATASET STRUCTURED_GRID\n";
  os << "DIMENSIONS " << f.dims[0] << ' ' << f.dims[1] << ' '
     << (Dim == 3 ? f.dims[Dim - 1] : 1) << '\n';
  os << "POINTS " << total << " double\n";
  for (long p = 0; p < total; ++p) detail::print_point3<Dim>(os, f.points[p]);
  os << "POINT_DATA " << total << '\n';
  os << "VECTORS displacement double\n";
  for (long p = 0; p < total; ++p) detail::print_point3<Dim>(os, f.displacement[p]);
  for (int v = 0; v < SymTensor<Dim>::kComponents; ++v) {
    os << "SCALARS " << voigt_name(Dim, v) << " double 1\nLOOKUP_TABLE default\n";
    for (long p = 0; p < total; ++p) {
      detail::print_g17(os, f.stress[p].component(v));
      os << '\n';
    }
  }
  os << "SCALARS hydrostatic_stress double 1\nLOOKUP_TABLE default\n";
  for (long p = 0; p < total; ++p) {
    detail::print_g17(os, f.hydrostatic[p]);
    os << '\n';
  }
}

}  // namespace casiga
