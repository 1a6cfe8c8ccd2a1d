#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "casiga/nurbs_patch.hpp"

namespace casiga {

/// Structured text format for patches:
///
///   nurbs-patch
///   dim <2|3>
///   degree 2
///   knots <count> <values...>        (one line per parametric direction)
///   control_points <count>
///   <x y [z] w>                      (one line per point, lexicographic,
///                                     first direction fastest)
///
/// Values are written with 17 significant digits so a round trip is exact.
template <int Dim>
void write_patch(std::ostream& os, const NurbsPatch<Dim>& patch) {
  auto g17 = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "nurbs-patch\n";
  os << "dim " << Dim << '\n';
  os << "degree " << kDegree << '\n';
  for (int d = 0; d < Dim; ++d) {
    const auto& knots = patch.knot_vector(d).knots();
    os << "knots " << knots.size();
    for (double k : knots) os << ' ' << g17(k);
    os << '\n';
  }
  os << "control_points " << patch.num_control_points() << '\n';
  for (long a = 0; a < patch.num_control_points(); ++a) {
    for (int i = 0; i < Dim; ++i) os << g17(patch.control_point(a)[i]) << ' ';
    os << g17(patch.weight(a)) << '\n';
  }
}

template <int Dim>
NurbsPatch<Dim> read_patch(std::istream& is) {
  auto expect = [&](const std::string& want) {
    std::string got;
    if (!(is >> got) || got != want) {
      throw DomainError("patch file: expected '" + want + "'");
    }
  };
  expect("nurbs-patch");
  expect("dim");
  int dim = 0;
  is >> dim;
  if (dim != Dim) throw DomainError("patch file: dimension mismatch");
  expect("degree");
  int degree = 0;
  is >> degree;
  std::vector<KnotVector> kvs;
  for (int d = 0; d < Dim; ++d) {
    expect("knots");
    std::size_t count = 0;
    is >> count;
    std::vector<double> knots(count);
    for (auto& k : knots) is >> k;
    kvs.emplace_back(degree, std::move(knots));
  }
  expect("control_points");
  long n = 0;
  is >> n;
  std::vector<typename NurbsPatch<Dim>::Point> ctrl(n);
  std::vector<double> w(n);
  for (long a = 0; a < n; ++a) {
    for (int i = 0; i < Dim; ++i) is >> ctrl[a][i];
    is >> w[a];
  }
  if (!is) throw DomainError("patch file: truncated");
  std::array<KnotVector, Dim> kv_arr = [&] {
    if constexpr (Dim == 2) {
      return std::array<KnotVector, 2>{kvs[0], kvs[1]};
    } else {
      return std::array<KnotVector, 3>{kvs[0], kvs[1], kvs[2]};
    }
  }();
  return NurbsPatch<Dim>(std::move(kv_arr), std::move(ctrl), std::move(w));
}

}  // namespace casiga
