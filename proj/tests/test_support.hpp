#pragma once

// Shared helpers for the unit and acceptance suites: independent quadrature
// tables, sparse submatrix extraction, and the linear patch test driver.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <random>
#include <vector>

#include "casiga/assembly.hpp"
#include "casiga/mesh.hpp"

namespace test_support {

// 6-point Gauss-Legendre rule on [-1,1], used only by test oracles.
inline const std::vector<double>& gauss6_points() {
  static const std::vector<double> x{-0.9324695142031521, -0.6612093864662645,
                                     -0.2386191860831969, 0.2386191860831969,
                                     0.6612093864662645,  0.9324695142031521};
  return x;
}
inline const std::vector<double>& gauss6_weights() {
  static const std::vector<double> w{0.1713244923791704, 0.3607615730481386,
                                     0.4679139345726910, 0.4679139345726910,
                                     0.3607615730481386, 0.1713244923791704};
  return w;
}

// 10-point Gauss-Legendre rule on [-1,1], for over-integration oracles.
inline const std::vector<double>& gauss10_points() {
  static const std::vector<double> x{
      -0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
      -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
      0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
      0.9739065285171717};
  return x;
}
inline const std::vector<double>& gauss10_weights() {
  static const std::vector<double> w{
      0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
      0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
      0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
      0.0666713443086881};
  return w;
}

inline Eigen::SparseMatrix<double> submatrix(const Eigen::SparseMatrix<double>& K,
                                             const std::vector<int>& rows,
                                             const std::vector<int>& cols) {
  std::vector<int> rmap(K.rows(), -1), cmap(K.cols(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) rmap[rows[i]] = static_cast<int>(i);
  for (std::size_t j = 0; j < cols.size(); ++j) cmap[cols[j]] = static_cast<int>(j);
  std::vector<Eigen::Triplet<double>> trips;
  for (int c = 0; c < K.outerSize(); ++c) {
    if (cmap[c] < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, c); it; ++it) {
      if (rmap[it.row()] >= 0 && it.value() != 0.0) {
        trips.emplace_back(rmap[it.row()], cmap[c], it.value());
      }
    }
  }
  Eigen::SparseMatrix<double> S(rows.size(), cols.size());
  S.setFromTriplets(trips.begin(), trips.end());
  return S;
}

// Linear patch test: prescribe u = A x + b through the boundary control
// points, solve the interior equations of the unconstrained operator and
// report the max control-variable error against the exact affine data.
template <int Dim>
double linear_patch_test_error(const casiga::Mesh<Dim>& mesh, const casiga::Material& mat,
                               casiga::ElementTechnology tech, int points_per_direction,
                               unsigned seed) {
  using namespace casiga;
  const QuadratureRule<Dim> rule(points_per_direction);
  SparseSystem<Dim> sys = assemble(mesh, mat, tech, rule, Loads<Dim>{}, {});

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::Matrix<double, Dim, Dim> A;
  Eigen::Matrix<double, Dim, 1> b;
  for (int i = 0; i < Dim; ++i) {
    b[i] = dist(rng);
    for (int j = 0; j < Dim; ++j) A(i, j) = dist(rng);
  }

  const auto& patch = mesh.patch();
  const long n = patch.num_control_points();
  Eigen::VectorXd exact(n * Dim);
  std::vector<int> interior, boundary;
  for (long a = 0; a < n; ++a) {
    exact.segment<Dim>(Dim * a) = A * patch.control_point(a) + b;
    long rest = a;
    bool on_boundary = false;
    for (int d = 0; d < Dim; ++d) {
      const int nd = patch.num_basis(d);
      const int id = static_cast<int>(rest % nd);
      rest /= nd;
      if (id == 0 || id == nd - 1) on_boundary = true;
    }
    for (int i = 0; i < Dim; ++i) {
      (on_boundary ? boundary : interior).push_back(static_cast<int>(Dim * a + i));
    }
  }

  const Eigen::SparseMatrix<double> Kii = submatrix(sys.stiffness, interior, interior);
  const Eigen::SparseMatrix<double> Kib = submatrix(sys.stiffness, interior, boundary);
  Eigen::VectorXd ub(boundary.size());
  for (std::size_t k = 0; k < boundary.size(); ++k) ub[k] = exact[boundary[k]];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Kii);
  const Eigen::VectorXd ui = ldlt.solve(-(Kib * ub));

  double max_err = 0.0;
  for (std::size_t k = 0; k < interior.size(); ++k) {
    max_err = std::max(max_err, std::abs(ui[k] - exact[interior[k]]));
  }
  return max_err;
}

}  // namespace test_support
