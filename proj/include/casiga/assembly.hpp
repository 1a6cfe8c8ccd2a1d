#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "casiga/element_stiffness.hpp"
#include "casiga/mechanics.hpp"
#include "casiga/mesh.hpp"

namespace casiga {

/// Homogeneous Dirichlet constraint: (control point, displacement component)
/// prescribed to zero.
struct DirichletBc {
  long control_point;
  int component;
};

/// Boundary face id of a patch: 2 * direction + side (0 = min, 1 = max).
inline constexpr int face_id(int direction, int side) { return 2 * direction + side; }

template <int Dim>
struct Loads {
  using Point = typename Mesh<Dim>::Point;
  using VectorFn = std::function<Eigen::Matrix<double, Dim, 1>(const Point&)>;

  VectorFn body;  // force per unit volume; may be empty
  struct Traction {
    int face;
    VectorFn value;  // force per unit area on the face
  };
  std::vector<Traction> tractions;
};

/// Assembled Galerkin system over (control point x component) unknowns,
/// dof = Dim * control_point + component. Dirichlet constraints are stored
/// with the system and applied separately so structural invariants of the
/// unconstrained operator (rigid-body null space, symmetry) stay testable.
template <int Dim>
struct SparseSystem {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd load;
  std::vector<DirichletBc> dirichlet;
  long num_control_points = 0;
  bool constrained = false;

  std::vector<int> dirichlet_dofs() const {
    std::vector<int> dofs;
    dofs.reserve(dirichlet.size());
    for (const auto& bc : dirichlet) {
      dofs.push_back(static_cast<int>(Dim * bc.control_point + bc.component));
    }
    std::sort(dofs.begin(), dofs.end());
    dofs.erase(std::unique(dofs.begin(), dofs.end()), dofs.end());
    return dofs;
  }
};

namespace detail {

/// Sparsity pattern from connectivity: dofs of control points sharing an
/// element interact. The pattern is a function of the mesh only, so all
/// element technologies produce identical index sets.
template <int Dim>
Eigen::SparseMatrix<double> zero_pattern(const Mesh<Dim>& mesh) {
  const long n = mesh.patch().num_control_points();
  std::vector<std::vector<long>> adj(n);
  for (long e = 0; e < mesh.num_elements(); ++e) {
    const auto conn = mesh.connectivity(e);
    for (long a : conn) {
      for (long b : conn) adj[a].push_back(b);
    }
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (long a = 0; a < n; ++a) {
    auto& row = adj[a];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (long b : row) {
      for (int i = 0; i < Dim; ++i) {
        for (int j = 0; j < Dim; ++j) {
          trips.emplace_back(static_cast<int>(Dim * a + i), static_cast<int>(Dim * b + j),
                             0.0);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> K(n * Dim, n * Dim);
  K.setFromTriplets(trips.begin(), trips.end());
  K.makeCompressed();
  return K;
}

/// Add into an existing compressed pattern entry (binary search per column).
inline void add_at(Eigen::SparseMatrix<double>& K, int row, int col, double value) {
  const int* outer = K.outerIndexPtr();
  const int* inner = K.innerIndexPtr();
  double* vals = K.valuePtr();
  const int* begin = inner + outer[col];
  const int* end = inner + outer[col + 1];
  const int* it = std::lower_bound(begin, end, row);
  vals[it - inner] += value;
}

}  // namespace detail

/// Boundary traction contributions, int_face N_a h_i dGamma, using the
/// surface Jacobian (curve length in 2D, area in 3D) and the same
/// points-per-direction as the volume rule. Adds into `load`.
template <int Dim>
void boundary_traction_load(const Mesh<Dim>& mesh, int face,
                            const typename Loads<Dim>::VectorFn& traction,
                            int points_per_direction, Eigen::VectorXd& load) {
  if (face < 0 || face >= 2 * Dim) throw DomainError("invalid boundary face id");
  const int fdir = face / 2;
  const int side = face % 2;
  const KnotVector& fkv = mesh.patch().knot_vector(fdir);
  const double fixed_xi = side == 0 ? fkv.front() : fkv.back();

  // running directions on the face
  std::array<int, Dim - 1> run{};
  for (int d = 0, r = 0; d < Dim; ++d) {
    if (d != fdir) run[r++] = d;
  }
  const QuadratureRule<Dim - 1> rule(points_per_direction);

  // iterate boundary elements: multi-index with fixed component on `fdir`
  std::array<int, Dim> em{};
  em[fdir] = side == 0 ? 0 : mesh.num_elements(fdir) - 1;
  long face_elements = 1;
  for (int r = 0; r < Dim - 1; ++r) face_elements *= mesh.num_elements(run[r]);
  for (long fe = 0; fe < face_elements; ++fe) {
    long rest = fe;
    for (int r = 0; r < Dim - 1; ++r) {
      em[run[r]] = static_cast<int>(rest % mesh.num_elements(run[r]));
      rest /= mesh.num_elements(run[r]);
    }
    const long e = mesh.element_id(em);
    const ElementBounds<Dim> bounds = mesh.element_bounds(e);
    for (int q = 0; q < rule.size(); ++q) {
      std::array<double, Dim> parent{};
      parent[fdir] = side == 0 ? -1.0 : 1.0;
      double scale = rule.weight(q);
      for (int r = 0; r < Dim - 1; ++r) {
        parent[run[r]] = rule.point(q)[r];
        scale *= (bounds.hi[run[r]] - bounds.lo[run[r]]) / 2.0;
      }
      const auto eval = mesh.evaluate_parent(e, parent);
      double measure;
      if constexpr (Dim == 2) {
        measure = eval.jacobian.col(run[0]).norm();
      } else {
        measure = eval.jacobian.col(run[0]).cross(eval.jacobian.col(run[1])).norm();
      }
      const auto h = traction(eval.x);
      for (int a = 0; a < Mesh<Dim>::kFuncs; ++a) {
        for (int i = 0; i < Dim; ++i) {
          load[Dim * eval.indices[a] + i] += scale * measure * eval.value[a] * h[i];
        }
      }
    }
  }
}

/// Assemble the global stiffness matrix and load vector. Element stiffness
/// computation is independent per element; the sparse accumulator is the
/// only shared state and insertion is serialized, which also keeps outputs
/// deterministic.
template <int Dim>
SparseSystem<Dim> assemble(const Mesh<Dim>& mesh, const Material& mat,
                           ElementTechnology tech, const QuadratureRule<Dim>& rule,
                           const Loads<Dim>& loads, std::vector<DirichletBc> dirichlet) {
  SparseSystem<Dim> sys;
  sys.num_control_points = mesh.patch().num_control_points();
  sys.dirichlet = std::move(dirichlet);
  const long ndof = sys.num_control_points * Dim;
  sys.stiffness = detail::zero_pattern(mesh);
  sys.load = Eigen::VectorXd::Zero(ndof);

  std::optional<ElementCornerData<Dim>> corners_storage;
  if (tech != ElementTechnology::kCS) corners_storage.emplace(mesh);
  const ElementCornerData<Dim>* corners =
      corners_storage ? &*corners_storage : nullptr;

  for (long e = 0; e < mesh.num_elements(); ++e) {
    const Eigen::MatrixXd ke = element_stiffness(mesh, e, mat, rule, tech, corners);
    const auto conn = mesh.connectivity(e);
    std::array<int, Mesh<Dim>::kFuncs * Dim> dofs{};
    for (int a = 0; a < Mesh<Dim>::kFuncs; ++a) {
      for (int i = 0; i < Dim; ++i) dofs[a * Dim + i] = static_cast<int>(Dim * conn[a] + i);
    }
    for (int r = 0; r < ke.rows(); ++r) {
      for (int c = 0; c < ke.cols(); ++c) {
        detail::add_at(sys.stiffness, dofs[r], dofs[c], ke(r, c));
      }
    }
    if (loads.body) {
      const ElementBounds<Dim> bounds = mesh.element_bounds(e);
      const double pscale = parametric_scale(bounds);
      for (int q = 0; q < rule.size(); ++q) {
        const auto eval = mesh.evaluate_parent(e, rule.point(q));
        const double w = rule.weight(q) * pscale * eval.det_jacobian;
        const auto f = loads.body(eval.x);
        for (int a = 0; a < Mesh<Dim>::kFuncs; ++a) {
          for (int i = 0; i < Dim; ++i) {
            sys.load[Dim * eval.indices[a] + i] += w * eval.value[a] * f[i];
          }
        }
      }
    }
  }
  for (const auto& t : loads.tractions) {
    boundary_traction_load(mesh, t.face, t.value, rule.points_per_direction(), sys.load);
  }
  return sys;
}

/// Symmetric elimination of the homogeneous Dirichlet dofs: their rows and
/// columns are zeroed in place (the sparsity pattern is preserved) and the
/// diagonal set to one. A pure-Neumann system is singular and refused.
template <int Dim>
void apply_constraints(SparseSystem<Dim>& sys) {
  if (sys.constrained) return;
  if (sys.dirichlet.empty()) {
    throw DomainError("pure-Neumann system is singular: no Dirichlet constraints");
  }
  const std::vector<int> dofs = sys.dirichlet_dofs();
  std::vector<char> is_fixed(sys.stiffness.rows(), 0);
  for (int d : dofs) is_fixed[d] = 1;
  for (int col = 0; col < sys.stiffness.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.stiffness, col); it; ++it) {
      if (is_fixed[it.row()] || is_fixed[col]) {
        it.valueRef() = (it.row() == col) ? 1.0 : 0.0;
      }
    }
  }
  for (int d : dofs) sys.load[d] = 0.0;
  sys.constrained = true;
}

}  // namespace casiga
