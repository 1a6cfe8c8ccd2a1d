#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "casiga/assembly.hpp"
#include "casiga/exact_plate.hpp"
#include "casiga/fields.hpp"
#include "casiga/mesh.hpp"
#include "casiga/solver.hpp"

namespace casiga {

/// Plate benchmark constants: remote tension fixed by the factor-3 stress
/// concentration (peak sigma_xx = 30), hole radius 1, outer radius 4.
inline constexpr double kPlateTension = 10.0;
inline constexpr double kPlateHoleRadius = 1.0;
inline constexpr double kPlateOuterRadius = 4.0;

/// Cook's membrane: tapered panel (0,0)-(48,44)-(48,60)-(0,44), clamped at
/// x = 0, tangential traction q = 6.25 on the loaded edge of height 16.
inline constexpr double kCookTraction = 6.25;
inline constexpr double kCookReferenceTip = 8.075;

template <int Dim>
struct BenchmarkSetup {
  Mesh<Dim> mesh;
  Material material;
  Loads<Dim> loads;
  std::vector<DirichletBc> dirichlet;
};

namespace detail {

inline int levels_to_elements(int level) { return 1 << level; }

template <int Dim>
NurbsPatch<Dim> refined(NurbsPatch<Dim> patch, int n_elements_per_direction) {
  int n = 1;
  while (n < n_elements_per_direction) {
    patch = patch.refine_uniform();
    n *= 2;
  }
  if (n != n_elements_per_direction) {
    throw DomainError("element count per direction must be a power of two");
  }
  return patch;
}

}  // namespace detail

/// Single-element biquadratic patch of the Cook membrane geometry (bilinear
/// quadrilateral, degree-elevated; all weights one).
inline NurbsPatch<2> cook_base_patch() {
  using Point = NurbsPatch<2>::Point;
  const Point c00(0.0, 0.0), c10(48.0, 44.0), c01(0.0, 44.0), c11(48.0, 60.0);
  auto bilinear = [&](double u, double v) -> Point {
    return (1 - u) * (1 - v) * c00 + u * (1 - v) * c10 + (1 - u) * v * c01 +
           u * v * c11;
  };
  std::vector<Point> ctrl;
  const std::array<double, 3> g{0.0, 0.5, 1.0};
  for (double v : g) {
    for (double u : g) ctrl.push_back(bilinear(u, v));
  }
  KnotVector kv(kDegree, {0, 0, 0, 1, 1, 1});
  return NurbsPatch<2>({kv, kv}, std::move(ctrl), std::vector<double>(9, 1.0));
}

/// Exact quarter annulus, inner radius 1 and outer radius 4. Direction 0 is
/// radial and direction 1 angular (theta in [0, pi/2] from the x axis) so
/// that det J > 0.
inline NurbsPatch<2> plate_base_patch() {
  using Point = NurbsPatch<2>::Point;
  const std::array<Point, 3> arc{Point(1.0, 0.0), Point(1.0, 1.0), Point(0.0, 1.0)};
  const std::array<double, 3> arc_w{1.0, std::sqrt(2.0) / 2.0, 1.0};
  const std::array<double, 3> radii{kPlateHoleRadius,
                                    0.5 * (kPlateHoleRadius + kPlateOuterRadius),
                                    kPlateOuterRadius};
  std::vector<Point> ctrl;
  std::vector<double> w;
  for (int t = 0; t < 3; ++t) {
    for (int r = 0; r < 3; ++r) {
      ctrl.push_back(radii[r] * arc[t]);
      w.push_back(arc_w[t]);
    }
  }
  KnotVector kv(kDegree, {0, 0, 0, 1, 1, 1});
  return NurbsPatch<2>({kv, kv}, std::move(ctrl), std::move(w));
}

/// Quarter block [0,1]^3 of the symmetric compression problem, triquadratic
/// Bernstein patch with all weights one.
inline NurbsPatch<3> block_base_patch() {
  using Point = NurbsPatch<3>::Point;
  std::vector<Point> ctrl;
  const std::array<double, 3> g{0.0, 0.5, 1.0};
  for (double z : g) {
    for (double y : g) {
      for (double x : g) ctrl.push_back(Point(x, y, z));
    }
  }
  KnotVector kv(kDegree, {0, 0, 0, 1, 1, 1});
  return NurbsPatch<3>({kv, kv, kv}, std::move(ctrl), std::vector<double>(27, 1.0));
}

/// Cook's membrane at n x n elements: clamped left edge, tangential traction
/// on the loaded edge, homogeneous Neumann elsewhere.
inline BenchmarkSetup<2> build_cook_case(int n) {
  Mesh<2> mesh(detail::refined(cook_base_patch(), n));
  BenchmarkSetup<2> setup{std::move(mesh), Material::from_young_poisson(240.565, 0.4999),
                          {}, {}};
  setup.loads.tractions.push_back(
      {face_id(0, 1), [](const NurbsPatch<2>::Point&) {
         return Eigen::Vector2d(0.0, kCookTraction);
       }});
  const int nv = setup.mesh.patch().num_basis(1);
  for (int j = 0; j < nv; ++j) {
    const long a = setup.mesh.patch().global_index({0, j});
    setup.dirichlet.push_back({a, 0});
    setup.dirichlet.push_back({a, 1});
  }
  return setup;
}

/// Quarter plate with hole at n x n elements: symmetry conditions on the two
/// straight edges, exact tractions on the outer arc, traction-free hole.
inline BenchmarkSetup<2> build_plate_case(int n, double E = 1e5, double nu_ratio = 0.49999) {
  Mesh<2> mesh(detail::refined(plate_base_patch(), n));
  const Material mat = Material::from_young_poisson(E, nu_ratio);
  BenchmarkSetup<2> setup{std::move(mesh), mat, {}, {}};
  const double mu = mat.mu;
  setup.loads.tractions.push_back(
      {face_id(0, 1), [mu, nu_ratio](const NurbsPatch<2>::Point& x) {
         const PlateExactSolution s = exact_plate_solution(
             x[0], x[1], kPlateTension, kPlateHoleRadius, nu_ratio, mu);
         const Eigen::Vector2d nrm = x.normalized();  // outward radial
         return Eigen::Vector2d(s.sxx * nrm[0] + s.sxy * nrm[1],
                                s.sxy * nrm[0] + s.syy * nrm[1]);
       }});
  const int n_r = setup.mesh.patch().num_basis(0);
  const int n_t = setup.mesh.patch().num_basis(1);
  for (int i = 0; i < n_r; ++i) {
    setup.dirichlet.push_back({setup.mesh.patch().global_index({i, 0}), 1});        // y=0: uy
    setup.dirichlet.push_back({setup.mesh.patch().global_index({i, n_t - 1}), 0});  // x=0: ux
  }
  return setup;
}

/// Three-dimensional block under the compressive volumetric force
/// f_z = -10 (1-|x|)(1-|y|); 16^3 elements, bottom plane fixed vertically,
/// symmetry planes at x = 0 and y = 0.
inline BenchmarkSetup<3> build_block_case(int n = 16) {
  Mesh<3> mesh(detail::refined(block_base_patch(), n));
  BenchmarkSetup<3> setup{std::move(mesh), Material::from_young_poisson(250.0, 0.49999),
                          {}, {}};
  setup.loads.body = [](const NurbsPatch<3>::Point& x) {
    return Eigen::Vector3d(0.0, 0.0,
                           -10.0 * (1.0 - std::abs(x[0])) * (1.0 - std::abs(x[1])));
  };
  const int n0 = setup.mesh.patch().num_basis(0);
  const int n1 = setup.mesh.patch().num_basis(1);
  const int n2 = setup.mesh.patch().num_basis(2);
  for (int k = 0; k < n2; ++k) {
    for (int j = 0; j < n1; ++j) {
      setup.dirichlet.push_back({setup.mesh.patch().global_index({0, j, k}), 0});  // x=0
    }
    for (int i = 0; i < n0; ++i) {
      setup.dirichlet.push_back({setup.mesh.patch().global_index({i, 0, k}), 1});  // y=0
    }
  }
  for (int j = 0; j < n1; ++j) {
    for (int i = 0; i < n0; ++i) {
      setup.dirichlet.push_back({setup.mesh.patch().global_index({i, j, 0}), 2});  // z=0
    }
  }
  return setup;
}

/// Solve one benchmark setup with the given technology and rule.
template <int Dim>
Solution solve_case(const BenchmarkSetup<Dim>& setup, ElementTechnology tech,
                    int points_per_direction) {
  const QuadratureRule<Dim> rule(points_per_direction);
  SparseSystem<Dim> sys =
      assemble(setup.mesh, setup.material, tech, rule, setup.loads, setup.dirichlet);
  apply_constraints(sys);
  return solve_spd(sys);
}

/// Vertical displacement at Cook's point A (top right corner), evaluated at
/// the parametric corner; open knot vectors interpolate there.
inline double cook_tip_displacement(const Mesh<2>& mesh, const Eigen::VectorXd& u) {
  const long e = mesh.num_elements() - 1;
  const auto eval = mesh.evaluate_parent(e, {1.0, 1.0});
  double uy = 0.0;
  for (int a = 0; a < Mesh<2>::kFuncs; ++a) {
    uy += eval.value[a] * u[2 * eval.indices[a] + 1];
  }
  return uy;
}

/// Relative L2 errors of displacement and (in-plane) stress against the
/// exact plate solution, integrated with the active quadrature rule. The
/// stress sum runs over i,j in {1,2}, so the shear component counts twice.
struct L2Errors {
  double displacement;
  double stress;
};

inline L2Errors error_l2(const Mesh<2>& mesh, const Eigen::VectorXd& u,
                         const Material& mat, ElementTechnology tech,
                         int points_per_direction) {
  const QuadratureRule<2> rule(points_per_direction);
  FieldEvaluator<2> fields(mesh, u, mat, tech);
  double num_u = 0.0, den_u = 0.0, num_s = 0.0, den_s = 0.0;
  for (long e = 0; e < mesh.num_elements(); ++e) {
    const double pscale = parametric_scale(mesh.element_bounds(e));
    for (int q = 0; q < rule.size(); ++q) {
      const auto s = fields.at_parent(e, rule.point(q));
      const double w = rule.weight(q) * pscale * s.det_jacobian;
      const PlateExactSolution ex = exact_plate_solution(
          s.x[0], s.x[1], kPlateTension, kPlateHoleRadius, mat.poisson_ratio, mat.mu);
      num_u += w * ((s.displacement[0] - ex.ux) * (s.displacement[0] - ex.ux) +
                    (s.displacement[1] - ex.uy) * (s.displacement[1] - ex.uy));
      den_u += w * (ex.ux * ex.ux + ex.uy * ex.uy);
      const double dxx = s.stress(0, 0) - ex.sxx;
      const double dyy = s.stress(1, 1) - ex.syy;
      const double dxy = s.stress(0, 1) - ex.sxy;
      num_s += w * (dxx * dxx + dyy * dyy + 2.0 * dxy * dxy);
      den_s += w * (ex.sxx * ex.sxx + ex.syy * ex.syy + 2.0 * ex.sxy * ex.sxy);
    }
  }
  return {std::sqrt(num_u / den_u), std::sqrt(num_s / den_s)};
}

/// Total variation of a sampled stress trace divided by a reference
/// magnitude. The paper judges oscillations visually; this scalar makes the
/// comparison mechanical: smooth monotone profiles give |last - first| /
/// reference, oscillatory ones accumulate every swing.
inline double oscillation_indicator(const std::vector<double>& samples,
                                    double reference_max) {
  double tv = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    tv += std::abs(samples[i] - samples[i - 1]);
  }
  if (reference_max <= 0.0) throw DomainError("oscillation reference must be positive");
  return tv / reference_max;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Hydrostatic stress sampled along the bottom-plane parametric mid-line of
/// the block, 10 points per element: xi = (t, 1/2, 0).
inline std::vector<double> block_midline_hydrostatic(const Mesh<3>& mesh,
                                                     const Eigen::VectorXd& u,
                                                     const Material& mat,
                                                     ElementTechnology tech,
                                                     int samples_per_element = 10) {
  FieldEvaluator<3> fields(mesh, u, mat, tech);
  std::vector<double> out;
  const int ne0 = mesh.num_elements(0);
  const int ne1 = mesh.num_elements(1);
  const int e1 = ne1 / 2;  // element row containing xi_1 = 1/2 (its lower face)
  for (int e0 = 0; e0 < ne0; ++e0) {
    const long e = mesh.element_id({e0, e1, 0});
    for (int sidx = 0; sidx < samples_per_element; ++sidx) {
      const double t = -1.0 + 2.0 * sidx / (samples_per_element - 1.0);
      const auto s = fields.at_parent(e, {t, -1.0, -1.0});
      out.push_back(fields.hydrostatic_stress(s));
    }
  }
  return out;
}

}  // namespace casiga
