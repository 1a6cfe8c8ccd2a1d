#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "casiga/benchmarks.hpp"
#include "casiga/knot_vector.hpp"
#include "casiga/mesh.hpp"
#include "casiga/nurbs_patch.hpp"

using namespace casiga;

namespace {

// Independent Cox-de Boor recursion, straight from the definition. Slow and
// clear; used only as an oracle.
double cox_de_boor(const std::vector<double>& t, int i, int p, double x) {
  if (p == 0) {
    const bool last = (i + 1 == static_cast<int>(t.size()) - 1);
    if (t[i] <= x && (x < t[i + 1] || (last && x <= t[i + 1]))) return 1.0;
    return 0.0;
  }
  double out = 0.0;
  if (t[i + p] > t[i]) out += (x - t[i]) / (t[i + p] - t[i]) * cox_de_boor(t, i, p - 1, x);
  if (t[i + p + 1] > t[i + 1]) {
    out += (t[i + p + 1] - x) / (t[i + p + 1] - t[i + 1]) * cox_de_boor(t, i + 1, p - 1, x);
  }
  return out;
}

NurbsPatch<2> unit_square_patch() {
  std::vector<NurbsPatch<2>::Point> ctrl;
  for (double y : {0.0, 0.5, 1.0}) {
    for (double x : {0.0, 0.5, 1.0}) ctrl.emplace_back(x, y);
  }
  KnotVector kv(kDegree, {0, 0, 0, 1, 1, 1});
  return NurbsPatch<2>({kv, kv}, ctrl, std::vector<double>(9, 1.0));
}

}  // namespace

TEST(KnotVector, FindSpanConventions) {
  KnotVector bern(kDegree, {0, 0, 0, 1, 1, 1});
  EXPECT_EQ(bern.find_span(0.5), 2);
  EXPECT_EQ(bern.find_span(1.0), 2);  // right endpoint maps to last span
  KnotVector two(kDegree, {0, 0, 0, 0.5, 1, 1, 1});
  EXPECT_EQ(two.find_span(0.5), 3);  // left-closed at interior knots
  EXPECT_THROW(bern.find_span(-0.1), DomainError);
  EXPECT_THROW(bern.find_span(1.1), DomainError);
}

TEST(KnotVector, Validation) {
  EXPECT_THROW(KnotVector(kDegree, {0, 0, 0.5, 1, 1}), DomainError);      // not open
  EXPECT_THROW(KnotVector(kDegree, {0, 0, 0, 1, 0.5, 1, 1, 1}), DomainError);  // unsorted
  EXPECT_THROW(KnotVector(kDegree, {0, 0, 0, 0.5, 0.5, 1, 1, 1}), DomainError);  // mult 2
  EXPECT_THROW(KnotVector(3, {0, 0, 0, 0, 1, 1, 1, 1}), DomainError);     // degree fixed
  KnotVector ok(kDegree, {0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1});
  EXPECT_EQ(ok.num_basis(), 6);
  EXPECT_EQ(ok.num_elements(), 4);
}

TEST(KnotVector, BernsteinValues) {
  KnotVector bern(kDegree, {0, 0, 0, 1, 1, 1});
  const BasisValues mid = bern.eval_basis(0.5);
  EXPECT_NEAR(mid.value[0], 0.25, 1e-15);
  EXPECT_NEAR(mid.value[1], 0.5, 1e-15);
  EXPECT_NEAR(mid.value[2], 0.25, 1e-15);
  const BasisValues left = bern.eval_basis(0.0);
  EXPECT_DOUBLE_EQ(left.value[0], 1.0);
  EXPECT_DOUBLE_EQ(left.value[1], 0.0);
  EXPECT_DOUBLE_EQ(left.value[2], 0.0);
}

TEST(KnotVector, MatchesCoxDeBoorOracle) {
  const std::vector<double> knots{0, 0, 0, 0.5, 1, 1, 1};
  KnotVector kv(kDegree, knots);
  for (double xi : {0.25, 0.1, 0.5, 0.7, 0.99}) {
    const int span = kv.find_span(xi);
    const BasisValues b = kv.eval_basis(span, xi);
    for (int j = 0; j <= kDegree; ++j) {
      const int i = span - kDegree + j;
      EXPECT_NEAR(b.value[j], cox_de_boor(knots, i, kDegree, xi), 1e-14)
          << "xi=" << xi << " func " << i;
      // derivative via the recursion's difference formula
      const double h = 1e-7;
      const double fd =
          (cox_de_boor(knots, i, kDegree, xi + h) - cox_de_boor(knots, i, kDegree, xi - h)) /
          (2 * h);
      EXPECT_NEAR(b.deriv[j], fd, 1e-6);
    }
  }
}

TEST(KnotVector, PartitionOfUnity) {
  KnotVector kv(kDegree, {0, 0, 0, 0.2, 0.45, 0.7, 1, 1, 1});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double xi = dist(rng);
    const BasisValues b = kv.eval_basis(xi);
    EXPECT_NEAR(b.value[0] + b.value[1] + b.value[2], 1.0, 1e-13);
    EXPECT_NEAR(b.deriv[0] + b.deriv[1] + b.deriv[2], 0.0, 1e-12);
  }
}

TEST(NurbsPatch, IdentityMapGradients) {
  const NurbsPatch<2> patch = unit_square_patch();
  const KnotVector& kv = patch.knot_vector(0);
  // identity geometry, unit weights: the physical gradient is exactly the
  // tensor-product parametric derivative
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  for (int k = 0; k < 20; ++k) {
    const std::array<double, 2> xi{dist(rng), dist(rng)};
    const auto e = patch.evaluate(xi);
    EXPECT_NEAR(e.det_jacobian, 1.0, 1e-14);
    const BasisValues bu = kv.eval_basis(xi[0]);
    const BasisValues bv = kv.eval_basis(xi[1]);
    for (int a = 0; a < 9; ++a) {
      const int a0 = a % 3, a1 = a / 3;
      EXPECT_NEAR(e.gradient(a, 0), bu.deriv[a0] * bv.value[a1], 1e-13);
      EXPECT_NEAR(e.gradient(a, 1), bu.value[a0] * bv.deriv[a1], 1e-13);
    }
  }
}

TEST(NurbsPatch, GradientMatchesFiniteDifferences) {
  const BenchmarkSetup<2> setup = build_plate_case(4);
  const NurbsPatch<2>& patch = setup.mesh.patch();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.02, 0.98);
  for (int k = 0; k < 20; ++k) {
    const std::array<double, 2> xi{dist(rng), dist(rng)};
    const auto e = patch.evaluate(xi);
    // physical-space finite differences: perturb xi, track x, compare slopes
    const double h = 1e-6;
    for (int a = 0; a < 9; ++a) {
      Eigen::Vector2d grad_fd = Eigen::Vector2d::Zero();
      Eigen::Matrix2d dxdxi;
      Eigen::Vector2d dNdxi;
      for (int d = 0; d < 2; ++d) {
        auto xp = xi, xm = xi;
        xp[d] += h;
        xm[d] -= h;
        const auto ep = patch.evaluate(xp);
        const auto em = patch.evaluate(xm);
        dNdxi[d] = (ep.value[a] - em.value[a]) / (2 * h);
        dxdxi.col(d) = (ep.x - em.x) / (2 * h);
      }
      grad_fd = dxdxi.transpose().fullPivLu().solve(dNdxi);
      for (int i = 0; i < 2; ++i) {
        EXPECT_NEAR(e.gradient(a, i), grad_fd[i],
                    1e-6 * std::max(1.0, std::abs(grad_fd[i])));
      }
    }
  }
}

TEST(NurbsPatch, RationalPartitionOfUnityAndGradientSum) {
  for (const auto& setup : {build_plate_case(4), build_cook_case(4)}) {
    const NurbsPatch<2>& patch = setup.mesh.patch();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
      const auto e = patch.evaluate({dist(rng), dist(rng)});
      double sum = 0.0;
      Eigen::Vector2d gsum = Eigen::Vector2d::Zero();
      for (int a = 0; a < 9; ++a) {
        sum += e.value[a];
        gsum += e.gradient.row(a).transpose();
      }
      EXPECT_NEAR(sum, 1.0, 1e-13);
      EXPECT_LT(gsum.cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(NurbsPatch, QuarterAnnulusExactCircle) {
  const NurbsPatch<2> base = plate_base_patch();
  for (int r = 0; r < 2; ++r) {
    const NurbsPatch<2> patch = r == 0 ? base : base.refine_uniform().refine_uniform();
    for (int k = 0; k <= 100; ++k) {
      const double t = k / 100.0;
      const auto inner = patch.evaluate({0.0, t});
      const auto outer = patch.evaluate({1.0, t});
      EXPECT_NEAR(inner.x.norm(), 1.0, 1e-14);
      EXPECT_NEAR(outer.x.norm(), 4.0, 1e-13);
    }
  }
}

TEST(NurbsPatch, KnotInsertionPreservesGeometryAndFields) {
  const NurbsPatch<2> patch = plate_base_patch();
  const NurbsPatch<2> fine = patch.insert_knot(0, 0.37).insert_knot(1, 0.62);

  // a displacement field rides on the same basis: run its coefficients
  // through the same insertion and compare the represented function
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<NurbsPatch<2>::Point> coeffs(patch.num_control_points());
  std::vector<double> w(patch.num_control_points());
  for (long a = 0; a < patch.num_control_points(); ++a) {
    coeffs[a] = NurbsPatch<2>::Point(dist(rng), dist(rng));
    w[a] = patch.weight(a);
  }
  const NurbsPatch<2> field({patch.knot_vector(0), patch.knot_vector(1)}, coeffs, w);
  const NurbsPatch<2> field_fine = field.insert_knot(0, 0.37).insert_knot(1, 0.62);

  auto eval_field = [](const NurbsPatch<2>& geom, const NurbsPatch<2>& coeff_patch,
                       const std::array<double, 2>& xi) {
    const auto e = geom.evaluate(xi);
    NurbsPatch<2>::Point v = NurbsPatch<2>::Point::Zero();
    for (int a = 0; a < NurbsPatch<2>::kFuncsPerElement; ++a) {
      v += e.value[a] * coeff_patch.control_point(e.indices[a]);
    }
    return v;
  };

  for (int k = 0; k < 50; ++k) {
    const std::array<double, 2> xi{std::abs(dist(rng)), std::abs(dist(rng))};
    EXPECT_LT((patch.evaluate(xi).x - fine.evaluate(xi).x).norm(), 1e-14);
    EXPECT_LT((eval_field(patch, field, xi) - eval_field(fine, field_fine, xi)).norm(),
              1e-13);
  }
}

TEST(NurbsPatch, InsertionRefusesRepeatedInteriorKnot) {
  const NurbsPatch<2> patch = plate_base_patch().refine_uniform();
  EXPECT_THROW(patch.insert_knot(0, 0.5), DomainError);
}

TEST(NurbsPatch, UniformRefinementDoublesElements) {
  const NurbsPatch<2> p2 = cook_base_patch().refine_uniform();
  Mesh<2> m2(p2);
  EXPECT_EQ(m2.num_elements(0), 2);
  EXPECT_EQ(m2.num_elements(1), 2);
  Mesh<2> m4(p2.refine_uniform());
  EXPECT_EQ(m4.num_elements(0), 4);
  EXPECT_EQ(m4.num_elements(1), 4);
}

TEST(NurbsPatch, RepeatedRefinementKeepsCircleExact) {
  NurbsPatch<2> patch = plate_base_patch();
  for (int r = 0; r < 7; ++r) patch = patch.refine_uniform();
  Mesh<2> mesh(patch);
  EXPECT_EQ(mesh.num_elements(0), 128);
  for (int k = 0; k <= 20; ++k) {
    const auto e = patch.evaluate({0.0, k / 20.0});
    EXPECT_NEAR(e.x.norm(), 1.0, 1e-13);
  }
}

TEST(Mesh, ElementCornersCoincideAcrossElements) {
  const BenchmarkSetup<2> setup = build_plate_case(4);
  const Mesh<2>& mesh = setup.mesh;
  // shared corner evaluated from the four adjacent elements
  for (int e0 : {0, 1, 2}) {
    for (int e1 : {0, 1, 2}) {
      const double xi0 = mesh.breakpoints(0)[e0 + 1];
      const double xi1 = mesh.breakpoints(1)[e1 + 1];
      const auto a = mesh.evaluate_param(mesh.element_id({e0, e1}), {xi0, xi1});
      const auto b = mesh.evaluate_param(mesh.element_id({e0 + 1, e1 + 1}), {xi0, xi1});
      EXPECT_DOUBLE_EQ(a.x[0], b.x[0]);
      EXPECT_DOUBLE_EQ(a.x[1], b.x[1]);
    }
  }
}

TEST(NurbsPatch, SingularJacobianRaisesGeometryError) {
  // degenerate patch: all control points on one line
  std::vector<NurbsPatch<2>::Point> ctrl(9, NurbsPatch<2>::Point(0.0, 0.0));
  for (int i = 0; i < 9; ++i) ctrl[i] = NurbsPatch<2>::Point(i % 3 * 0.5, 0.0);
  KnotVector kv(kDegree, {0, 0, 0, 1, 1, 1});
  const NurbsPatch<2> degenerate({kv, kv}, ctrl, std::vector<double>(9, 1.0));
  try {
    degenerate.evaluate({0.5, 0.5});
    FAIL() << "expected GeometryError";
  } catch (const GeometryError& err) {
    EXPECT_EQ(err.parametric_point().size(), 2u);
  }
}
