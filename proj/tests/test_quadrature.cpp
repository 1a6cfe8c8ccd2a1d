#include <gtest/gtest.h>

#include <cmath>

#include "casiga/benchmarks.hpp"
#include "casiga/quadrature.hpp"

using namespace casiga;

TEST(GaussLegendre, ClosedFormData) {
  const GaussLegendre1d g2 = gauss_legendre(2);
  EXPECT_DOUBLE_EQ(g2.points[0], -1.0 / std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(g2.points[1], 1.0 / std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(g2.weights[0], 1.0);
  EXPECT_DOUBLE_EQ(g2.weights[1], 1.0);

  const GaussLegendre1d g3 = gauss_legendre(3);
  EXPECT_DOUBLE_EQ(g3.points[0], -std::sqrt(3.0 / 5.0));
  EXPECT_DOUBLE_EQ(g3.points[1], 0.0);
  EXPECT_DOUBLE_EQ(g3.points[2], std::sqrt(3.0 / 5.0));
  EXPECT_DOUBLE_EQ(g3.weights[0], 5.0 / 9.0);
  EXPECT_DOUBLE_EQ(g3.weights[1], 8.0 / 9.0);

  EXPECT_THROW(gauss_legendre(1), DomainError);
  EXPECT_THROW(gauss_legendre(4), DomainError);
}

TEST(GaussLegendre, PolynomialExactness) {
  // n points are exact through degree 2n-1; quartic needs n = 3
  const GaussLegendre1d g3 = gauss_legendre(3);
  double integral = 0.0;
  for (int i = 0; i < 3; ++i) integral += g3.weights[i] * std::pow(g3.points[i], 4);
  EXPECT_NEAR(integral, 2.0 / 5.0, 1e-15);

  const GaussLegendre1d g2 = gauss_legendre(2);
  double cubic = 0.0;
  for (int i = 0; i < 2; ++i) cubic += g2.weights[i] * (std::pow(g2.points[i], 3) + 1.0);
  EXPECT_NEAR(cubic, 2.0, 1e-15);
}

TEST(QuadratureRule, TensorProductStructure) {
  for (int n : {2, 3}) {
    const QuadratureRule<2> r2(n);
    const QuadratureRule<3> r3(n);
    EXPECT_EQ(r2.size(), n * n);
    EXPECT_EQ(r3.size(), n * n * n);
    double sum2 = 0.0, sum3 = 0.0;
    for (int q = 0; q < r2.size(); ++q) sum2 += r2.weight(q);
    for (int q = 0; q < r3.size(); ++q) sum3 += r3.weight(q);
    EXPECT_NEAR(sum2, 4.0, 1e-14);  // 2^d
    EXPECT_NEAR(sum3, 8.0, 1e-14);
    // symmetry about the origin: every point has its negative in the set
    for (int q = 0; q < r2.size(); ++q) {
      bool found = false;
      for (int p = 0; p < r2.size(); ++p) {
        if (std::abs(r2.point(p)[0] + r2.point(q)[0]) < 1e-15 &&
            std::abs(r2.point(p)[1] + r2.point(q)[1]) < 1e-15) {
          found = true;
        }
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(QuadratureRule, HalfSpanScaling) {
  const ElementBounds<1> b{{0.0}, {0.5}};
  EXPECT_DOUBLE_EQ(parametric_scale(b), 0.25);
  const auto mid = map_to_parametric(b, {0.0});
  EXPECT_DOUBLE_EQ(mid[0], 0.25);
}

TEST(QuadratureRule, TotalWeightEqualsDomainMeasure) {
  // identity unit square, single element
  {
    std::vector<NurbsPatch<2>::Point> ctrl;
    for (double y : {0.0, 0.5, 1.0}) {
      for (double x : {0.0, 0.5, 1.0}) ctrl.emplace_back(x, y);
    }
    KnotVector kv(kDegree, {0, 0, 0, 1, 1, 1});
    Mesh<2> mesh(NurbsPatch<2>({kv, kv}, ctrl, std::vector<double>(9, 1.0)));
    const QuadratureRule<2> rule(3);
    double total = 0.0;
    for (long e = 0; e < mesh.num_elements(); ++e) {
      const double scale = parametric_scale(mesh.element_bounds(e));
      for (int q = 0; q < rule.size(); ++q) {
        total += rule.weight(q) * scale * mesh.evaluate_parent(e, rule.point(q)).det_jacobian;
      }
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
  }
  // quarter annulus, 16x16 elements: area = pi (16 - 1) / 4
  {
    const BenchmarkSetup<2> setup = build_plate_case(16);
    const QuadratureRule<2> rule(3);
    double total = 0.0;
    for (long e = 0; e < setup.mesh.num_elements(); ++e) {
      const double scale = parametric_scale(setup.mesh.element_bounds(e));
      for (int q = 0; q < rule.size(); ++q) {
        total += rule.weight(q) * scale *
                 setup.mesh.evaluate_parent(e, rule.point(q)).det_jacobian;
      }
    }
    const double exact = M_PI * 15.0 / 4.0;
    EXPECT_NEAR(total, exact, exact * 1e-10);
  }
}
