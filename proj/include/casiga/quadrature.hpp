#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "casiga/errors.hpp"

namespace casiga {

/// 1D Gauss-Legendre data on [-1, 1]. Only the 2- and 3-point rules are
/// exposed; their abscissae are known in closed form.
struct GaussLegendre1d {
  std::vector<double> points;
  std::vector<double> weights;
};

inline GaussLegendre1d gauss_legendre(int n) {
  switch (n) {
    case 2: {
      const double a = 1.0 / std::sqrt(3.0);
      return {{-a, a}, {1.0, 1.0}};
    }
    case 3: {
      const double a = std::sqrt(3.0 / 5.0);
      return {{-a, 0.0, a}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
    }
    default:
      throw DomainError("gauss_legendre: only 2 or 3 points per direction");
  }
}

/// Tensor-product rule on the parent element [-1,1]^Dim. Point ordering is
/// lexicographic with the first direction fastest.
template <int Dim>
class QuadratureRule {
  static_assert(Dim == 1 || Dim == 2 || Dim == 3);

 public:
  explicit QuadratureRule(int points_per_direction)
      : n_(points_per_direction) {
    const GaussLegendre1d g = gauss_legendre(n_);
    int total = 1;
    for (int d = 0; d < Dim; ++d) total *= n_;
    points_.resize(total);
    weights_.resize(total);
    for (int q = 0; q < total; ++q) {
      int rest = q;
      double w = 1.0;
      for (int d = 0; d < Dim; ++d) {
        const int i = rest % n_;
        rest /= n_;
        points_[q][d] = g.points[i];
        w *= g.weights[i];
      }
      weights_[q] = w;
    }
  }

  int points_per_direction() const { return n_; }
  int size() const { return static_cast<int>(points_.size()); }
  const std::array<double, Dim>& point(int q) const { return points_[q]; }
  double weight(int q) const { return weights_[q]; }

 private:
  int n_;
  std::vector<std::array<double, Dim>> points_;
  std::vector<double> weights_;
};

/// Closed parametric bounds of one element (a tensor product of knot spans).
template <int Dim>
struct ElementBounds {
  std::array<double, Dim> lo;
  std::array<double, Dim> hi;
};

/// Parametric image of a parent point under the affine span map.
template <int Dim>
std::array<double, Dim> map_to_parametric(const ElementBounds<Dim>& bounds,
                                          const std::array<double, Dim>& parent) {
  std::array<double, Dim> xi;
  for (int d = 0; d < Dim; ++d) {
    xi[d] = bounds.lo[d] + (bounds.hi[d] - bounds.lo[d]) * (parent[d] + 1.0) / 2.0;
  }
  return xi;
}

/// Jacobian of the parent-to-parametric map, prod(span length / 2). The
/// full change of variables multiplies this by det J of the geometry map.
template <int Dim>
double parametric_scale(const ElementBounds<Dim>& bounds) {
  double s = 1.0;
  for (int d = 0; d < Dim; ++d) s *= (bounds.hi[d] - bounds.lo[d]) / 2.0;
  return s;
}

}  // namespace casiga
