#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "casiga/errors.hpp"
#include "casiga/knot_vector.hpp"

namespace casiga {

namespace detail {
constexpr int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}
}  // namespace detail

/// Tensor-product quadratic NURBS patch in Dim = 2 or 3 physical/parametric
/// dimensions. Control points and weights are stored in lexicographic order
/// with the first parametric direction fastest:
///   A = i0 + n0 * (i1 + n1 * i2)
template <int Dim>
class NurbsPatch {
  static_assert(Dim == 2 || Dim == 3);

 public:
  static constexpr int kFuncsPerElement = detail::ipow(kDegree + 1, Dim);
  using Point = Eigen::Matrix<double, Dim, 1>;
  using Matrix = Eigen::Matrix<double, Dim, Dim>;

  NurbsPatch(std::array<KnotVector, Dim> knot_vectors, std::vector<Point> control_points,
             std::vector<double> weights)
      : kv_(std::move(knot_vectors)),
        ctrl_(std::move(control_points)),
        w_(std::move(weights)) {
    long expected = 1;
    for (int d = 0; d < Dim; ++d) expected *= kv_[d].num_basis();
    if (static_cast<long>(ctrl_.size()) != expected || w_.size() != ctrl_.size()) {
      throw DomainError("control net size does not match knot vectors");
    }
    for (double w : w_) {
      if (!(w > 0.0)) throw DomainError("NURBS weights must be positive");
    }
  }

  const KnotVector& knot_vector(int dir) const { return kv_[dir]; }
  int num_basis(int dir) const { return kv_[dir].num_basis(); }
  long num_control_points() const { return static_cast<long>(ctrl_.size()); }
  const Point& control_point(long a) const { return ctrl_[a]; }
  double weight(long a) const { return w_[a]; }

  long global_index(const std::array<int, Dim>& tensor_index) const {
    long a = tensor_index[Dim - 1];
    for (int d = Dim - 2; d >= 0; --d) a = a * kv_[d].num_basis() + tensor_index[d];
    return a;
  }

  /// Everything the Galerkin integrals need at one parametric point of one
  /// element: rational basis values / physical gradients of the supported
  /// functions (ordered lexicographically, first direction fastest), the
  /// mapped point, and the geometry Jacobian.
  struct BasisEval {
    std::array<long, kFuncsPerElement> indices;
    std::array<double, kFuncsPerElement> value;
    Eigen::Matrix<double, kFuncsPerElement, Dim> gradient;  // d/dx
    Point x;
    Matrix jacobian;  // J(i,k) = dx_i / dxi_k
    double det_jacobian = 0.0;
  };

  /// Evaluate on the element identified by `spans` (one knot span per
  /// direction). xi may lie anywhere in the closed element, so corner values
  /// are taken from within the element regardless of the find_span
  /// convention. Throws GeometryError if det J <= 0.
  BasisEval evaluate(const std::array<int, Dim>& spans, const std::array<double, Dim>& xi,
                     long element_id = -1) const {
    std::array<BasisValues, Dim> b1;
    for (int d = 0; d < Dim; ++d) b1[d] = kv_[d].eval_basis(spans[d], xi[d]);

    BasisEval out;
    // tensor-product B-spline values and parametric derivatives
    std::array<double, kFuncsPerElement> bspline;
    Eigen::Matrix<double, kFuncsPerElement, Dim> dbspline;
    for (int a = 0; a < kFuncsPerElement; ++a) {
      std::array<int, Dim> local{};
      int rest = a;
      for (int d = 0; d < Dim; ++d) {
        local[d] = rest % (kDegree + 1);
        rest /= kDegree + 1;
      }
      std::array<int, Dim> tensor{};
      double v = 1.0;
      for (int d = 0; d < Dim; ++d) {
        tensor[d] = spans[d] - kDegree + local[d];
        v *= b1[d].value[local[d]];
      }
      out.indices[a] = global_index(tensor);
      bspline[a] = v;
      for (int k = 0; k < Dim; ++k) {
        double dv = 1.0;
        for (int d = 0; d < Dim; ++d) {
          dv *= (d == k) ? b1[d].deriv[local[d]] : b1[d].value[local[d]];
        }
        dbspline(a, k) = dv;
      }
    }

    // rational correction
    double W = 0.0;
    Eigen::Matrix<double, Dim, 1> dW = Eigen::Matrix<double, Dim, 1>::Zero();
    for (int a = 0; a < kFuncsPerElement; ++a) {
      const double wa = w_[out.indices[a]];
      W += wa * bspline[a];
      for (int k = 0; k < Dim; ++k) dW[k] += wa * dbspline(a, k);
    }
    Eigen::Matrix<double, kFuncsPerElement, Dim> dR;
    for (int a = 0; a < kFuncsPerElement; ++a) {
      const double wa = w_[out.indices[a]];
      out.value[a] = wa * bspline[a] / W;
      for (int k = 0; k < Dim; ++k) {
        dR(a, k) = wa * (dbspline(a, k) * W - bspline[a] * dW[k]) / (W * W);
      }
    }

    out.x.setZero();
    out.jacobian.setZero();
    for (int a = 0; a < kFuncsPerElement; ++a) {
      const Point& q = ctrl_[out.indices[a]];
      out.x += out.value[a] * q;
      for (int i = 0; i < Dim; ++i) {
        for (int k = 0; k < Dim; ++k) out.jacobian(i, k) += q[i] * dR(a, k);
      }
    }
    out.det_jacobian = out.jacobian.determinant();
    if (!(out.det_jacobian > 0.0)) {
      throw GeometryError("nonpositive geometry Jacobian", element_id,
                          std::vector<double>(xi.begin(), xi.end()));
    }
    const Matrix jinv = out.jacobian.inverse();
    out.gradient = dR * jinv;  // dR/dx_i = dR/dxi_k * dxi_k/dx_i
    return out;
  }

  /// Evaluate at a parametric point, resolving spans by find_span.
  BasisEval evaluate(const std::array<double, Dim>& xi) const {
    std::array<int, Dim> spans;
    for (int d = 0; d < Dim; ++d) spans[d] = kv_[d].find_span(xi[d]);
    return evaluate(spans, xi);
  }

  /// Knot insertion (Boehm). The geometry map is unchanged; one control
  /// point line is added per direction line. Refuses insertions that would
  /// create interior multiplicity >= 2.
  NurbsPatch insert_knot(int direction, double xi_new) const {
    const KnotVector& kv = kv_[direction];
    const int k = kv.find_span(xi_new);
    const auto& t = kv.knots();
    KnotVector new_kv = kv.inserted(xi_new);  // validates span and C1 scope

    // homogeneous control rows: (w * x, w)
    const int n = kv.num_basis();
    const long line_count = num_control_points() / n;
    std::vector<Point> new_ctrl(static_cast<std::size_t>(line_count) * (n + 1));
    std::vector<double> new_w(new_ctrl.size());

    std::array<int, Dim> dims{};
    for (int d = 0; d < Dim; ++d) dims[d] = kv_[d].num_basis();

    // iterate all control lines along `direction`
    std::array<int, Dim> idx{};
    for (long line = 0; line < line_count; ++line) {
      // decode line number into the fixed indices (all dirs but `direction`)
      long rest = line;
      for (int d = 0; d < Dim; ++d) {
        if (d == direction) continue;
        idx[d] = static_cast<int>(rest % dims[d]);
        rest /= dims[d];
      }
      auto old_at = [&](int i) {
        idx[direction] = i;
        return global_index(idx);
      };
      std::array<int, Dim> ndims = dims;
      ndims[direction] = n + 1;
      auto new_at = [&](int i) {
        std::array<int, Dim> j = idx;
        j[direction] = i;
        long a = j[Dim - 1];
        for (int d = Dim - 2; d >= 0; --d) a = a * ndims[d] + j[d];
        return a;
      };
      auto homog = [&](int i) {
        const long a = old_at(i);
        Eigen::Matrix<double, Dim + 1, 1> h;
        h.template head<Dim>() = ctrl_[a] * w_[a];
        h[Dim] = w_[a];
        return h;
      };
      for (int i = 0; i <= n; ++i) {
        Eigen::Matrix<double, Dim + 1, 1> h;
        if (i <= k - kDegree) {
          h = homog(i);
        } else if (i <= k) {
          const double alpha = (xi_new - t[i]) / (t[i + kDegree] - t[i]);
          h = alpha * homog(i) + (1.0 - alpha) * homog(i - 1);
        } else {
          h = homog(i - 1);
        }
        const long a = new_at(i);
        new_w[a] = h[Dim];
        new_ctrl[a] = h.template head<Dim>() / h[Dim];
      }
    }

    std::array<KnotVector, Dim> nkv = kv_;
    nkv[direction] = std::move(new_kv);
    return NurbsPatch(std::move(nkv), std::move(new_ctrl), std::move(new_w));
  }

  /// Uniform h-refinement: insert the midpoint of every nonzero knot span
  /// in every direction. Element count doubles per direction.
  NurbsPatch refine_uniform() const {
    NurbsPatch p = *this;
    for (int d = 0; d < Dim; ++d) {
      const std::vector<double> breaks = p.kv_[d].breakpoints();
      for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        p = p.insert_knot(d, 0.5 * (breaks[i] + breaks[i + 1]));
      }
    }
    return p;
  }

 private:
  std::array<KnotVector, Dim> kv_;
  std::vector<Point> ctrl_;
  std::vector<double> w_;
};

}  // namespace casiga
