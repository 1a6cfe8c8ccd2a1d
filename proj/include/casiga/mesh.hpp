#pragma once

#include <array>
#include <utility>
#include <vector>

#include "casiga/nurbs_patch.hpp"
#include "casiga/quadrature.hpp"

namespace casiga {

/// Element view of a patch: the nonzero knot spans tile the parametric
/// domain, and each quadratic element supports exactly 3^Dim basis
/// functions (the IEN connectivity).
template <int Dim>
class Mesh {
 public:
  static constexpr int kFuncs = NurbsPatch<Dim>::kFuncsPerElement;
  using Point = typename NurbsPatch<Dim>::Point;
  using BasisEval = typename NurbsPatch<Dim>::BasisEval;

  explicit Mesh(NurbsPatch<Dim> patch) : patch_(std::move(patch)) {
    num_elements_ = 1;
    for (int d = 0; d < Dim; ++d) {
      spans_[d] = patch_.knot_vector(d).element_spans();
      breaks_[d] = patch_.knot_vector(d).breakpoints();
      num_elements_ *= static_cast<long>(spans_[d].size());
    }
  }

  const NurbsPatch<Dim>& patch() const { return patch_; }
  long num_elements() const { return num_elements_; }
  int num_elements(int dir) const { return static_cast<int>(spans_[dir].size()); }

  /// Grid of element breakpoints (knot lines) in direction dir.
  const std::vector<double>& breakpoints(int dir) const { return breaks_[dir]; }

  std::array<int, Dim> element_multi_index(long e) const {
    std::array<int, Dim> m{};
    for (int d = 0; d < Dim; ++d) {
      m[d] = static_cast<int>(e % spans_[d].size());
      e /= static_cast<long>(spans_[d].size());
    }
    return m;
  }

  long element_id(const std::array<int, Dim>& m) const {
    long e = m[Dim - 1];
    for (int d = Dim - 2; d >= 0; --d) e = e * spans_[d].size() + m[d];
    return e;
  }

  std::array<int, Dim> element_spans(long e) const {
    const auto m = element_multi_index(e);
    std::array<int, Dim> s{};
    for (int d = 0; d < Dim; ++d) s[d] = spans_[d][m[d]];
    return s;
  }

  ElementBounds<Dim> element_bounds(long e) const {
    const auto s = element_spans(e);
    ElementBounds<Dim> b;
    for (int d = 0; d < Dim; ++d) {
      b.lo[d] = patch_.knot_vector(d).knots()[s[d]];
      b.hi[d] = patch_.knot_vector(d).knots()[s[d] + 1];
    }
    return b;
  }

  /// Global basis indices supported on element e, lexicographic with the
  /// first direction fastest (matches BasisEval ordering).
  std::array<long, kFuncs> connectivity(long e) const {
    const auto s = element_spans(e);
    std::array<long, kFuncs> conn{};
    for (int a = 0; a < kFuncs; ++a) {
      int rest = a;
      std::array<int, Dim> tensor{};
      for (int d = 0; d < Dim; ++d) {
        tensor[d] = s[d] - kDegree + rest % (kDegree + 1);
        rest /= kDegree + 1;
      }
      conn[a] = patch_.global_index(tensor);
    }
    return conn;
  }

  /// Evaluate basis data at a parent point of element e.
  BasisEval evaluate_parent(long e, const std::array<double, Dim>& parent) const {
    return patch_.evaluate(element_spans(e),
                           map_to_parametric<Dim>(element_bounds(e), parent), e);
  }

  /// Evaluate basis data at a parametric point lying inside element e.
  BasisEval evaluate_param(long e, const std::array<double, Dim>& xi) const {
    return patch_.evaluate(element_spans(e), xi, e);
  }

 private:
  NurbsPatch<Dim> patch_;
  std::array<std::vector<int>, Dim> spans_;
  std::array<std::vector<double>, Dim> breaks_;
  long num_elements_ = 0;
};

/// Per-mesh tables of physical basis gradients at the element corners (the
/// knot-line intersections). C1 continuity makes these single-valued across
/// elements, so each grid vertex is evaluated once from a canonical adjacent
/// element and shared; functions of a neighboring element that are not in
/// the canonical set vanish there with zero gradient.
template <int Dim>
class ElementCornerData {
 public:
  static constexpr int kFuncs = Mesh<Dim>::kFuncs;
  static constexpr int kCorners = 1 << Dim;
  using Point = typename Mesh<Dim>::Point;

  explicit ElementCornerData(const Mesh<Dim>& mesh) {
    long n = 1;
    for (int d = 0; d < Dim; ++d) {
      grid_dims_[d] = mesh.num_elements(d) + 1;
      n *= grid_dims_[d];
    }
    vertices_.resize(n);
    for (long v = 0; v < n; ++v) {
      std::array<int, Dim> g{};
      long rest = v;
      for (int d = 0; d < Dim; ++d) {
        g[d] = static_cast<int>(rest % grid_dims_[d]);
        rest /= grid_dims_[d];
      }
      std::array<int, Dim> em{};
      std::array<double, Dim> xi{};
      for (int d = 0; d < Dim; ++d) {
        em[d] = std::min(g[d], mesh.num_elements(d) - 1);
        xi[d] = mesh.breakpoints(d)[g[d]];
      }
      const long e = mesh.element_id(em);
      const auto eval = mesh.evaluate_param(e, xi);
      VertexTable& tab = vertices_[v];
      tab.x = eval.x;
      tab.indices = eval.indices;
      tab.gradient = eval.gradient;
    }
  }

  /// Corner gradients for element e: per corner (lexicographic, first
  /// direction fastest), rows follow the element connectivity order.
  struct CornerView {
    std::array<Eigen::Matrix<double, kFuncs, Dim>, kCorners> gradient;
    std::array<Point, kCorners> x;
  };

  CornerView element_corners(const Mesh<Dim>& mesh, long e) const {
    CornerView out;
    const auto em = mesh.element_multi_index(e);
    const auto conn = mesh.connectivity(e);
    for (int l = 0; l < kCorners; ++l) {
      std::array<int, Dim> g{};
      for (int d = 0; d < Dim; ++d) g[d] = em[d] + ((l >> d) & 1);
      const VertexTable& tab = vertices_[vertex_id(g)];
      out.x[l] = tab.x;
      auto& grad = out.gradient[l];
      grad.setZero();
      for (int a = 0; a < kFuncs; ++a) {
        // match element functions against the canonical vertex table;
        // functions absent there vanish at the vertex (value and gradient)
        for (int b = 0; b < kFuncs; ++b) {
          if (tab.indices[b] == conn[a]) {
            grad.row(a) = tab.gradient.row(b);
            break;
          }
        }
      }
    }
    return out;
  }

  const Point& vertex_position(const std::array<int, Dim>& grid_index) const {
    return vertices_[vertex_id(grid_index)].x;
  }

 private:
  struct VertexTable {
    Point x;
    std::array<long, kFuncs> indices{};
    Eigen::Matrix<double, kFuncs, Dim> gradient;
  };

  long vertex_id(const std::array<int, Dim>& g) const {
    long v = g[Dim - 1];
    for (int d = Dim - 2; d >= 0; --d) v = v * grid_dims_[d] + g[d];
    return v;
  }

  std::array<int, Dim> grid_dims_{};
  std::vector<VertexTable> vertices_;
};

}  // namespace casiga
