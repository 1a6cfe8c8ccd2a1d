#pragma once

#include <Eigen/Dense>
#include <optional>

#include "casiga/assembly.hpp"
#include "casiga/element_stiffness.hpp"
#include "casiga/mechanics.hpp"
#include "casiga/mesh.hpp"

namespace casiga {

/// Point evaluation of the discrete solution fields, with stress recovery
/// following the active element technology.
template <int Dim>
class FieldEvaluator {
 public:
  using Point = typename Mesh<Dim>::Point;
  using Vec = Eigen::Matrix<double, Dim, 1>;

  FieldEvaluator(const Mesh<Dim>& mesh, const Eigen::VectorXd& displacement,
                 const Material& mat, ElementTechnology tech)
      : mesh_(mesh), u_(displacement), mat_(mat), tech_(tech) {
    if (tech_ != ElementTechnology::kCS) corners_.emplace(mesh_);
  }

  struct Sample {
    Point x;
    Vec displacement;
    SymTensor<Dim> strain;  // compatible strain
    SymTensor<Dim> stress;  // recovered per technology
    double det_jacobian = 0.0;
  };

  Sample at_parent(long element, const std::array<double, Dim>& parent) const {
    const auto eval = mesh_.evaluate_parent(element, parent);
    Sample s;
    s.x = eval.x;
    s.det_jacobian = eval.det_jacobian;
    s.displacement.setZero();
    Eigen::Matrix<double, Dim, Dim> grad = Eigen::Matrix<double, Dim, Dim>::Zero();
    for (int a = 0; a < Mesh<Dim>::kFuncs; ++a) {
      const Vec ua = control_value(eval.indices[a]);
      s.displacement += eval.value[a] * ua;
      grad += ua * eval.gradient.row(a);
    }
    s.strain = strain_from_displacement_gradient<Dim>(grad);
    if (tech_ == ElementTechnology::kCS) {
      s.stress = recover_stress(tech_, mat_, s.strain);
    } else {
      s.stress = recover_stress(tech_, mat_, s.strain, assumed_trace(element, parent));
    }
    return s;
  }

  /// Multilinear corner interpolant of tr(eps_h) on one element; equals the
  /// trace of the CAS1/CAS2 assumed strain fields.
  double assumed_trace(long element, const std::array<double, Dim>& parent) const {
    if (!cached_divs_ || cached_element_ != element) {
      const auto cv = corners_->element_corners(mesh_, element);
      const auto conn = mesh_.connectivity(element);
      std::array<double, (1 << Dim)> divs{};
      for (int l = 0; l < (1 << Dim); ++l) {
        for (int a = 0; a < Mesh<Dim>::kFuncs; ++a) {
          divs[l] += cv.gradient[l].row(a).dot(control_value(conn[a]));
        }
      }
      cached_divs_ = divs;
      cached_element_ = element;
    }
    const auto L = corner_weights<Dim>(parent);
    double tr = 0.0;
    for (int l = 0; l < (1 << Dim); ++l) tr += L[l] * (*cached_divs_)[l];
    return tr;
  }

  /// Hydrostatic stress of the recovered stress state; plane strain
  /// reconstructs sigma_zz before taking the trace.
  double hydrostatic_stress(const Sample& s) const {
    if constexpr (Dim == 2) {
      return hydrostatic_plane_strain(s.stress, mat_.poisson_ratio);
    } else {
      return hydrostatic(s.stress);
    }
  }

  const Mesh<Dim>& mesh() const { return mesh_; }
  const Material& material() const { return mat_; }
  ElementTechnology technology() const { return tech_; }

 private:
  Vec control_value(long a) const {
    Vec v;
    for (int i = 0; i < Dim; ++i) v[i] = u_[Dim * a + i];
    return v;
  }

  const Mesh<Dim>& mesh_;
  const Eigen::VectorXd& u_;
  Material mat_;
  ElementTechnology tech_;
  std::optional<ElementCornerData<Dim>> corners_;
  mutable std::optional<std::array<double, (1 << Dim)>> cached_divs_;
  mutable long cached_element_ = -1;
};

}  // namespace casiga
