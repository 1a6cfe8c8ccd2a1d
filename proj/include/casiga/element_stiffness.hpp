#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>

#include "casiga/mechanics.hpp"
#include "casiga/mesh.hpp"
#include "casiga/quadrature.hpp"

namespace casiga {

/// Multilinear Lagrange weights of the 2^Dim element corners at a parent
/// point, lexicographic corner order (first direction fastest).
template <int Dim>
std::array<double, (1 << Dim)> corner_weights(const std::array<double, Dim>& parent) {
  std::array<double, (1 << Dim)> w;
  for (int l = 0; l < (1 << Dim); ++l) {
    double v = 1.0;
    for (int d = 0; d < Dim; ++d) {
      v *= ((l >> d) & 1) ? (1.0 + parent[d]) / 2.0 : (1.0 - parent[d]) / 2.0;
    }
    w[l] = v;
  }
  return w;
}

/// Multilinear interpolation of corner values. Exact at corners and for
/// multilinear data; reproduces constants.
template <int Dim, typename T>
T corner_interpolate(std::span<const T> corner_values,
                     const std::array<double, Dim>& parent) {
  if (corner_values.size() != (1u << Dim)) {
    throw DomainError("corner_interpolate expects 2^Dim corner values");
  }
  const auto w = corner_weights<Dim>(parent);
  T out = corner_values[0] * w[0];
  for (int l = 1; l < (1 << Dim); ++l) out = out + corner_values[l] * w[l];
  return out;
}

namespace detail {

/// Shared stiffness kernel. The three technologies differ only in the
/// divergence--divergence contributions:
///   CS:   lambda * g g^T
///   CAS1: lambda * gc gc^T
///   CAS2: (lambda + 2 mu / Dim) * gc gc^T - (2 mu / Dim) * g g^T
/// where g holds the compatible physical gradients at the quadrature point
/// and gc their multilinear corner interpolant. The two mu-terms of the
/// variational form always use compatible gradients and are accumulated
/// identically for all technologies, so lambda = 0 makes CAS1 bitwise
/// equal to CS.
template <int Dim>
Eigen::MatrixXd element_stiffness(const Mesh<Dim>& mesh, long element,
                                  const Material& mat, const QuadratureRule<Dim>& rule,
                                  ElementTechnology tech,
                                  const ElementCornerData<Dim>* corners) {
  constexpr int kFuncs = Mesh<Dim>::kFuncs;
  constexpr int kDofs = kFuncs * Dim;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(kDofs, kDofs);

  typename ElementCornerData<Dim>::CornerView cv;
  if (tech != ElementTechnology::kCS) {
    cv = corners->element_corners(mesh, element);
  }

  const ElementBounds<Dim> bounds = mesh.element_bounds(element);
  const double scale = parametric_scale(bounds);

  Eigen::Matrix<double, kDofs, 1> div_compat;
  Eigen::Matrix<double, kDofs, 1> div_assumed;
  for (int q = 0; q < rule.size(); ++q) {
    const auto eval = mesh.evaluate_parent(element, rule.point(q));
    const double w = rule.weight(q) * scale * eval.det_jacobian;

    // flattened gradient vectors: row (a, i) = a * Dim + i
    for (int a = 0; a < kFuncs; ++a) {
      for (int i = 0; i < Dim; ++i) div_compat[a * Dim + i] = eval.gradient(a, i);
    }
    if (tech == ElementTechnology::kCS) {
      k.noalias() += (w * mat.lambda) * (div_compat * div_compat.transpose());
    } else {
      const auto L = corner_weights<Dim>(rule.point(q));
      Eigen::Matrix<double, kFuncs, Dim> gc;
      gc.setZero();
      for (int l = 0; l < (1 << Dim); ++l) gc += L[l] * cv.gradient[l];
      for (int a = 0; a < kFuncs; ++a) {
        for (int i = 0; i < Dim; ++i) div_assumed[a * Dim + i] = gc(a, i);
      }
      if (tech == ElementTechnology::kCAS1) {
        k.noalias() += (w * mat.lambda) * (div_assumed * div_assumed.transpose());
      } else {
        k.noalias() += (w * (mat.lambda + 2.0 * mat.mu / Dim)) *
                       (div_assumed * div_assumed.transpose());
        k.noalias() -= (w * (2.0 * mat.mu / Dim)) * (div_compat * div_compat.transpose());
      }
    }

    // mu-terms, identical for all technologies:
    //   int dNa/dxk mu delta_ij dNb/dxk  +  int dNa/dxj mu dNb/dxi
    Eigen::Matrix<double, kFuncs, kFuncs> gg;
    gg.noalias() = eval.gradient * eval.gradient.transpose();
    for (int a = 0; a < kFuncs; ++a) {
      for (int b = 0; b < kFuncs; ++b) {
        const double common = w * mat.mu * gg(a, b);
        for (int i = 0; i < Dim; ++i) {
          k(a * Dim + i, b * Dim + i) += common;
          for (int j = 0; j < Dim; ++j) {
            k(a * Dim + i, b * Dim + j) +=
                w * mat.mu * eval.gradient(a, j) * eval.gradient(b, i);
          }
        }
      }
    }
  }
  return k;
}

}  // namespace detail

/// Compatible-strain element stiffness. Row/column ordering is (a, i)
/// lexicographic: dof = a * Dim + i with a the local basis index.
template <int Dim>
Eigen::MatrixXd element_stiffness_cs(const Mesh<Dim>& mesh, long element,
                                     const Material& mat,
                                     const QuadratureRule<Dim>& rule) {
  return detail::element_stiffness(mesh, element, mat, rule, ElementTechnology::kCS,
                                   nullptr);
}

/// CAS1: the first-Lame-parameter term uses assumed strains (multilinear
/// corner interpolation of the compatible strains); mu-terms are compatible.
template <int Dim>
Eigen::MatrixXd element_stiffness_cas1(const Mesh<Dim>& mesh, long element,
                                       const Material& mat,
                                       const QuadratureRule<Dim>& rule,
                                       const ElementCornerData<Dim>& corners) {
  return detail::element_stiffness(mesh, element, mat, rule, ElementTechnology::kCAS1,
                                   &corners);
}

/// CAS2: assumed strains for the dilatational strain part, compatible
/// strains for the deviatoric part (five-term expansion).
template <int Dim>
Eigen::MatrixXd element_stiffness_cas2(const Mesh<Dim>& mesh, long element,
                                       const Material& mat,
                                       const QuadratureRule<Dim>& rule,
                                       const ElementCornerData<Dim>& corners) {
  return detail::element_stiffness(mesh, element, mat, rule, ElementTechnology::kCAS2,
                                   &corners);
}

template <int Dim>
Eigen::MatrixXd element_stiffness(const Mesh<Dim>& mesh, long element,
                                  const Material& mat, const QuadratureRule<Dim>& rule,
                                  ElementTechnology tech,
                                  const ElementCornerData<Dim>* corners) {
  if (tech != ElementTechnology::kCS && corners == nullptr) {
    throw DomainError("CAS element stiffness requires corner data");
  }
  return detail::element_stiffness(mesh, element, mat, rule, tech, corners);
}

}  // namespace casiga
