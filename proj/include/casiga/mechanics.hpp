#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>

#include "casiga/errors.hpp"

namespace casiga {

/// Element technology: compatible strains, or one of the two
/// continuous-assumed-strain variants.
enum class ElementTechnology { kCS, kCAS1, kCAS2 };

inline std::string to_string(ElementTechnology tech) {
  switch (tech) {
    case ElementTechnology::kCS:
      return "cs";
    case ElementTechnology::kCAS1:
      return "cas1";
    case ElementTechnology::kCAS2:
      return "cas2";
  }
  return "?";
}

inline ElementTechnology technology_from_string(const std::string& s) {
  if (s == "cs") return ElementTechnology::kCS;
  if (s == "cas1") return ElementTechnology::kCAS1;
  if (s == "cas2") return ElementTechnology::kCAS2;
  throw ConfigError("unknown element technology '" + s + "'");
}

/// Linear isotropic material. Lame parameters are derived once from
/// (E, nu); lambda grows without bound as nu approaches 1/2, which is the
/// near-incompressible regime this library targets.
struct Material {
  double youngs_modulus = 0.0;
  double poisson_ratio = 0.0;
  double lambda = 0.0;
  double mu = 0.0;

  static Material from_young_poisson(double E, double nu) {
    if (E <= 0.0) throw DomainError("Young's modulus must be positive");
    if (nu < 0.0 || nu >= 0.5) throw DomainError("Poisson's ratio must lie in [0, 0.5)");
    Material m;
    m.youngs_modulus = E;
    m.poisson_ratio = nu;
    m.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    m.mu = E / (2.0 * (1.0 + nu));
    return m;
  }
};

/// Symmetric rank-2 tensor stored in Voigt order:
///   2D: (xx, yy, xy)    3D: (xx, yy, zz, xy, yz, xz)
/// Symmetry holds by construction; only the upper triangle is stored.
template <int Dim>
class SymTensor {
  static_assert(Dim == 2 || Dim == 3);

 public:
  static constexpr int kComponents = Dim * (Dim + 1) / 2;

  SymTensor() { c_.fill(0.0); }

  static constexpr int voigt_index(int i, int j) {
    if (i == j) return i;
    const int a = i < j ? i : j;
    const int b = i < j ? j : i;
    if constexpr (Dim == 2) {
      return 2;  // (0,1)
    } else {
      if (a == 0 && b == 1) return 3;
      if (a == 1 && b == 2) return 4;
      return 5;  // (0,2)
    }
  }

  double operator()(int i, int j) const { return c_[voigt_index(i, j)]; }
  double& component(int v) { return c_[v]; }
  double component(int v) const { return c_[v]; }
  void set(int i, int j, double value) { c_[voigt_index(i, j)] = value; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < Dim; ++i) t += c_[i];
    return t;
  }

  static SymTensor identity() {
    SymTensor t;
    for (int i = 0; i < Dim; ++i) t.c_[i] = 1.0;
    return t;
  }

  /// Symmetric part of a displacement gradient, eps = (g + g^T)/2.
  static SymTensor from_gradient(const Eigen::Matrix<double, Dim, Dim>& g) {
    SymTensor t;
    for (int i = 0; i < Dim; ++i) {
      for (int j = i; j < Dim; ++j) {
        t.set(i, j, 0.5 * (g(i, j) + g(j, i)));
      }
    }
    return t;
  }

  /// Dilatational part, (tr/Dim) I.
  SymTensor dilatational() const {
    SymTensor t;
    const double m = trace() / Dim;
    for (int i = 0; i < Dim; ++i) t.c_[i] = m;
    return t;
  }

  SymTensor deviatoric() const { return *this - dilatational(); }

  SymTensor operator+(const SymTensor& o) const {
    SymTensor t;
    for (int v = 0; v < kComponents; ++v) t.c_[v] = c_[v] + o.c_[v];
    return t;
  }
  SymTensor operator-(const SymTensor& o) const {
    SymTensor t;
    for (int v = 0; v < kComponents; ++v) t.c_[v] = c_[v] - o.c_[v];
    return t;
  }
  SymTensor operator*(double s) const {
    SymTensor t;
    for (int v = 0; v < kComponents; ++v) t.c_[v] = c_[v] * s;
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::array<double, kComponents> c_;
};

template <int Dim>
SymTensor<Dim> strain_from_displacement_gradient(
    const Eigen::Matrix<double, Dim, Dim>& grad_u) {
  return SymTensor<Dim>::from_gradient(grad_u);
}

template <int Dim>
std::pair<SymTensor<Dim>, SymTensor<Dim>> split_dil_dev(const SymTensor<Dim>& eps) {
  return {eps.dilatational(), eps.deviatoric()};
}

/// Stress recovery per element technology.
///   CS:   sigma = lambda tr(eps_h) I + 2 mu eps_h            (no assumed data)
///   CAS1: sigma = lambda tr(eps_cas1) I + 2 mu eps_h         (assumed trace)
///   CAS2: sigma = lambda tr(eps_cas2) I + 2 mu eps_cas2,
///         eps_cas2 = eps_h + (assumed_trace - tr eps_h)/Dim I
/// The assumed trace is the multilinear corner interpolant of tr(eps_h);
/// for CAS1 it equals tr(eps_cas1), for CAS2 it equals tr(eps_cas2).
template <int Dim>
SymTensor<Dim> recover_stress(ElementTechnology tech, const Material& mat,
                              const SymTensor<Dim>& compatible,
                              std::optional<double> assumed_trace = std::nullopt) {
  if (tech == ElementTechnology::kCS) {
    if (assumed_trace.has_value()) {
      throw DomainError("CS stress recovery takes no assumed strain data");
    }
    return SymTensor<Dim>::identity() * (mat.lambda * compatible.trace()) +
           compatible * (2.0 * mat.mu);
  }
  if (!assumed_trace.has_value()) {
    throw DomainError("CAS stress recovery requires the assumed strain trace");
  }
  if (tech == ElementTechnology::kCAS1) {
    return SymTensor<Dim>::identity() * (mat.lambda * (*assumed_trace)) +
           compatible * (2.0 * mat.mu);
  }
  const SymTensor<Dim> eps_cas2 =
      compatible +
      SymTensor<Dim>::identity() * ((*assumed_trace - compatible.trace()) / Dim);
  return SymTensor<Dim>::identity() * (mat.lambda * (*assumed_trace)) +
         eps_cas2 * (2.0 * mat.mu);
}

/// sigma_zz in plane strain, computed from the in-plane normal stresses.
inline double sigma_zz_plane_strain(double nu, double sigma_xx, double sigma_yy) {
  return nu * (sigma_xx + sigma_yy);
}

/// Hydrostatic stress sigma_kk / 3 of a full 3D stress state.
inline double hydrostatic(const SymTensor<3>& sigma) { return sigma.trace() / 3.0; }

/// Plane-strain hydrostatic stress. The out-of-plane normal stress is part
/// of the trace, so sigma_zz is reconstructed before dividing by 3.
inline double hydrostatic_plane_strain(const SymTensor<2>& sigma, double nu) {
  const double szz = sigma_zz_plane_strain(nu, sigma(0, 0), sigma(1, 1));
  return (sigma(0, 0) + sigma(1, 1) + szz) / 3.0;
}

}  // namespace casiga
