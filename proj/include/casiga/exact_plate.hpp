#pragma once

#include <cmath>

#include "casiga/errors.hpp"

namespace casiga {

/// Closed-form plane-strain solution of the infinite plate with a circular
/// traction-free hole of radius R under remote uniaxial tension T_x along x,
/// evaluated at (x, y) with r >= R. theta is measured from the tension axis.
struct PlateExactSolution {
  double ux, uy;
  double sxx, syy, sxy;
};

inline PlateExactSolution exact_plate_solution(double x, double y, double tension_x,
                                               double hole_radius, double nu, double mu) {
  const double r = std::hypot(x, y);
  const double R = hole_radius;
  if (r < R * (1.0 - 1e-12)) {
    throw DomainError("exact plate solution requested inside the hole");
  }
  const double th = std::atan2(y, x);
  const double c1 = std::cos(th), s1 = std::sin(th);
  const double c2 = std::cos(2 * th), s2 = std::sin(2 * th);
  const double c3 = std::cos(3 * th), s3 = std::sin(3 * th);
  const double c4 = std::cos(4 * th), s4 = std::sin(4 * th);
  const double R2 = (R / r) * (R / r);
  const double R4 = R2 * R2;

  PlateExactSolution s;
  const double k = tension_x * R / (8.0 * mu);
  s.ux = k * ((4.0 - 4.0 * nu) * (r / R) * c1 +
              2.0 * (R / r) * ((4.0 - 4.0 * nu) * c1 + c3) -
              2.0 * (R * R * R) / (r * r * r) * c3);
  s.uy = k * ((-4.0 * nu) * (r / R) * s1 +
              2.0 * (R / r) * ((4.0 * nu - 2.0) * s1 + s3) -
              2.0 * (R * R * R) / (r * r * r) * s3);
  s.sxx = tension_x * (1.0 - R2 * (1.5 * c2 + c4) + 1.5 * R4 * c4);
  s.syy = tension_x * (-R2 * (0.5 * c2 - c4) - 1.5 * R4 * c4);
  s.sxy = tension_x * (-R2 * (0.5 * s2 + s4) + 1.5 * R4 * s4);
  return s;
}

}  // namespace casiga
