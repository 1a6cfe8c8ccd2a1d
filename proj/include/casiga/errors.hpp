#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace casiga {

/// Parametric coordinate outside the knot range, invalid enum value, etc.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Degenerate or inverted geometry map. Carries the offending element id
/// (-1 when evaluated outside an element loop) and the parametric point.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(const std::string& what, long element, std::vector<double> xi)
      : std::runtime_error(format(what, element, xi)),
        element_(element),
        xi_(std::move(xi)) {}

  long element() const { return element_; }
  const std::vector<double>& parametric_point() const { return xi_; }

 private:
  static std::string format(const std::string& what, long element,
                            const std::vector<double>& xi) {
    std::ostringstream os;
    os << what << " (element " << element << ", xi = [";
    for (std::size_t k = 0; k < xi.size(); ++k) os << (k ? ", " : "") << xi[k];
    os << "])";
    return os.str();
  }

  long element_;
  std::vector<double> xi_;
};

/// Linear solver breakdown. Residual history documents the failure; a
/// non-converging SPD solve signals a formulation bug upstream.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> residual_history)
      : std::runtime_error(what), residuals_(std::move(residual_history)) {}

  const std::vector<double>& residual_history() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// Invalid run configuration (bad enumeration, out-of-range level, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace casiga
