#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "casiga/errors.hpp"

namespace casiga {

/// Basis degree used throughout this library. All element technologies here
/// are formulated for quadratic NURBS.
inline constexpr int kDegree = 2;

/// Values and first derivatives of the kDegree+1 univariate B-spline basis
/// functions that are nonzero on one knot span. Entry j corresponds to basis
/// function span - kDegree + j.
struct BasisValues {
  std::array<double, kDegree + 1> value;
  std::array<double, kDegree + 1> deriv;
};

/// Open quadratic knot vector with simple interior knots (C1 meshes).
class KnotVector {
 public:
  KnotVector(int degree, std::vector<double> knots)
      : degree_(degree), knots_(std::move(knots)) {
    validate();
    for (int i = 0; i + 1 < static_cast<int>(knots_.size()); ++i) {
      if (knots_[i + 1] > knots_[i]) element_spans_.push_back(i);
    }
  }

  int degree() const { return degree_; }
  const std::vector<double>& knots() const { return knots_; }

  /// Number of basis functions, n = #knots - degree - 1.
  int num_basis() const {
    return static_cast<int>(knots_.size()) - degree_ - 1;
  }

  int num_elements() const { return static_cast<int>(element_spans_.size()); }

  /// Span indices of the nonzero knot intervals, in parametric order.
  const std::vector<int>& element_spans() const { return element_spans_; }

  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }

  /// Unique knot values (element breakpoints).
  std::vector<double> breakpoints() const {
    std::vector<double> b{knots_.front()};
    for (double k : knots_) {
      if (k > b.back()) b.push_back(k);
    }
    return b;
  }

  /// Span i with knots[i] <= xi < knots[i+1]; the last nonzero span when
  /// xi equals the final knot.
  int find_span(double xi) const {
    if (xi < knots_.front() || xi > knots_.back()) {
      throw DomainError("parametric coordinate outside knot range");
    }
    const int n = num_basis();
    if (xi >= knots_[n]) return n - 1;
    int lo = degree_;
    int hi = n;
    while (lo + 1 < hi) {
      const int mid = (lo + hi) / 2;
      if (xi < knots_[mid]) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return lo;
  }

  /// Cox-de Boor evaluation of the nonzero basis functions on `span`.
  /// Valid for any xi inside the closed span, including its endpoints, so
  /// corner tables can be built per element with a forced span.
  BasisValues eval_basis(int span, double xi) const {
    std::array<double, kDegree + 1> left{};
    std::array<double, kDegree + 1> right{};
    std::array<std::array<double, kDegree + 1>, kDegree + 1> ndu{};
    ndu[0][0] = 1.0;
    for (int j = 1; j <= degree_; ++j) {
      left[j] = xi - knots_[span + 1 - j];
      right[j] = knots_[span + j] - xi;
      double saved = 0.0;
      for (int r = 0; r < j; ++r) {
        ndu[j][r] = right[r + 1] + left[j - r];
        const double temp = ndu[r][j - 1] / ndu[j][r];
        ndu[r][j] = saved + right[r + 1] * temp;
        saved = left[j - r] * temp;
      }
      ndu[j][j] = saved;
    }
    BasisValues out;
    for (int r = 0; r <= degree_; ++r) out.value[r] = ndu[r][degree_];
    for (int r = 0; r <= degree_; ++r) {
      double d = 0.0;
      if (r >= 1) d = ndu[r - 1][degree_ - 1] / ndu[degree_][r - 1];
      if (r <= degree_ - 1) d -= ndu[r][degree_ - 1] / ndu[degree_][r];
      out.deriv[r] = d * degree_;
    }
    return out;
  }

  BasisValues eval_basis(double xi) const {
    return eval_basis(find_span(xi), xi);
  }

  /// Knot vector after inserting xi (basis bookkeeping only; control-point
  /// updates live in NurbsPatch::insert_knot).
  KnotVector inserted(double xi) const {
    const int k = find_span(xi);
    if (knots_[k + 1] <= knots_[k]) {
      throw DomainError("knot insertion requires a nonzero span");
    }
    if (xi == knots_[k]) {
      throw DomainError(
          "knot insertion at an existing knot would break C1 continuity");
    }
    std::vector<double> nk = knots_;
    nk.insert(nk.begin() + k + 1, xi);
    return KnotVector(degree_, std::move(nk));
  }

 private:
  void validate() const {
    if (degree_ != kDegree) {
      throw DomainError("only quadratic knot vectors are supported");
    }
    const int n = num_basis();
    if (n < degree_ + 1) throw DomainError("too few knots");
    if (!std::is_sorted(knots_.begin(), knots_.end())) {
      throw DomainError("knots must be nondecreasing");
    }
    for (int i = 0; i <= degree_; ++i) {
      if (knots_[i] != knots_.front() ||
          knots_[knots_.size() - 1 - i] != knots_.back()) {
        throw DomainError("knot vector must be open (end multiplicity 3)");
      }
    }
    // interior multiplicity <= 1
    for (std::size_t i = degree_ + 1; i + degree_ + 1 < knots_.size(); ++i) {
      if (knots_[i] == knots_[i + 1]) {
        throw DomainError("repeated interior knots are out of scope");
      }
    }
  }

  int degree_;
  std::vector<double> knots_;
  std::vector<int> element_spans_;
};

}  // namespace casiga
