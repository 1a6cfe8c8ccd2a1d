#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "casiga/assembly.hpp"
#include "casiga/errors.hpp"

namespace casiga {

struct Solution {
  Eigen::VectorXd displacement;
  double relative_residual = 0.0;
  bool used_direct = true;
  long iterations = 0;  // 0 for the direct factorization
};

/// Solve the constrained SPD system. Default is a sparse symmetric direct
/// factorization; near-incompressible materials make K ill-conditioned, so
/// the direct solve keeps iteration tolerances out of convergence studies.
/// Falls back to diagonally preconditioned CG at relative tolerance 1e-10.
template <int Dim>
Solution solve_spd(const SparseSystem<Dim>& sys) {
  if (!sys.constrained) {
    throw DomainError("solve_spd requires a constrained system");
  }
  Solution sol;
  const double fnorm = sys.load.norm();
  if (fnorm == 0.0) {
    sol.displacement = Eigen::VectorXd::Zero(sys.load.size());
    return sol;
  }

  std::vector<double> residuals;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.stiffness);
  if (ldlt.info() == Eigen::Success) {
    sol.displacement = ldlt.solve(sys.load);
    sol.relative_residual =
        (sys.stiffness * sol.displacement - sys.load).norm() / fnorm;
    if (sol.relative_residual <= 1e-10) return sol;
    residuals.push_back(sol.relative_residual);
  }

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.setTolerance(1e-10);
  cg.setMaxIterations(50 * sys.load.size());
  cg.compute(sys.stiffness);
  sol.displacement = cg.solve(sys.load);
  sol.relative_residual = (sys.stiffness * sol.displacement - sys.load).norm() / fnorm;
  sol.used_direct = false;
  sol.iterations = cg.iterations();
  residuals.push_back(sol.relative_residual);
  if (sol.relative_residual > 1e-10) {
    throw SolverError("SPD solve did not converge (indefinite system?)", residuals);
  }
  return sol;
}

}  // namespace casiga
