#pragma once

// Stage-wise solution of the augmented Riccati equation:
//   1. P_yy from the controllable-block Riccati equation,
//   2. F_y from P_yy,
//   3. P_yz from a Sylvester equation in (A_yy + B_yu F_y, A_zz),
//   4. P_zz from the (z, z) block, a discrete Lyapunov equation in A_zz.
// The assembled P must agree with solve_full_riccati().

#include <cstddef>
#include <string_view>

#include "ramsey/matrix.hpp"
#include "ramsey/model.hpp"
#include "ramsey/riccati.hpp"

namespace ramsey {

/// Solves X = C + beta * M' X N by vectorization:
///   (I - beta N' (x) M') vec(X) = vec(C).
/// On a singular operator throws SingularMatrixError naming the eigenvalue
/// pair (lambda of M, mu of N) with beta * lambda * mu closest to 1.
Matrix solve_stein(const Matrix& M, const Matrix& N, const Matrix& C,
                   double beta, std::string_view what);

/// Controllable-block Riccati equation by fixed-point iteration from Q_yy.
/// Throws ConvergenceError when max_iter is exhausted. If `iterations` is
/// non-null it receives the number of updates applied.
Matrix solve_pyy(const AugmentedLQProblem& p, const RiccatiOptions& options = {},
                 std::size_t* iterations = nullptr);

/// F_y = -(R_uu + b B_yu' P_yy B_yu)^-1 b B_yu' P_yy A_yy
Matrix solve_fy(const AugmentedLQProblem& p, const Matrix& P_yy);

/// P_yz = Q_yz + b A_cl' P_yy A_yz + b A_cl' P_yz A_zz, A_cl = A_yy + B_yu F_y
Matrix solve_pyz(const AugmentedLQProblem& p, const Matrix& P_yy,
                 const Matrix& F_y);

/// Constant term of the P_zz equation, i.e. everything in the (z, z) block
/// of the Riccati right-hand side except b A_zz' P_zz A_zz.
Matrix pzz_constant(const AugmentedLQProblem& p, const Matrix& P_yy,
                    const Matrix& P_yz);

/// P_zz = pzz_constant + b A_zz' P_zz A_zz, symmetrized.
Matrix solve_pzz(const AugmentedLQProblem& p, const Matrix& P_yy,
                 const Matrix& P_yz);

/// Runs the four stages and assembles the full symmetric P.
RiccatiSolution assemble(const AugmentedLQProblem& p,
                         const RiccatiOptions& options = {});

}  // namespace ramsey
