#pragma once

// Ramsey welfare: the jump variables x_0 are not given, so the planner sets
// their costate to zero at t = 0. That pins x_0 = G_k k_0 + G_z z_0 and
// reduces the value function to a quadratic form in (k_0, z_0) whose matrix
// is the Schur complement of P_xx in P.

#include "ramsey/matrix.hpp"
#include "ramsey/model.hpp"

namespace ramsey {

/// rcond(P_xx) below this raises SingularMatrixError.
inline constexpr double kAnchorMinRcond = 1e-12;

struct AnchorMap {
  Matrix G_k;  ///< n_x x n_k
  Matrix G_z;  ///< n_x x n_z

  /// x_0 = G_k k_0 + G_z z_0
  Matrix x0(const Matrix& k0, const Matrix& z0) const;
};

struct WelfareReport {
  AnchorMap anchor;
  Matrix S;        ///< (n_k + n_z) square, ordered (k, z)
  double welfare = 0.0;
  Matrix x0;       ///< anchored jump values for the supplied (k_0, z_0)
};

/// Permutation T with T * s_kxz = s_xkz, i.e. (k, x, z) -> (x, k, z).
Matrix xkz_permutation(const Partition& partition);

/// G_k = -P_xx^-1 P_xk, G_z = -P_xx^-1 P_xz. P is in (k, x, z) order.
AnchorMap anchor_map(const Matrix& P, const Partition& partition);

/// Schur complement of P_xx, restricted to the (k, z) rows and columns.
Matrix welfare_matrix(const Matrix& P, const Partition& partition);

/// -(k_0, z_0)' S (k_0, z_0)
double welfare_value(const Matrix& S, const Matrix& k0, const Matrix& z0);

/// Welfare recomputed with the P_zz block overwritten by zeros. This is the
/// value obtained when only the P_yy and P_yz blocks are known.
double naive_welfare(const Matrix& P, const Partition& partition,
                     const Matrix& k0, const Matrix& z0);

WelfareReport evaluate_welfare(const Matrix& P, const Partition& partition,
                               const Matrix& k0, const Matrix& z0);

}  // namespace ramsey
