#pragma once

// Dense factorizations (LU, SVD, eigenvalues) backed by Eigen. Everything
// here takes and returns ramsey::Matrix so callers never see Eigen types.

#include <complex>
#include <string_view>
#include <vector>

#include "ramsey/matrix.hpp"

namespace ramsey::linalg {

/// Reciprocal condition estimate of a square matrix in the 1-norm.
/// Returns 0 for an exactly singular matrix and 1 for an empty one.
double rcond(const Matrix& a);

/// Solves A X = B by LU with partial pivoting. Throws SingularMatrixError
/// naming `what` when rcond(A) < min_rcond.
Matrix solve(const Matrix& a, const Matrix& b, std::string_view what,
             double min_rcond = 1e-14);

/// Solves A X = B for symmetric positive definite A via Cholesky. Throws
/// SingularMatrixError naming `what` if A is not numerically PD.
Matrix solve_spd(const Matrix& a, const Matrix& b, std::string_view what);

Matrix inverse(const Matrix& a, std::string_view what,
               double min_rcond = 1e-14);

/// Singular values in descending order.
std::vector<double> singular_values(const Matrix& a);

/// Count of singular values above rel_tol * sigma_max.
std::size_t numerical_rank(const Matrix& a, double rel_tol);

/// Eigenvalues of a general real square matrix. Throws EigenError if the
/// QR iteration fails.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

/// Eigenvalues of a symmetric matrix in ascending order.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

/// max |lambda_i|, 0 for an empty matrix.
double spectral_radius(const Matrix& a);

}  // namespace ramsey::linalg
