#pragma once

// Full augmented discounted Riccati equation
//
//   P = Q + b A'PA - b^2 A'PB (R + b B_yu' P_yy B_yu)^-1 B'PA
//
// over the complete (y, z) state, solved by fixed-point iteration, plus the
// optimal rule u = F_y y + F_z z and the Hamiltonian pencil used to certify
// the solution.

#include <complex>
#include <cstddef>
#include <vector>

#include "ramsey/matrix.hpp"
#include "ramsey/model.hpp"

namespace ramsey {

struct RiccatiOptions {
  double tol = 1e-12;             ///< max-abs residual accepted as converged
  std::size_t max_iter = 100000;
  double damping = 1.0;           ///< P <- (1-d) P + d RHS(P); 1 is undamped
};

struct RiccatiSolution {
  Matrix P;             ///< (n_y + n_z) square, symmetric
  Partition partition;
  std::size_t iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;

  Matrix P_yy() const;
  Matrix P_yz() const;
  Matrix P_zz() const;
};

struct FeedbackGain {
  Matrix F_y;  ///< n_u x n_y
  Matrix F_z;  ///< n_u x n_z
};

/// R_uu + beta B_yu' P_yy B_yu, the matrix inverted in every Riccati step.
/// Only the y block of P enters because the lower rows of B are zero.
Matrix riccati_inner(const AugmentedLQProblem& p, const Matrix& P_yy);

/// Right-hand side of the full Riccati equation evaluated at P.
Matrix riccati_rhs(const AugmentedLQProblem& p, const Matrix& P);

/// max |RHS(P) - P|
double riccati_residual(const AugmentedLQProblem& p, const Matrix& P);

/// Iterates from P = Q. Never throws on non-convergence; check `converged`.
/// Throws SingularMatrixError if the inner matrix becomes singular.
RiccatiSolution solve_full_riccati(const AugmentedLQProblem& p,
                                   const RiccatiOptions& options = {});

/// [F_y F_z] = -(R_uu + b B_yu'P_yy B_yu)^-1 b B_yu' [P_yy A_yy, P_yy A_yz + P_yz A_zz]
FeedbackGain compute_gain(const AugmentedLQProblem& p, const RiccatiSolution& sol);

/// Eigenvalues of A_yy + B_yu F_y.
std::vector<std::complex<double>> closed_loop_eigenvalues(
    const AugmentedLQProblem& p, const FeedbackGain& F);

/// L [s'; m'] = N [s; m] with state s = (y, z) and costate m = (mu, nu).
struct HamiltonianPencil {
  Matrix L;  ///< [I, -b B R^-1 B'; 0, b A']
  Matrix N;  ///< [A, 0; Q, I]
};

HamiltonianPencil build_pencil(const AugmentedLQProblem& p);

struct MirrorPair {
  std::size_t first = 0;
  std::size_t second = 0;
  double mismatch = 0.0;  ///< |b * lambda_first * lambda_second - 1|
};

struct MirrorReport {
  std::vector<std::complex<double>> roots;  ///< eig(L^-1 N), original units
  std::vector<double> moduli;
  std::vector<MirrorPair> pairs;
  std::vector<std::size_t> unpaired;
  bool pass = false;

  /// True if some root lies within tol of `value`.
  bool contains(std::complex<double> value, double tol) const;
};

/// Pairs every nonzero root lambda with a distinct root mu such that
/// |b lambda mu - 1| <= tol (greedy nearest match, each root used once).
/// Throws SingularMatrixError if L is singular.
MirrorReport pencil_mirror_check(const HamiltonianPencil& pencil, double beta,
                                 double tol);

}  // namespace ramsey
