#pragma once

// Augmented discounted LQ problem: controllable block y = (k, x) driven by
// the instruments u, forcing block z following its own autoregression.
//
//   y' = A_yy y + A_yz z + B_yu u
//   z' = A_zz z
//   loss_t = y'Q_yy y + 2 y'Q_yz z + z'Q_zz z + u'R_uu u
//
// Internal state ordering is always (k, x, z).

#include <cstddef>
#include <string>
#include <vector>

#include "ramsey/matrix.hpp"

namespace ramsey {

/// Eigenvalue floor for the Q_yy positive semi-definiteness test.
inline constexpr double kSymmetryTolerance = 1e-10;
/// Relative singular-value cutoff for the controllability rank.
inline constexpr double kRankTolerance = 1e-10;

struct Partition {
  std::size_t n_k = 0;  ///< controllable predetermined
  std::size_t n_x = 0;  ///< jump (non-predetermined)
  std::size_t n_z = 0;  ///< non-controllable forcing
  std::size_t n_u = 0;  ///< instruments

  std::size_t n_y() const noexcept { return n_k + n_x; }
  std::size_t n_state() const noexcept { return n_k + n_x + n_z; }

  // Offsets of each sub-vector in the (k, x, z) state.
  std::size_t k_offset() const noexcept { return 0; }
  std::size_t x_offset() const noexcept { return n_k; }
  std::size_t z_offset() const noexcept { return n_k + n_x; }

  /// Throws ValidationError unless n_y >= 1, n_z >= 1 and n_u >= 1.
  void validate() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Raw block data as supplied by a caller or a model file.
struct ProblemBlocks {
  Matrix A_yy, A_yz, A_zz, B_yu;
  Matrix Q_yy, Q_yz, Q_zz, R_uu;

  friend bool operator==(const ProblemBlocks&, const ProblemBlocks&) = default;
};

/// Validated, immutable problem. Obtain one through build_problem().
class AugmentedLQProblem {
 public:
  const Partition& partition() const noexcept { return partition_; }
  double beta() const noexcept { return beta_; }
  const ProblemBlocks& blocks() const noexcept { return blocks_; }

  const Matrix& A_yy() const noexcept { return blocks_.A_yy; }
  const Matrix& A_yz() const noexcept { return blocks_.A_yz; }
  const Matrix& A_zz() const noexcept { return blocks_.A_zz; }
  const Matrix& B_yu() const noexcept { return blocks_.B_yu; }
  const Matrix& Q_yy() const noexcept { return blocks_.Q_yy; }
  const Matrix& Q_yz() const noexcept { return blocks_.Q_yz; }
  const Matrix& Q_zz() const noexcept { return blocks_.Q_zz; }
  const Matrix& R_uu() const noexcept { return blocks_.R_uu; }

  /// [A_yy A_yz; 0 A_zz]
  Matrix A() const;
  /// [B_yu; 0]
  Matrix B() const;
  /// [Q_yy Q_yz; Q_yz' Q_zz]
  Matrix Q() const;

  friend bool operator==(const AugmentedLQProblem&,
                         const AugmentedLQProblem&) = default;

 private:
  friend AugmentedLQProblem build_problem(ProblemBlocks, double, Partition);
  AugmentedLQProblem(Partition partition, double beta, ProblemBlocks blocks)
      : partition_(partition), beta_(beta), blocks_(std::move(blocks)) {}

  Partition partition_;
  double beta_ = 1.0;
  ProblemBlocks blocks_;
};

/// Checks shapes, finiteness and beta in (0, 1]; symmetrizes Q_yy, Q_zz and
/// R_uu, then requires Q_yy PSD (min eigenvalue >= -kSymmetryTolerance) and
/// R_uu strictly PD. Throws DimensionError or ValidationError.
AugmentedLQProblem build_problem(ProblemBlocks blocks, double beta,
                                 Partition partition);

struct ValidationReport {
  std::size_t controllability_rank = 0;
  bool controllable = false;
  std::vector<double> shock_eigenvalue_moduli;
  bool shock_stable = false;
  std::vector<std::string> messages;

  bool assumptions_hold() const noexcept { return controllable && shock_stable; }
};

/// [sqrt(b) B, b A B, b^(3/2) A^2 B, ...] with n_y column blocks.
Matrix controllability_matrix(const AugmentedLQProblem& p);

/// Kalman rank test on the discount-scaled (A_yy, B_yu) pair. Fills the
/// controllability fields of the report only.
ValidationReport check_controllability(const AugmentedLQProblem& p,
                                       double tol = kRankTolerance);

/// Compares every |eig(A_zz)| against 1/sqrt(beta). Fills the shock fields
/// of the report only.
ValidationReport check_shock_stability(const AugmentedLQProblem& p);

/// Both checks merged into one report.
ValidationReport validate_assumptions(const AugmentedLQProblem& p,
                                      double tol = kRankTolerance);

/// The problem multiplied through by sqrt(beta) so that the undiscounted
/// regulator formulas apply.
struct ScaledSystem {
  Matrix A_tilde;  ///< sqrt(beta) * A, (n_y + n_z) square
  Matrix B_tilde;  ///< sqrt(beta) * B, lower n_z rows zero
  AugmentedLQProblem source;

  /// Same Q and R with the scaled transition and beta = 1.
  AugmentedLQProblem as_undiscounted() const;
};

ScaledSystem scale_by_sqrt_beta(const AugmentedLQProblem& p);

/// New-Keynesian Phillips curve with an AR(1) cost-push shock: inflation is
/// the single jump variable, the output gap the instrument.
AugmentedLQProblem build_nkpc(double beta, double kappa, double epsilon,
                              double rho);

struct NkpcCalibration {
  double beta = 0.99;
  double kappa = 0.1275;
  double epsilon = 6.0;
  double rho = 0.8;
};

inline AugmentedLQProblem build_nkpc(const NkpcCalibration& c = {}) {
  return build_nkpc(c.beta, c.kappa, c.epsilon, c.rho);
}

}  // namespace ramsey
