#pragma once

// Deterministic closed-loop paths under the optimal rule (shock innovations
// set to zero) and their discounted loss. The discounted loss over a long
// horizon is an independent check on the closed-form welfare.

#include <cstddef>
#include <vector>

#include "ramsey/matrix.hpp"
#include "ramsey/model.hpp"
#include "ramsey/riccati.hpp"

namespace ramsey {

inline constexpr std::size_t kDefaultHorizon = 200;

/// Paths are stored one row per period t = 0..T.
struct Trajectory {
  std::size_t horizon = 0;
  Matrix y_path;  ///< (T+1) x n_y, columns (k, x)
  Matrix z_path;  ///< (T+1) x n_z
  Matrix u_path;  ///< (T+1) x n_u
  std::vector<double> period_loss;
  std::vector<double> discounted_cumulative;  ///< running sum of beta^t loss_t

  Matrix y(std::size_t t) const;
  Matrix z(std::size_t t) const;
  Matrix u(std::size_t t) const;
  /// (y_t, z_t) stacked.
  Matrix state(std::size_t t) const;
};

/// y' Q_yy y + 2 y' Q_yz z + z' Q_zz z + u' R_uu u
double period_loss(const AugmentedLQProblem& p, const Matrix& y, const Matrix& z,
                   const Matrix& u);

/// Starts from y_0 = (k_0, x_0) and z_0 and applies u_t = F_y y_t + F_z z_t.
/// Throws InstabilityError at the first period with a non-finite value.
Trajectory simulate_closed_loop(const AugmentedLQProblem& p, const FeedbackGain& F,
                                const Matrix& k0, const Matrix& z0,
                                const Matrix& x0, std::size_t horizon);

/// sum_{t=0}^{T} beta^t loss_t, recomputed from the stored paths.
double discounted_loss(const AugmentedLQProblem& p, const Trajectory& traj);

struct OracleComparison {
  double W_sim = 0.0;
  double W_riccati = 0.0;
  double gap = 0.0;
  Trajectory trajectory;
};

/// Simulates from the Ramsey anchor x_0 and compares -discounted_loss with
/// the closed-form welfare of sol.P.
OracleComparison oracle_welfare(const AugmentedLQProblem& p,
                                const RiccatiSolution& sol, const FeedbackGain& F,
                                const Matrix& k0, const Matrix& z0,
                                std::size_t horizon = kDefaultHorizon);

/// |V_t - (-loss_t + beta V_{t+1})| for t = 0..min(t_max, T-1), where
/// V_t = -(y_t, z_t)' P (y_t, z_t).
std::vector<double> bellman_residuals(const AugmentedLQProblem& p, const Matrix& P,
                                      const Trajectory& traj, std::size_t t_max);

}  // namespace ramsey
