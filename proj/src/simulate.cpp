#include "ramsey/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ramsey/error.hpp"
#include "ramsey/welfare.hpp"

namespace ramsey {
namespace {

Matrix row_as_column(const Matrix& path, std::size_t t) {
  const auto r = path.row(t);
  return Matrix::column(r);
}

void require_column(const Matrix& v, std::size_t n, const char* name) {
  if (v.rows() != n || v.cols() != 1) {
    throw DimensionError(std::string(name) + " must be a " + std::to_string(n) +
                         "x1 column");
  }
}

}  // namespace

Matrix Trajectory::y(std::size_t t) const { return row_as_column(y_path, t); }
Matrix Trajectory::z(std::size_t t) const { return row_as_column(z_path, t); }
Matrix Trajectory::u(std::size_t t) const { return row_as_column(u_path, t); }
Matrix Trajectory::state(std::size_t t) const { return vcat(y(t), z(t)); }

double period_loss(const AugmentedLQProblem& p, const Matrix& y, const Matrix& z,
                   const Matrix& u) {
  return quadratic_form(y, p.Q_yy()) + 2.0 * bilinear(y, p.Q_yz(), z) +
         quadratic_form(z, p.Q_zz()) + quadratic_form(u, p.R_uu());
}

Trajectory simulate_closed_loop(const AugmentedLQProblem& p, const FeedbackGain& F,
                                const Matrix& k0, const Matrix& z0,
                                const Matrix& x0, std::size_t horizon) {
  const Partition& part = p.partition();
  require_column(k0, part.n_k, "k0");
  require_column(x0, part.n_x, "x0");
  require_column(z0, part.n_z, "z0");
  if (F.F_y.rows() != part.n_u || F.F_y.cols() != part.n_y() ||
      F.F_z.rows() != part.n_u || F.F_z.cols() != part.n_z) {
    throw DimensionError("simulate_closed_loop: gain shape does not match problem");
  }

  Trajectory tr;
  tr.horizon = horizon;
  tr.y_path = Matrix(horizon + 1, part.n_y());
  tr.z_path = Matrix(horizon + 1, part.n_z);
  tr.u_path = Matrix(horizon + 1, part.n_u);
  tr.period_loss.reserve(horizon + 1);
  tr.discounted_cumulative.reserve(horizon + 1);

  Matrix y = vcat(k0, x0);
  Matrix z = z0;
  double discount = 1.0;
  double cumulative = 0.0;
  for (std::size_t t = 0;; ++t) {
    const Matrix u = F.F_y * y + F.F_z * z;
    const double loss = period_loss(p, y, z, u);
    if (!y.all_finite() || !z.all_finite() || !u.all_finite() ||
        !std::isfinite(loss)) {
      throw InstabilityError(
          "simulate_closed_loop: non-finite state at period " + std::to_string(t), t);
    }
    tr.y_path.set_block(t, 0, y.transpose());
    tr.z_path.set_block(t, 0, z.transpose());
    tr.u_path.set_block(t, 0, u.transpose());
    cumulative += discount * loss;
    tr.period_loss.push_back(loss);
    tr.discounted_cumulative.push_back(cumulative);
    if (t == horizon) break;

    y = p.A_yy() * y + p.A_yz() * z + p.B_yu() * u;
    z = p.A_zz() * z;
    discount *= p.beta();
  }
  return tr;
}

double discounted_loss(const AugmentedLQProblem& p, const Trajectory& traj) {
  double total = 0.0;
  double discount = 1.0;
  for (std::size_t t = 0; t <= traj.horizon; ++t) {
    total += discount * period_loss(p, traj.y(t), traj.z(t), traj.u(t));
    discount *= p.beta();
  }
  return total;
}

OracleComparison oracle_welfare(const AugmentedLQProblem& p,
                                const RiccatiSolution& sol, const FeedbackGain& F,
                                const Matrix& k0, const Matrix& z0,
                                std::size_t horizon) {
  if (!sol.converged) {
    throw ConvergenceError("oracle_welfare: Riccati solution did not converge");
  }
  const WelfareReport w = evaluate_welfare(sol.P, p.partition(), k0, z0);
  OracleComparison out;
  out.trajectory = simulate_closed_loop(p, F, k0, z0, w.x0, horizon);
  out.W_sim = -discounted_loss(p, out.trajectory);
  out.W_riccati = w.welfare;
  out.gap = std::fabs(out.W_sim - out.W_riccati);
  return out;
}

std::vector<double> bellman_residuals(const AugmentedLQProblem& p, const Matrix& P,
                                      const Trajectory& traj, std::size_t t_max) {
  std::vector<double> res;
  if (traj.horizon == 0) return res;
  const std::size_t last = std::min(t_max, traj.horizon - 1);
  double v_next = -quadratic_form(traj.state(0), P);
  for (std::size_t t = 0; t <= last; ++t) {
    const double v = v_next;
    v_next = -quadratic_form(traj.state(t + 1), P);
    res.push_back(std::fabs(v - (-traj.period_loss[t] + p.beta() * v_next)));
  }
  return res;
}

}  // namespace ramsey
