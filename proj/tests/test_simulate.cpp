#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ramsey/error.hpp"
#include "ramsey/simulate.hpp"
#include "ramsey/welfare.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

namespace ramsey {
namespace {

struct Solved {
  AugmentedLQProblem p;
  RiccatiSolution sol;
  FeedbackGain F;
};

Solved solve(const AugmentedLQProblem& p) {
  RiccatiSolution sol = solve_full_riccati(p);
  FeedbackGain F = compute_gain(p, sol);
  return {p, std::move(sol), std::move(F)};
}

const Matrix kNoK(0, 1);

// Inflation is a mix of the closed-loop mode and the shock mode 0.8^t.
TEST(Simulate, NkpcImpactAndTwoModePath) {
  const Solved s = solve(build_nkpc());
  const OracleComparison o =
      oracle_welfare(s.p, s.sol, s.F, kNoK, Matrix::scalar(1.0));
  const Trajectory& tr = o.trajectory;
  EXPECT_NEAR(tr.y_path(0, 0), testing::kGoldenAnchor, 1e-3);

  const auto cl = closed_loop_eigenvalues(s.p, s.F);
  ASSERT_EQ(cl.size(), 1u);
  const double lam = cl[0].real(), rho = 0.8;
  // y_t = a lam^t + b rho^t, fitted from t = 0, 1.
  const double y0 = tr.y_path(0, 0), y1 = tr.y_path(1, 0);
  const double b = (y1 - lam * y0) / (rho - lam);
  const double a = y0 - b;
  for (std::size_t t = 2; t <= 60; ++t) {
    const double fit = a * std::pow(lam, t) + b * std::pow(rho, t);
    EXPECT_NEAR(tr.y_path(t, 0), fit, 1e-12) << t;
  }
}

TEST(Simulate, ShockPathIsExactAutoregression) {
  const Solved s = solve(build_nkpc());
  const Trajectory tr =
      simulate_closed_loop(s.p, s.F, kNoK, Matrix::scalar(1), Matrix::scalar(0.3), 40);
  double z = 1.0;
  for (std::size_t t = 0; t <= 40; ++t) {
    EXPECT_EQ(tr.z_path(t, 0), z);
    z *= 0.8;
  }
}

TEST(Simulate, ZeroStartStaysAtZero) {
  const Solved s = solve(build_nkpc());
  const Trajectory tr =
      simulate_closed_loop(s.p, s.F, kNoK, Matrix::scalar(0), Matrix::scalar(0), 25);
  EXPECT_EQ(max_abs(tr.y_path), 0.0);
  EXPECT_EQ(max_abs(tr.u_path), 0.0);
  EXPECT_EQ(discounted_loss(s.p, tr), 0.0);
}

TEST(Simulate, ZeroHorizonHasOnePeriod) {
  const Solved s = solve(build_nkpc());
  const Trajectory tr =
      simulate_closed_loop(s.p, s.F, kNoK, Matrix::scalar(1), Matrix::scalar(0.65), 0);
  EXPECT_EQ(tr.y_path.rows(), 1u);
  ASSERT_EQ(tr.period_loss.size(), 1u);
  EXPECT_EQ(tr.discounted_cumulative[0], tr.period_loss[0]);
  EXPECT_TRUE(bellman_residuals(s.p, s.sol.P, tr, 50).empty());
}

TEST(Simulate, CumulativeLossMatchesRecomputation) {
  const Solved s = solve(build_nkpc());
  const Trajectory tr =
      simulate_closed_loop(s.p, s.F, kNoK, Matrix::scalar(1), Matrix::scalar(0.65), 30);
  EXPECT_NEAR(tr.discounted_cumulative.back(), discounted_loss(s.p, tr), 1e-14);
  for (std::size_t t = 1; t <= 30; ++t) {
    EXPECT_GE(tr.discounted_cumulative[t], tr.discounted_cumulative[t - 1]);
  }
}

TEST(Simulate, NonFiniteStateRaisesWithPeriod) {
  const auto p = testing::scalar_problem(1e200, 0, 0.5, 1, 1, 0, 0, 1, 0.99);
  const FeedbackGain F{Matrix::scalar(0), Matrix::scalar(0)};
  try {
    simulate_closed_loop(p, F, kNoK, Matrix::scalar(0), Matrix::scalar(1e200), 10);
    FAIL() << "expected InstabilityError";
  } catch (const InstabilityError& e) {
    EXPECT_EQ(e.period(), 0u);
  }
  try {
    simulate_closed_loop(p, F, kNoK, Matrix::scalar(0), Matrix::scalar(1), 10);
    FAIL() << "expected InstabilityError";
  } catch (const InstabilityError& e) {
    EXPECT_EQ(e.period(), 1u);
  }
}

TEST(Simulate, ShapeErrors) {
  const Solved s = solve(build_nkpc());
  EXPECT_THROW(
      simulate_closed_loop(s.p, s.F, kNoK, Matrix(2, 1), Matrix::scalar(0), 5),
      DimensionError);
}

TEST(Oracle, NkpcDiscountedLossMatchesWelfare) {
  const Solved s = solve(build_nkpc());
  const OracleComparison o = oracle_welfare(s.p, s.sol, s.F, kNoK, Matrix::scalar(1));
  EXPECT_NEAR(o.W_sim, testing::kGoldenWelfare, 5e-3);
  EXPECT_LE(o.gap, 1e-8 * std::fabs(o.W_riccati));
  EXPECT_EQ(o.trajectory.horizon, kDefaultHorizon);
}

TEST(Oracle, GapShrinksWithHorizon) {
  const Solved s = solve(build_nkpc());
  const double short_gap =
      oracle_welfare(s.p, s.sol, s.F, kNoK, Matrix::scalar(1), 10).gap;
  const double long_gap =
      oracle_welfare(s.p, s.sol, s.F, kNoK, Matrix::scalar(1), 200).gap;
  EXPECT_GT(short_gap, long_gap);
  EXPECT_GT(short_gap, 1e-3);
}

// Truncation error is the discounted tail of a geometric sequence.
TEST(Oracle, TailDecaysGeometrically) {
  const Solved s = solve(build_nkpc());
  const double g20 = oracle_welfare(s.p, s.sol, s.F, kNoK, Matrix::scalar(1), 20).gap;
  const double g40 = oracle_welfare(s.p, s.sol, s.F, kNoK, Matrix::scalar(1), 40).gap;
  // Slowest mode is beta * 0.8^2 per period.
  EXPECT_NEAR(g40 / g20, std::pow(0.99 * 0.64, 20), 0.2 * std::pow(0.99 * 0.64, 20));
}

TEST(Oracle, RequiresConvergedSolution) {
  const AugmentedLQProblem p = build_nkpc();
  RiccatiSolution sol = solve_full_riccati(p);
  const FeedbackGain F = compute_gain(p, sol);
  sol.converged = false;
  EXPECT_THROW(oracle_welfare(p, sol, F, kNoK, Matrix::scalar(1)), ConvergenceError);
}

TEST(Bellman, NkpcIdentityHolds) {
  const Solved s = solve(build_nkpc());
  const OracleComparison o = oracle_welfare(s.p, s.sol, s.F, kNoK, Matrix::scalar(1));
  const auto res = bellman_residuals(s.p, s.sol.P, o.trajectory, 50);
  ASSERT_EQ(res.size(), 51u);
  for (double r : res) EXPECT_LE(r, 1e-8);
}

// Holds from any starting point, not only the anchor.
TEST(Bellman, RandomInstancesAndStarts) {
  std::mt19937_64 rng(606);
  for (int i = 0; i < 30; ++i) {
    const Solved s = solve(testing::random_stabilizable_instance(rng));
    const Partition& part = s.p.partition();
    const Matrix k0 = testing::gaussian(rng, part.n_k, 1, 1.0);
    const Matrix x0 = testing::gaussian(rng, part.n_x, 1, 1.0);
    const Matrix z0 = testing::gaussian(rng, part.n_z, 1, 1.0);
    const Trajectory tr = simulate_closed_loop(s.p, s.F, k0, z0, x0, 60);
    const double scale = 1.0 + quadratic_form(tr.state(0), s.sol.P);
    for (double r : bellman_residuals(s.p, s.sol.P, tr, 50)) {
      EXPECT_LE(r, 1e-8 * scale) << i;
    }
  }
}

TEST(Bellman, WrongMatrixIsDetected) {
  const Solved s = solve(build_nkpc());
  const OracleComparison o = oracle_welfare(s.p, s.sol, s.F, kNoK, Matrix::scalar(1));
  Matrix P = s.sol.P;
  P(1, 1) = 0.0;
  const auto res = bellman_residuals(s.p, P, o.trajectory, 5);
  EXPECT_GT(res.front(), 1e-2);
}

}  // namespace
}  // namespace ramsey
