#include "ramsey/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ramsey/error.hpp"
#include "ramsey/linalg.hpp"

namespace ramsey {
namespace {

constexpr const char* kInnerName = "R_uu + beta B_yu' P_yy B_yu";

void require_square_state(const AugmentedLQProblem& p, const Matrix& P) {
  const std::size_t n = p.partition().n_state();
  if (P.rows() != n || P.cols() != n) {
    throw DimensionError("P must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
}

}  // namespace

Matrix RiccatiSolution::P_yy() const {
  return P.block(0, 0, partition.n_y(), partition.n_y());
}

Matrix RiccatiSolution::P_yz() const {
  return P.block(0, partition.n_y(), partition.n_y(), partition.n_z);
}

Matrix RiccatiSolution::P_zz() const {
  return P.block(partition.n_y(), partition.n_y(), partition.n_z, partition.n_z);
}

Matrix riccati_inner(const AugmentedLQProblem& p, const Matrix& P_yy) {
  return p.R_uu() + p.beta() * transpose_times(p.B_yu(), P_yy * p.B_yu());
}

Matrix riccati_rhs(const AugmentedLQProblem& p, const Matrix& P) {
  require_square_state(p, P);
  const double beta = p.beta();
  const std::size_t ny = p.partition().n_y();
  const Matrix A = p.A();
  const Matrix B = p.B();

  const Matrix AtP = transpose_times(A, P);
  const Matrix AtPB = AtP * B;
  const Matrix inner = riccati_inner(p, P.block(0, 0, ny, ny));
  const Matrix K = linalg::solve(inner, AtPB.transpose(), kInnerName);

  Matrix rhs = p.Q();
  rhs += (beta * (AtP * A));
  rhs -= (beta * beta) * (AtPB * K);
  return rhs;
}

double riccati_residual(const AugmentedLQProblem& p, const Matrix& P) {
  return max_abs_diff(riccati_rhs(p, P), P);
}

RiccatiSolution solve_full_riccati(const AugmentedLQProblem& p,
                                   const RiccatiOptions& options) {
  if (!(options.tol > 0.0)) throw ValidationError("Riccati tol must be > 0");
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw ValidationError("Riccati damping must be in (0, 1]");
  }

  RiccatiSolution sol;
  sol.partition = p.partition();
  sol.P = p.Q();
  sol.residual_norm = std::numeric_limits<double>::infinity();

  // The residual at P_k is exactly the undamped update P_{k+1} - P_k, so a
  // converged solution certifies its own residual.
  for (;;) {
    const Matrix rhs = riccati_rhs(p, sol.P);
    sol.residual_norm = max_abs_diff(rhs, sol.P);
    if (sol.residual_norm <= options.tol) {
      sol.converged = true;
      break;
    }
    if (!std::isfinite(sol.residual_norm) || sol.iterations >= options.max_iter) {
      break;
    }
    Matrix next = symmetrized(rhs);
    if (options.damping != 1.0) {
      next = (1.0 - options.damping) * sol.P + options.damping * next;
    }
    sol.P = std::move(next);
    ++sol.iterations;
  }
  return sol;
}

FeedbackGain compute_gain(const AugmentedLQProblem& p, const RiccatiSolution& sol) {
  if (!sol.converged) {
    throw ConvergenceError("compute_gain: Riccati solution did not converge");
  }
  require_square_state(p, sol.P);
  const Matrix P_yy = sol.P_yy();
  const Matrix P_yz = sol.P_yz();
  const Matrix inner = riccati_inner(p, P_yy);

  const Matrix y_col = P_yy * p.A_yy();
  const Matrix z_col = P_yy * p.A_yz() + P_yz * p.A_zz();
  const Matrix rhs = p.beta() * transpose_times(p.B_yu(), hcat(y_col, z_col));
  const Matrix F = -linalg::solve(inner, rhs, kInnerName);

  const std::size_t ny = p.partition().n_y();
  return FeedbackGain{F.block(0, 0, F.rows(), ny),
                      F.block(0, ny, F.rows(), p.partition().n_z)};
}

std::vector<std::complex<double>> closed_loop_eigenvalues(
    const AugmentedLQProblem& p, const FeedbackGain& F) {
  return linalg::eigenvalues(p.A_yy() + p.B_yu() * F.F_y);
}

HamiltonianPencil build_pencil(const AugmentedLQProblem& p) {
  const std::size_t n = p.partition().n_state();
  const double beta = p.beta();
  const Matrix B = p.B();
  const Matrix Rinv = linalg::inverse(p.R_uu(), "R_uu");

  HamiltonianPencil h{Matrix(2 * n, 2 * n), Matrix(2 * n, 2 * n)};
  h.L.set_block(0, 0, Matrix::identity(n));
  h.L.set_block(0, n, -beta * (B * Rinv * B.transpose()));
  h.L.set_block(n, n, beta * p.A().transpose());

  // Costate sign chosen so that the stable roots of L^-1 N are exactly the
  // closed-loop roots of the regulator together with eig(A_zz).
  h.N.set_block(0, 0, p.A());
  h.N.set_block(n, 0, p.Q());
  h.N.set_block(n, n, Matrix::identity(n));
  return h;
}

bool MirrorReport::contains(std::complex<double> value, double tol) const {
  return std::any_of(roots.begin(), roots.end(),
                     [&](const auto& r) { return std::abs(r - value) <= tol; });
}

MirrorReport pencil_mirror_check(const HamiltonianPencil& pencil, double beta,
                                 double tol) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ValidationError("beta must lie in (0, 1]");
  const Matrix H = linalg::solve(pencil.L, pencil.N, "pencil matrix L", 1e-12);

  MirrorReport report;
  report.roots = linalg::eigenvalues(H);
  const double s = std::sqrt(beta);

  // Pair on the sqrt(beta)-scaled roots, where mirrors are (l, 1/l).
  std::vector<std::complex<double>> scaled;
  scaled.reserve(report.roots.size());
  for (const auto& r : report.roots) {
    report.moduli.push_back(std::abs(r));
    scaled.push_back(s * r);
  }

  std::vector<std::size_t> order(scaled.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(scaled[a]) < std::abs(scaled[b]);
  });

  constexpr double kZero = 1e-300;
  std::vector<bool> used(scaled.size(), false);
  for (std::size_t i : order) {
    if (used[i]) continue;
    if (std::abs(scaled[i]) < kZero) {
      used[i] = true;  // zero roots have no finite mirror
      continue;
    }
    std::size_t best = scaled.size();
    double best_mismatch = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < scaled.size(); ++j) {
      if (j == i || used[j]) continue;
      const double m = std::abs(scaled[i] * scaled[j] - 1.0);
      if (m < best_mismatch) {
        best_mismatch = m;
        best = j;
      }
    }
    used[i] = true;
    if (best < scaled.size() && best_mismatch <= tol) {
      used[best] = true;
      report.pairs.push_back({i, best, best_mismatch});
    } else {
      report.unpaired.push_back(i);
    }
  }
  report.pass = report.unpaired.empty();
  return report;
}

}  // namespace ramsey
