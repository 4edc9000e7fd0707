#include "ramsey/blocks.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>

#include "ramsey/error.hpp"
#include "ramsey/linalg.hpp"

namespace ramsey {
namespace {

constexpr const char* kInnerName = "R_uu + beta B_yu' P_yy B_yu";

std::string format_complex(std::complex<double> z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

Matrix solve_stein(const Matrix& M, const Matrix& N, const Matrix& C,
                   double beta, std::string_view what) {
  if (!M.is_square() || !N.is_square() || C.rows() != M.rows() ||
      C.cols() != N.rows()) {
    throw DimensionError(std::string(what) + ": incompatible Stein equation shapes");
  }
  const std::size_t n = C.size();
  if (n == 0) return C;

  Matrix op = Matrix::identity(n);
  op -= beta * kron(N.transpose(), M.transpose());

  try {
    return unvec(linalg::solve(op, vec(C), what, 1e-13), C.rows(), C.cols());
  } catch (const SingularMatrixError&) {
    const auto lm = linalg::eigenvalues(M);
    const auto ln = linalg::eigenvalues(N);
    std::complex<double> worst_l, worst_m;
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& l : lm)
      for (const auto& m : ln) {
        const double g = std::abs(beta * l * m - 1.0);
        if (g < gap) {
          gap = g;
          worst_l = l;
          worst_m = m;
        }
      }
    std::ostringstream os;
    os << what << ": singular operator, beta * " << format_complex(worst_l)
       << " * " << format_complex(worst_m) << " = 1 (|gap| = " << gap << ")";
    throw SingularMatrixError(os.str());
  }
}

Matrix solve_pyy(const AugmentedLQProblem& p, const RiccatiOptions& options,
                 std::size_t* iterations) {
  if (!(options.tol > 0.0)) throw ValidationError("Riccati tol must be > 0");
  const double beta = p.beta();
  const Matrix& A = p.A_yy();
  const Matrix& B = p.B_yu();

  Matrix P = p.Q_yy();
  std::size_t it = 0;
  for (;;) {
    const Matrix AtP = transpose_times(A, P);
    const Matrix AtPB = AtP * B;
    const Matrix K =
        linalg::solve(riccati_inner(p, P), AtPB.transpose(), kInnerName);
    Matrix rhs = p.Q_yy();
    rhs += beta * (AtP * A);
    rhs -= (beta * beta) * (AtPB * K);

    const double res = max_abs_diff(rhs, P);
    if (res <= options.tol) break;
    if (!std::isfinite(res) || it >= options.max_iter) {
      std::ostringstream os;
      os << "P_yy Riccati iteration did not converge after " << it
         << " iterations (last update " << res << ")";
      throw ConvergenceError(os.str());
    }
    Matrix next = symmetrized(rhs);
    if (options.damping != 1.0) {
      next = (1.0 - options.damping) * P + options.damping * next;
    }
    P = std::move(next);
    ++it;
  }
  if (iterations) *iterations = it;
  return P;
}

Matrix solve_fy(const AugmentedLQProblem& p, const Matrix& P_yy) {
  const Matrix rhs = p.beta() * transpose_times(p.B_yu(), P_yy * p.A_yy());
  return -linalg::solve(riccati_inner(p, P_yy), rhs, kInnerName);
}

Matrix solve_pyz(const AugmentedLQProblem& p, const Matrix& P_yy,
                 const Matrix& F_y) {
  const Matrix A_cl = p.A_yy() + p.B_yu() * F_y;
  const Matrix C = p.Q_yz() + p.beta() * transpose_times(A_cl, P_yy * p.A_yz());
  return solve_stein(A_cl, p.A_zz(), C, p.beta(), "P_yz Sylvester equation");
}

Matrix pzz_constant(const AugmentedLQProblem& p, const Matrix& P_yy,
                    const Matrix& P_yz) {
  const double beta = p.beta();
  const Matrix& A_yz = p.A_yz();
  const Matrix& A_zz = p.A_zz();
  const Matrix& B = p.B_yu();

  // (P A) restricted to the z column: P_yy A_yz + P_yz A_zz.
  const Matrix PA_z = P_yy * A_yz + P_yz * A_zz;
  // (A' P B) restricted to the z rows.
  const Matrix AtPB_z =
      transpose_times(A_yz, P_yy * B) + transpose_times(A_zz, transpose_times(P_yz, B));
  const Matrix K = linalg::solve(riccati_inner(p, P_yy),
                                 transpose_times(B, PA_z), kInnerName);

  Matrix c = p.Q_zz();
  c += beta * (transpose_times(A_yz, PA_z) +
               transpose_times(A_zz, transpose_times(P_yz, A_yz)));
  c -= (beta * beta) * (AtPB_z * K);
  return c;
}

Matrix solve_pzz(const AugmentedLQProblem& p, const Matrix& P_yy,
                 const Matrix& P_yz) {
  const Matrix C = pzz_constant(p, P_yy, P_yz);
  return symmetrized(
      solve_stein(p.A_zz(), p.A_zz(), C, p.beta(), "P_zz Lyapunov equation"));
}

RiccatiSolution assemble(const AugmentedLQProblem& p, const RiccatiOptions& options) {
  RiccatiSolution sol;
  sol.partition = p.partition();

  const Matrix P_yy = solve_pyy(p, options, &sol.iterations);
  const Matrix F_y = solve_fy(p, P_yy);
  const Matrix P_yz = solve_pyz(p, P_yy, F_y);
  const Matrix P_zz = solve_pzz(p, P_yy, P_yz);

  const std::size_t ny = p.partition().n_y();
  sol.P = Matrix(p.partition().n_state(), p.partition().n_state());
  sol.P.set_block(0, 0, P_yy);
  sol.P.set_block(0, ny, P_yz);
  sol.P.set_block(ny, 0, P_yz.transpose());
  sol.P.set_block(ny, ny, P_zz);

  sol.residual_norm = riccati_residual(p, sol.P);
  sol.converged = sol.residual_norm <= options.tol;
  return sol;
}

}  // namespace ramsey
