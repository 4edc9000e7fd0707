#include "ramsey/model.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "ramsey/error.hpp"
#include "ramsey/linalg.hpp"

namespace ramsey {
namespace {

void expect_shape(const Matrix& m, const char* name, std::size_t rows,
                  std::size_t cols) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << name << " is " << m.rows() << "x" << m.cols() << ", expected " << rows
       << "x" << cols;
    throw DimensionError(os.str());
  }
  if (!m.all_finite()) {
    throw ValidationError(std::string(name) + " has a non-finite entry");
  }
}

double min_eigenvalue(const Matrix& sym) {
  const auto ev = linalg::symmetric_eigenvalues(sym);
  return ev.empty() ? 0.0 : ev.front();
}

}  // namespace

void Partition::validate() const {
  if (n_y() < 1) throw ValidationError("partition: n_k + n_x must be >= 1");
  if (n_z < 1) throw ValidationError("partition: n_z must be >= 1");
  if (n_u < 1) throw ValidationError("partition: n_u must be >= 1");
}

Matrix AugmentedLQProblem::A() const {
  const std::size_t ny = partition_.n_y();
  Matrix a(partition_.n_state(), partition_.n_state());
  a.set_block(0, 0, blocks_.A_yy);
  a.set_block(0, ny, blocks_.A_yz);
  a.set_block(ny, ny, blocks_.A_zz);
  return a;
}

Matrix AugmentedLQProblem::B() const {
  Matrix b(partition_.n_state(), partition_.n_u);
  b.set_block(0, 0, blocks_.B_yu);
  return b;
}

Matrix AugmentedLQProblem::Q() const {
  const std::size_t ny = partition_.n_y();
  Matrix q(partition_.n_state(), partition_.n_state());
  q.set_block(0, 0, blocks_.Q_yy);
  q.set_block(0, ny, blocks_.Q_yz);
  q.set_block(ny, 0, blocks_.Q_yz.transpose());
  q.set_block(ny, ny, blocks_.Q_zz);
  return q;
}

AugmentedLQProblem build_problem(ProblemBlocks b, double beta,
                                 Partition partition) {
  partition.validate();
  if (!std::isfinite(beta) || beta <= 0.0 || beta > 1.0) {
    throw ValidationError("beta must lie in (0, 1]");
  }
  const std::size_t ny = partition.n_y();
  const std::size_t nz = partition.n_z;
  const std::size_t nu = partition.n_u;
  expect_shape(b.A_yy, "A_yy", ny, ny);
  expect_shape(b.A_yz, "A_yz", ny, nz);
  expect_shape(b.A_zz, "A_zz", nz, nz);
  expect_shape(b.B_yu, "B_yu", ny, nu);
  expect_shape(b.Q_yy, "Q_yy", ny, ny);
  expect_shape(b.Q_yz, "Q_yz", ny, nz);
  expect_shape(b.Q_zz, "Q_zz", nz, nz);
  expect_shape(b.R_uu, "R_uu", nu, nu);

  const double qzz_scale = std::max(1.0, max_abs(b.Q_zz));
  if (asymmetry(b.Q_zz) > kSymmetryTolerance * qzz_scale) {
    throw ValidationError("Q_zz not symmetric");
  }

  b.Q_yy = symmetrized(b.Q_yy);
  b.Q_zz = symmetrized(b.Q_zz);
  b.R_uu = symmetrized(b.R_uu);

  if (min_eigenvalue(b.Q_yy) < -kSymmetryTolerance) {
    throw ValidationError("Q_yy not positive semi-definite");
  }
  if (!(min_eigenvalue(b.R_uu) > 0.0)) {
    throw ValidationError("R_uu not strictly positive definite");
  }
  return AugmentedLQProblem(partition, beta, std::move(b));
}

Matrix controllability_matrix(const AugmentedLQProblem& p) {
  const std::size_t ny = p.partition().n_y();
  const std::size_t nu = p.partition().n_u;
  const double s = std::sqrt(p.beta());
  Matrix c(ny, ny * nu);
  // Column block j is beta^((j+1)/2) A_yy^j B_yu.
  Matrix term = p.B_yu() * s;
  for (std::size_t j = 0; j < ny; ++j) {
    c.set_block(0, j * nu, term);
    term = (p.A_yy() * term) * s;
  }
  return c;
}

ValidationReport check_controllability(const AugmentedLQProblem& p, double tol) {
  ValidationReport r;
  const std::size_t ny = p.partition().n_y();
  r.controllability_rank = linalg::numerical_rank(controllability_matrix(p), tol);
  r.controllable = r.controllability_rank == ny;
  std::ostringstream os;
  os << "controllability: rank " << r.controllability_rank
     << " of " << ny << (r.controllable ? " - holds" : " - violated");
  r.messages.push_back(os.str());
  return r;
}

ValidationReport check_shock_stability(const AugmentedLQProblem& p) {
  ValidationReport r;
  const double bound = 1.0 / std::sqrt(p.beta());
  r.shock_stable = true;
  for (const auto& l : linalg::eigenvalues(p.A_zz())) {
    const double m = std::abs(l);
    r.shock_eigenvalue_moduli.push_back(m);
    if (!(m < bound)) r.shock_stable = false;
  }
  std::ostringstream os;
  os << "shock stability: |eig(A_zz)| < " << bound
     << (r.shock_stable ? " - holds" : " - violated");
  r.messages.push_back(os.str());
  return r;
}

ValidationReport validate_assumptions(const AugmentedLQProblem& p, double tol) {
  ValidationReport r = check_controllability(p, tol);
  ValidationReport s = check_shock_stability(p);
  r.shock_eigenvalue_moduli = std::move(s.shock_eigenvalue_moduli);
  r.shock_stable = s.shock_stable;
  r.messages.insert(r.messages.end(), s.messages.begin(), s.messages.end());
  return r;
}

AugmentedLQProblem ScaledSystem::as_undiscounted() const {
  const Partition& part = source.partition();
  const std::size_t ny = part.n_y();
  ProblemBlocks b = source.blocks();
  b.A_yy = A_tilde.block(0, 0, ny, ny);
  b.A_yz = A_tilde.block(0, ny, ny, part.n_z);
  b.A_zz = A_tilde.block(ny, ny, part.n_z, part.n_z);
  b.B_yu = B_tilde.block(0, 0, ny, part.n_u);
  return build_problem(std::move(b), 1.0, part);
}

ScaledSystem scale_by_sqrt_beta(const AugmentedLQProblem& p) {
  const double s = std::sqrt(p.beta());
  return ScaledSystem{p.A() * s, p.B() * s, p};
}

AugmentedLQProblem build_nkpc(double beta, double kappa, double epsilon,
                              double rho) {
  if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("nkpc: beta must be in (0, 1)");
  if (!(kappa > 0.0)) throw ValidationError("nkpc: kappa must be > 0");
  if (!(epsilon > 0.0)) throw ValidationError("nkpc: epsilon must be > 0");
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("nkpc: rho must be in (0, 1)");

  // pi_t = beta E_t pi_{t+1} + kappa x_t + z_t solved for E_t pi_{t+1}.
  ProblemBlocks b;
  b.A_yy = Matrix::scalar(1.0 / beta);
  b.A_yz = Matrix::scalar(-1.0 / beta);
  b.A_zz = Matrix::scalar(rho);
  b.B_yu = Matrix::scalar(-kappa / beta);
  b.Q_yy = Matrix::scalar(1.0);
  b.Q_yz = Matrix::scalar(0.0);
  b.Q_zz = Matrix::scalar(0.0);
  b.R_uu = Matrix::scalar(kappa / epsilon);
  return build_problem(std::move(b), beta, Partition{0, 1, 1, 1});
}

}  // namespace ramsey
