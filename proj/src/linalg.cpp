#include "ramsey/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "ramsey/error.hpp"

namespace ramsey::linalg {
namespace {

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const Matrix& m) {
  return {m.data().data(), static_cast<Eigen::Index>(m.rows()),
          static_cast<Eigen::Index>(m.cols())};
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

void require_square(const Matrix& a, std::string_view fn) {
  if (!a.is_square()) {
    throw DimensionError(std::string(fn) + ": matrix is " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
  }
}

}  // namespace

double rcond(const Matrix& a) {
  require_square(a, "rcond");
  if (a.empty()) return 1.0;
  if (!a.all_finite()) return 0.0;
  const Eigen::MatrixXd m = view(a);
  // FullPivLU reports exact rank deficiency; PartialPivLU::rcond alone can
  // return inf/nan on a zero pivot.
  Eigen::FullPivLU<Eigen::MatrixXd> full(m);
  full.setThreshold(0.0);
  if (!full.isInvertible()) return 0.0;
  const double r = Eigen::PartialPivLU<Eigen::MatrixXd>(m).rcond();
  return std::isfinite(r) ? r : 0.0;
}

Matrix solve(const Matrix& a, const Matrix& b, std::string_view what,
             double min_rcond) {
  require_square(a, "solve");
  if (b.rows() != a.rows()) throw DimensionError("solve: right-hand side rows");
  if (a.empty()) return Matrix(0, b.cols());
  const double rc = rcond(a);
  if (!(rc >= min_rcond)) {
    std::ostringstream os;
    os << what << " is numerically singular (rcond = " << rc << ")";
    throw SingularMatrixError(os.str());
  }
  const Eigen::MatrixXd m = view(a);
  const Eigen::MatrixXd rhs = view(b);
  return from_eigen(Eigen::PartialPivLU<Eigen::MatrixXd>(m).solve(rhs));
}

Matrix solve_spd(const Matrix& a, const Matrix& b, std::string_view what) {
  require_square(a, "solve_spd");
  if (b.rows() != a.rows()) throw DimensionError("solve_spd: right-hand side rows");
  if (a.empty()) return Matrix(0, b.cols());
  const Eigen::MatrixXd m = view(a);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success || rcond(a) < 1e-14) {
    throw SingularMatrixError(std::string(what) +
                              " is not numerically positive definite");
  }
  const Eigen::MatrixXd rhs = view(b);
  return from_eigen(llt.solve(rhs));
}

Matrix inverse(const Matrix& a, std::string_view what, double min_rcond) {
  return solve(a, Matrix::identity(a.rows()), what, min_rcond);
}

std::vector<double> singular_values(const Matrix& a) {
  if (a.empty()) return {};
  const Eigen::MatrixXd m = view(a);
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  return {s.data(), s.data() + s.size()};
}

std::size_t numerical_rank(const Matrix& a, double rel_tol) {
  const auto s = singular_values(a);
  if (s.empty() || s.front() == 0.0) return 0;
  const double cutoff = rel_tol * s.front();
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](double v) { return v > cutoff; }));
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
  require_square(a, "eigenvalues");
  if (a.empty()) return {};
  if (!a.all_finite()) throw EigenError("eigenvalues: non-finite input");
  const Eigen::MatrixXd m = view(a);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw EigenError("eigenvalues: QR iteration did not converge");
  }
  const Eigen::VectorXcd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
  require_square(a, "symmetric_eigenvalues");
  if (a.empty()) return {};
  if (!a.all_finite()) throw EigenError("symmetric_eigenvalues: non-finite input");
  const Eigen::MatrixXd m = view(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw EigenError("symmetric_eigenvalues: did not converge");
  }
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectral_radius(const Matrix& a) {
  double r = 0.0;
  for (const auto& l : eigenvalues(a)) r = std::max(r, std::abs(l));
  return r;
}

}  // namespace ramsey::linalg
