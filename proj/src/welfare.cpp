#include "ramsey/welfare.hpp"

#include <string>

#include "ramsey/error.hpp"
#include "ramsey/linalg.hpp"

namespace ramsey {
namespace {

void require_state_matrix(const Matrix& P, const Partition& part) {
  const std::size_t n = part.n_state();
  if (P.rows() != n || P.cols() != n) {
    throw DimensionError("P must be " + std::to_string(n) + "x" +
                         std::to_string(n) + " for this partition");
  }
}

void require_column(const Matrix& v, std::size_t n, const char* name) {
  if (v.rows() != n || v.cols() != 1) {
    throw DimensionError(std::string(name) + " must be a " + std::to_string(n) +
                         "x1 column");
  }
}

}  // namespace

Matrix AnchorMap::x0(const Matrix& k0, const Matrix& z0) const {
  require_column(k0, G_k.cols(), "k0");
  require_column(z0, G_z.cols(), "z0");
  return G_k * k0 + G_z * z0;
}

Matrix xkz_permutation(const Partition& part) {
  const std::size_t n = part.n_state();
  Matrix T(n, n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < part.n_x; ++i) T(row++, part.x_offset() + i) = 1.0;
  for (std::size_t i = 0; i < part.n_k; ++i) T(row++, part.k_offset() + i) = 1.0;
  for (std::size_t i = 0; i < part.n_z; ++i) T(row++, part.z_offset() + i) = 1.0;
  return T;
}

AnchorMap anchor_map(const Matrix& P, const Partition& part) {
  require_state_matrix(P, part);
  const std::size_t nx = part.n_x;
  if (nx == 0) return {Matrix(0, part.n_k), Matrix(0, part.n_z)};

  const Matrix P_xx = P.block(part.x_offset(), part.x_offset(), nx, nx);
  const Matrix P_xk = P.block(part.x_offset(), part.k_offset(), nx, part.n_k);
  const Matrix P_xz = P.block(part.x_offset(), part.z_offset(), nx, part.n_z);
  const Matrix rhs = hcat(P_xk, P_xz);
  const Matrix G = -linalg::solve(P_xx, rhs, "P_xx", kAnchorMinRcond);
  return {G.block(0, 0, nx, part.n_k), G.block(0, part.n_k, nx, part.n_z)};
}

Matrix welfare_matrix(const Matrix& P, const Partition& part) {
  require_state_matrix(P, part);
  const std::size_t nx = part.n_x;
  const std::size_t nkz = part.n_k + part.n_z;
  const AnchorMap g = anchor_map(P, part);

  // Sandwich T' P_xkz T with T = [0 G_k G_z; 0 I 0; 0 0 I] in (x, k, z)
  // order; the x rows and columns of the product vanish.
  const Matrix perm = xkz_permutation(part);
  const Matrix P_xkz = perm * P * perm.transpose();

  Matrix T(part.n_state(), part.n_state());
  T.set_block(0, nx, hcat(g.G_k, g.G_z));
  T.set_block(nx, nx, Matrix::identity(nkz));

  const Matrix full = transpose_times(T, P_xkz * T);
  return symmetrized(full.block(nx, nx, nkz, nkz));
}

double welfare_value(const Matrix& S, const Matrix& k0, const Matrix& z0) {
  if (k0.cols() != 1 || z0.cols() != 1 || !S.is_square() ||
      S.rows() != k0.rows() + z0.rows()) {
    throw DimensionError("welfare_value: S must be square of size n_k + n_z "
                         "and k0, z0 columns");
  }
  return -quadratic_form(vcat(k0, z0), S);
}

double naive_welfare(const Matrix& P, const Partition& part, const Matrix& k0,
                     const Matrix& z0) {
  require_state_matrix(P, part);
  Matrix truncated = P;
  truncated.set_block(part.z_offset(), part.z_offset(),
                      Matrix(part.n_z, part.n_z));
  return welfare_value(welfare_matrix(truncated, part), k0, z0);
}

WelfareReport evaluate_welfare(const Matrix& P, const Partition& part,
                               const Matrix& k0, const Matrix& z0) {
  require_column(k0, part.n_k, "k0");
  require_column(z0, part.n_z, "z0");
  WelfareReport r;
  r.anchor = anchor_map(P, part);
  r.S = welfare_matrix(P, part);
  r.welfare = welfare_value(r.S, k0, z0);
  r.x0 = r.anchor.x0(k0, z0);
  return r;
}

}  // namespace ramsey
