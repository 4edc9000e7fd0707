#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace ramsey {

/// Dense row-major matrix of doubles with value semantics.
///
/// Products go through the runtime-selected kernels in ramsey/kernels.hpp.
/// Zero-sized dimensions are allowed (an n x 0 block is a valid object).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  /// Nested rows, e.g. Matrix{{1, 2}, {3, 4}}. Rows must be equally long.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix zeros(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }
  static Matrix identity(std::size_t n);
  static Matrix column(std::span<const double> values);
  static Matrix scalar(double value) { return Matrix(1, 1, value); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }

  Matrix transpose() const;

  /// Copy of the nr x nc sub-block starting at (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// a^T * b without materializing the transpose.
Matrix transpose_times(const Matrix& a, const Matrix& b);

/// x^T M y for column vectors x, y.
double bilinear(const Matrix& x, const Matrix& m, const Matrix& y);
inline double quadratic_form(const Matrix& x, const Matrix& m) {
  return bilinear(x, m, x);
}

/// Max-abs entry; 0 for an empty matrix, NaN if any entry is NaN.
double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max |M - M^T|
double asymmetry(const Matrix& m);
/// (M + M^T) / 2
Matrix symmetrized(const Matrix& m);

/// [a b]
Matrix hcat(const Matrix& a, const Matrix& b);
/// [a; b]
Matrix vcat(const Matrix& a, const Matrix& b);

/// Column-major stacking of the columns of m (the usual vec operator).
Matrix vec(const Matrix& m);
/// Inverse of vec for a rows x cols target.
Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols);
Matrix kron(const Matrix& a, const Matrix& b);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace ramsey
