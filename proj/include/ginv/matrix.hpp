#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "ginv/field.hpp"

namespace ginv {

/// Dense row-major matrix over an exact field. Equality is exact.
class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix.
  Matrix(std::size_t rows, std::size_t cols, Field field);

  static Matrix identity(std::size_t n, Field field);
  static Matrix from_ints(Field field, std::initializer_list<std::initializer_list<long>> rows);
  static Matrix diagonal(Field field, std::initializer_list<long> diag);
  /// Throws DimensionError on ragged rows, FieldError on mixed fields.
  static Matrix from_rows(Field field, const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix operator-() const;
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);

  Matrix transpose() const;
  /// a^0 = 1 (square only).
  Matrix pow(std::size_t k) const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_idempotent() const;

  Matrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  Matrix select_columns(const std::vector<std::size_t>& cols) const;
  Matrix select_rows(const std::vector<std::size_t>& rows) const;

  /// Same-field identity / zero of this matrix's row count.
  Matrix one() const { return identity(rows_, field_); }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_;
  std::vector<Scalar> data_;
};

Matrix hconcat(const Matrix& left, const Matrix& right);
Matrix vconcat(const Matrix& top, const Matrix& bottom);
/// [[tl, tr], [bl, br]].
Matrix block(const Matrix& tl, const Matrix& tr, const Matrix& bl, const Matrix& br);

struct RowEchelon {
  Matrix reduced;                    // RREF(A)
  Matrix transform;                  // invertible E with E * A = reduced
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination taking the first nonzero pivot in column order.
RowEchelon row_reduce(const Matrix& a);

std::size_t rank(const Matrix& a);

/// Two-sided inverse, or nullopt when singular. Throws DimensionError if not square.
std::optional<Matrix> invert(const Matrix& a);
bool is_invertible(const Matrix& a);

/// a = left * right with left n x r of full column rank and right r x m of
/// full row rank. `right` holds the nonzero rows of RREF(a), `left` the
/// pivot columns of a.
struct RankFactorization {
  Matrix left;
  Matrix right;
  std::size_t rank = 0;
};

RankFactorization full_rank_factorization(const Matrix& a);

/// (1 + ab)^{-1} and (1 + ba)^{-1} for a (n x m), b (m x n).
struct OnePlusProductInverse {
  Matrix outer;  // (1 + ab)^{-1}, evaluated as 1 - a (1 + ba)^{-1} b
  Matrix inner;  // (1 + ba)^{-1}
};

/// Present iff 1 + ba (equivalently 1 + ab) is invertible.
std::optional<OnePlusProductInverse> one_plus_ab_inverse(const Matrix& a, const Matrix& b);

/// Given c with c(1 + ab) = 1, the left inverse 1 - bca of 1 + ba.
Matrix transferred_left_inverse(const Matrix& a, const Matrix& b, const Matrix& c);

/// Column spaces of x and y meet only in 0: rank[x | y] = rank x + rank y.
bool column_spaces_independent(const Matrix& x, const Matrix& y);
/// Row-space analogue, decided on the stacked matrix.
bool row_spaces_independent(const Matrix& x, const Matrix& y);
/// Column spaces of x and y form a direct sum equal to the whole space.
bool column_spaces_complementary(const Matrix& x, const Matrix& y);
bool row_spaces_complementary(const Matrix& x, const Matrix& y);

}  // namespace ginv
