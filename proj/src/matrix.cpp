#include "ginv/matrix.hpp"

#include <sstream>
#include <utility>

namespace ginv {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

void require_same_field(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) {
    throw FieldError("field mismatch: " + a.field().name() + " vs " + b.field().name());
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_ints(Field field, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Scalar>> grid;
  for (const auto& row : rows) {
    auto& out = grid.emplace_back();
    for (long v : row) out.push_back(Scalar::from_int(field, v));
  }
  return from_rows(field, grid);
}

Matrix Matrix::diagonal(Field field, std::initializer_list<long> diag) {
  Matrix m(diag.size(), diag.size(), field);
  std::size_t i = 0;
  for (long v : diag) {
    m(i, i) = Scalar::from_int(field, v);
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c, field);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (rows[i][j].field() != field) throw FieldError("entry field does not match matrix field");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "add");
  require_same_field(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(*this, o, "subtract");
  require_same_field(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("multiply: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                         " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  require_same_field(a, b);
  Matrix c(a.rows_, b.cols_, a.field_);
  if (!a.field_.is_rational()) {
    // Residues are < 2^31, so each product is < 2^62; reduce after every term.
    const std::uint64_t p = a.field_.modulus();
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.cols_; ++k) {
          acc = (acc + std::uint64_t{a(i, k).residue()} * b(k, j).residue()) % p;
        }
        c(i, j) = Scalar::from_int(a.field_, static_cast<long>(acc));
      }
    }
    return c;
  }
  mpq_class acc;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& x = a(i, k).rational();
        if (sgn(x) == 0) continue;
        acc += x * b(k, j).rational();
      }
      c(i, j) = Scalar::from_fraction(a.field_, acc.get_num(), acc.get_den());
    }
  }
  return c;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix m = a;
  for (auto& x : m.data_) x *= s;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_) return false;
  return a.data_ == b.data_;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::pow(std::size_t k) const {
  if (!is_square()) throw DimensionError("pow of a non-square matrix");
  Matrix result = one();
  Matrix base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

bool Matrix::is_idempotent() const { return is_square() && (*this) * (*this) == *this; }

Matrix Matrix::submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw DimensionError("submatrix out of range");
  Matrix m(nrows, ncols, field_);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) m(i, j) = (*this)(row0 + i, col0 + j);
  return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const {
  Matrix m(rows_, cols.size(), field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols.at(j));
  return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
  Matrix m(rows.size(), cols_, field_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(rows.at(i), j);
  return m;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix hconcat(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) throw DimensionError("hconcat: row counts differ");
  require_same_field(left, right);
  Matrix m(left.rows(), left.cols() + right.cols(), left.field());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) m(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) m(i, left.cols() + j) = right(i, j);
  }
  return m;
}

Matrix vconcat(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw DimensionError("vconcat: column counts differ");
  require_same_field(top, bottom);
  Matrix m(top.rows() + bottom.rows(), top.cols(), top.field());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < top.rows(); ++i) m(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i) m(top.rows() + i, j) = bottom(i, j);
  }
  return m;
}

Matrix block(const Matrix& tl, const Matrix& tr, const Matrix& bl, const Matrix& br) {
  return vconcat(hconcat(tl, tr), hconcat(bl, br));
}

RowEchelon row_reduce(const Matrix& a) {
  Matrix r = a;
  Matrix e = Matrix::identity(a.rows(), a.field());
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  auto swap_rows = [](Matrix& x, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(i, c), x(j, c));
  };
  auto scale_row = [](Matrix& x, std::size_t i, const Scalar& s) {
    for (std::size_t c = 0; c < x.cols(); ++c) x(i, c) *= s;
  };
  // row_i -= s * row_j
  auto eliminate = [](Matrix& x, std::size_t i, std::size_t j, const Scalar& s) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      if (!x(j, c).is_zero()) x(i, c) -= s * x(j, c);
    }
  };

  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t pivot = row;
    while (pivot < m && r(pivot, col).is_zero()) ++pivot;
    if (pivot == m) continue;
    if (pivot != row) {
      swap_rows(r, pivot, row);
      swap_rows(e, pivot, row);
    }
    const Scalar inv = r(row, col).inverse();
    scale_row(r, row, inv);
    scale_row(e, row, inv);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      const Scalar factor = r(i, col);
      eliminate(r, i, row, factor);
      eliminate(e, i, row, factor);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), std::move(e), std::move(pivots)};
}

std::size_t rank(const Matrix& a) {
  // Forward elimination only; no transform needed.
  Matrix r = a;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < r.rows() && r(pivot, col).is_zero()) ++pivot;
    if (pivot == r.rows()) continue;
    if (pivot != row)
      for (std::size_t c = col; c < r.cols(); ++c) std::swap(r(pivot, c), r(row, c));
    const Scalar inv = r(row, col).inverse();
    for (std::size_t i = row + 1; i < r.rows(); ++i) {
      if (r(i, col).is_zero()) continue;
      const Scalar factor = r(i, col) * inv;
      for (std::size_t c = col; c < r.cols(); ++c) r(i, c) -= factor * r(row, c);
    }
    ++row;
  }
  return row;
}

std::optional<Matrix> invert(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("invert: matrix is not square");
  RowEchelon re = row_reduce(a);
  if (re.pivots.size() != a.rows()) return std::nullopt;
  return std::move(re.transform);
}

bool is_invertible(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("is_invertible: matrix is not square");
  return rank(a) == a.rows();
}

RankFactorization full_rank_factorization(const Matrix& a) {
  RowEchelon re = row_reduce(a);
  const std::size_t r = re.pivots.size();
  std::vector<std::size_t> leading(r);
  for (std::size_t i = 0; i < r; ++i) leading[i] = i;
  return {a.select_columns(re.pivots), re.reduced.select_rows(leading), r};
}

std::optional<OnePlusProductInverse> one_plus_ab_inverse(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw DimensionError("one_plus_ab_inverse: a must be n x m and b m x n");
  }
  const Matrix ba = b * a;
  auto inner = invert(ba.one() + ba);
  if (!inner) return std::nullopt;
  Matrix outer = Matrix::identity(a.rows(), a.field()) - a * (*inner) * b;
  return OnePlusProductInverse{std::move(outer), std::move(*inner)};
}

Matrix transferred_left_inverse(const Matrix& a, const Matrix& b, const Matrix& c) {
  const Matrix bca = b * c * a;
  return bca.one() - bca;
}

bool column_spaces_independent(const Matrix& x, const Matrix& y) {
  return rank(hconcat(x, y)) == rank(x) + rank(y);
}

bool row_spaces_independent(const Matrix& x, const Matrix& y) {
  return rank(vconcat(x, y)) == rank(x) + rank(y);
}

bool column_spaces_complementary(const Matrix& x, const Matrix& y) {
  return rank(hconcat(x, y)) == x.rows() && rank(x) + rank(y) == x.rows();
}

bool row_spaces_complementary(const Matrix& x, const Matrix& y) {
  return rank(vconcat(x, y)) == x.cols() && rank(x) + rank(y) == x.cols();
}

}  // namespace ginv
