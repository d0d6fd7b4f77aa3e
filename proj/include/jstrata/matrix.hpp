#pragma once

// Dense matrices over a finite field with exact elimination.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "jstrata/error.hpp"
#include "jstrata/field.hpp"

namespace jstrata {

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols) : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Integer entries reduced modulo p.
  static Matrix from_ints(const Field& f, const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(rows[i][j]);
    }
    return m;
  }

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Nilpotent Jordan block of size n: e_{i+1} -> e_i (superdiagonal ones).
  static Matrix jordan_block(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
    return m;
  }

  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw InputError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& data() const { return data_; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.add(data_[k], o.data_[k]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.sub(data_[k], o.data_[k]);
    return r;
  }

  Matrix operator-() const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.neg(data_[k]);
    return r;
  }

  Matrix scaled(Scalar c) const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.mul(c, data_[k]);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix product dimension mismatch");
    if (field_ != o.field_) throw InputError("matrix product over different fields");
    Matrix r(field_, rows_, o.cols_);
    if (field_.is_prime_field()) {
      // accumulate in 64 bits, reduce lazily
      const std::uint64_t p = field_.p();
      std::vector<std::uint64_t> acc(o.cols_);
      for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
          const std::uint64_t a = (*this)(i, k);
          if (!a) continue;
          const Scalar* orow = &o.data_[k * o.cols_];
          for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += a * orow[j];
          if ((k & 0xFFF) == 0xFFF)
            for (auto& v : acc) v %= p;
        }
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = acc[j] % p;
      }
      return r;
    }
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar a = (*this)(i, k);
        if (!a) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (o(k, j)) r(i, j) = field_.add(r(i, j), field_.mul(a, o(k, j)));
      }
    return r;
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
    Vector r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) && v[j]) r[i] = field_.add(r[i], field_.mul((*this)(i, j), v[j]));
    return r;
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix pow(unsigned e) const {
    if (!square()) throw InputError("power of a non-square matrix");
    Matrix r = identity(field_, rows_);
    Matrix b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Kronecker product: (A (x) B)_{(i,k),(j,l)} = A_{ij} B_{kl}.
  Matrix kron(const Matrix& o) const {
    if (field_ != o.field_) throw InputError("Kronecker product over different fields");
    Matrix r(field_, rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Scalar a = (*this)(i, j);
        if (!a) continue;
        for (std::size_t k = 0; k < o.rows_; ++k)
          for (std::size_t l = 0; l < o.cols_; ++l)
            r(i * o.rows_ + k, j * o.cols_ + l) = field_.mul(a, o(k, l));
      }
    return r;
  }

  static Matrix block_diag(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_) throw InputError("block sum over different fields");
    Matrix r(a.field_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
    return r;
  }

  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Matrix r(field_, rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) r(i, j) = (*this)(rs[i], cs[j]);
    return r;
  }

  Matrix hstack(const Matrix& o) const {
    if (rows_ != o.rows_) throw InputError("hstack row mismatch");
    Matrix r(field_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
  }

  Matrix vstack(const Matrix& o) const {
    if (cols_ != o.cols_) throw InputError("vstack column mismatch");
    Matrix r(field_, rows_ + o.rows_, cols_);
    std::copy(data_.begin(), data_.end(), r.data_.begin());
    std::copy(o.data_.begin(), o.data_.end(), r.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return r;
  }

  /// Same entries viewed in a larger field of the same characteristic. Only
  /// prime-field matrices can be lifted to a different extension.
  Matrix lifted(const Field& target) const {
    if (target == field_) return *this;
    if (target.p() != field_.p() || !field_.is_prime_field())
      throw InputError("cannot embed " + field_.name() + " into " + target.name());
    Matrix r(target, rows_, cols_);
    r.data_ = data_;
    return r;
  }

  /// Reduced row echelon form; `pivots` receives the pivot column of each
  /// nonzero row.
  Matrix rref(std::vector<std::size_t>* pivots_out = nullptr) const {
    Matrix a = *this;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = rows_;
      for (std::size_t i = r; i < rows_; ++i)
        if (a(i, c)) {
          piv = i;
          break;
        }
      if (piv == rows_) continue;
      a.swap_rows(piv, r);
      a.scale_row(r, field_.inv(a(r, c)));
      for (std::size_t i = 0; i < rows_; ++i)
        if (i != r && a(i, c)) a.add_row_multiple(i, r, field_.neg(a(i, c)), c);
      pivots.push_back(c);
      ++r;
    }
    if (pivots_out) *pivots_out = std::move(pivots);
    return a;
  }

  std::size_t rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    if (field_.is_prime_field()) return rank_prime();
    Matrix a = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = rows_;
      for (std::size_t i = r; i < rows_; ++i)
        if (a(i, c)) {
          piv = i;
          break;
        }
      if (piv == rows_) continue;
      a.swap_rows(piv, r);
      const Scalar inv = field_.inv(a(r, c));
      for (std::size_t i = r + 1; i < rows_; ++i)
        if (a(i, c)) a.add_row_multiple(i, r, field_.neg(field_.mul(a(i, c), inv)), c);
      ++r;
    }
    return r;
  }

  /// Basis of the right null space, one vector per free column of the RREF.
  std::vector<Vector> kernel_basis() const {
    std::vector<std::size_t> pivots;
    const Matrix red = rref(&pivots);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      Vector v(cols_, 0);
      v[f] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = field_.neg(red(r, f));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  Matrix kernel_matrix() const { return from_columns(field_, cols_, kernel_basis()); }

  /// Column indices of a maximal linearly independent set of columns (the
  /// pivot columns, leftmost first).
  std::vector<std::size_t> independent_columns() const {
    std::vector<std::size_t> pivots;
    rref(&pivots);
    return pivots;
  }

  /// Basis of the column space, chosen among the original columns.
  Matrix column_space() const {
    auto piv = independent_columns();
    std::vector<std::size_t> all(rows_);
    for (std::size_t i = 0; i < rows_; ++i) all[i] = i;
    return submatrix(all, piv);
  }

  /// Solves this * X = B for X, assuming a solution exists; throws otherwise.
  /// When the columns of this are independent the solution is unique.
  Matrix solve(const Matrix& b) const {
    if (b.rows_ != rows_) throw InputError("solve: row mismatch");
    Matrix aug = hstack(b);
    std::vector<std::size_t> pivots;
    const Matrix red = aug.rref(&pivots);
    Matrix x(field_, cols_, b.cols_);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const std::size_t c = pivots[r];
      if (c >= cols_) throw MathError("inconsistent-system", "linear system has no solution");
      for (std::size_t j = 0; j < b.cols_; ++j) x(c, j) = red(r, cols_ + j);
    }
    return x;
  }

  bool in_column_space(const Vector& v) const {
    Matrix col = from_columns(field_, rows_, {v});
    return hstack(col).rank() == rank();
  }

  Matrix inverse() const {
    if (!square()) throw InputError("inverse of a non-square matrix");
    if (rank() != rows_) throw MathError("singular", "matrix is singular");
    return solve(identity(field_, rows_));
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << "]\n";
    }
    return os.str();
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
    if (field_ != o.field_) throw InputError("matrices over different fields");
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
  }

  void scale_row(std::size_t r, Scalar c) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = field_.mul(c, (*this)(r, j));
  }

  // row_dst += c * row_src, starting at column `from`
  void add_row_multiple(std::size_t dst, std::size_t src, Scalar c, std::size_t from) {
    for (std::size_t j = from; j < cols_; ++j) {
      const Scalar s = (*this)(src, j);
      if (s) (*this)(dst, j) = field_.add((*this)(dst, j), field_.mul(c, s));
    }
  }

  std::size_t rank_prime() const {
    const std::uint64_t p = field_.p();
    std::vector<std::uint32_t> a(data_.begin(), data_.end());
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = rows_;
      for (std::size_t i = r; i < rows_; ++i)
        if (a[i * cols_ + c]) {
          piv = i;
          break;
        }
      if (piv == rows_) continue;
      if (piv != r)
        for (std::size_t j = c; j < cols_; ++j) std::swap(a[piv * cols_ + j], a[r * cols_ + j]);
      const std::uint64_t inv = field_.inv(a[r * cols_ + c]);
      const std::uint32_t* prow = &a[r * cols_];
      for (std::size_t i = r + 1; i < rows_; ++i) {
        std::uint32_t* row = &a[i * cols_];
        if (!row[c]) continue;
        const std::uint64_t f = (p - row[c] * inv % p) % p;
        for (std::size_t j = c; j < cols_; ++j)
          if (prow[j]) row[j] = static_cast<std::uint32_t>((row[j] + f * prow[j]) % p);
      }
      ++r;
    }
    return r;
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline std::size_t rank(const Matrix& m) { return m.rank(); }
inline std::vector<Vector> kernel_basis(const Matrix& m) { return m.kernel_basis(); }

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

}  // namespace jstrata
