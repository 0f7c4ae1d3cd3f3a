#pragma once

// Exact integer/rational arithmetic and small dense matrices over them.
//
// BigInt and Rat are GMP's C++ classes. gmpxx keeps every mpq_class result in
// canonical form (reduced, positive denominator); the only way to break that
// is the two-argument constructor, so use make_rat() instead of it.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toricmld/error.hpp"

namespace toricmld {

using BigInt = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<BigInt>;
using RatVec = std::vector<Rat>;

Rat make_rat(const BigInt& num, const BigInt& den);

// Accepts "p/q", "p", and optional leading sign. Throws Error(Parse).
Rat parse_rat(std::string_view text);

std::string to_string(const BigInt& v);
std::string to_string(const Rat& v);
// "(a, b, c)" with exact entries.
std::string to_string(const RatVec& v);
std::string to_string(const IntVec& v);

BigInt floor(const Rat& v);
// v - floor(v), in [0, 1).
Rat frac(const Rat& v);
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
// x^k for k >= 0.
Rat pow(const Rat& x, unsigned k);
BigInt pow(const BigInt& x, unsigned k);

// Least common multiple of all denominators (1 for an empty vector).
BigInt common_denominator(const RatVec& v);
// gcd of the entries, 0 for an all-zero vector.
BigInt content(const IntVec& v);

RatVec to_rat(const IntVec& v);
std::optional<IntVec> to_integer(const RatVec& v);
bool is_zero(const RatVec& v);

RatVec operator+(const RatVec& a, const RatVec& b);
RatVec operator-(const RatVec& a, const RatVec& b);
RatVec operator*(const Rat& s, const RatVec& v);
Rat dot(const RatVec& a, const RatVec& b);
Rat sum(const RatVec& v);

// Dense row-major matrix. Row vectors are the primary convention throughout the
// library: a lattice basis or a cone's generators are stored as rows.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
  }
  std::vector<std::vector<T>> to_rows() const;

  Matrix transpose() const;
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMat = Matrix<BigInt>;
using RatMat = Matrix<Rat>;

IntMat operator*(const IntMat& a, const IntMat& b);
RatMat operator*(const RatMat& a, const RatMat& b);
// Row vector times matrix.
RatVec operator*(const RatVec& v, const RatMat& m);
IntVec operator*(const IntVec& v, const IntMat& m);

RatMat to_rat(const IntMat& m);
std::optional<IntMat> to_integer(const RatMat& m);

std::size_t rank(const RatMat& m);
// Fraction-free Bareiss elimination.
BigInt determinant(const IntMat& m);
Rat determinant(const RatMat& m);
// Throws SingularMatrix.
RatMat inverse(const RatMat& m);

// Solves A·x = b (column convention). Throws SingularMatrix or DimensionMismatch.
RatVec solve_exact(const RatMat& a, const RatVec& b);

// H = U·M with H in row Hermite normal form: echelon, upper triangular, pivots
// positive, entries above a pivot in [0, pivot). Zero rows sit at the bottom.
// U is unimodular.
struct HermiteForm {
  IntMat h;
  IntMat u;
  std::size_t rank = 0;
};
HermiteForm hnf(const IntMat& m);

// S = U·M·V with S diagonal, s_1 | s_2 | ... and s_i >= 0; U, V unimodular.
struct SmithForm {
  IntMat s;
  IntMat u;
  IntMat v;
  // Diagonal of S (min(rows, cols) entries).
  IntVec invariant_factors() const;
};
SmithForm snf(const IntMat& m);

// ---------------------------------------------------------------------------

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "row length differs from column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

template <class T>
std::vector<std::vector<T>> Matrix<T>::to_rows() const {
  std::vector<std::vector<T>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r));
  return out;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

}  // namespace toricmld
