#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tdlab/rational.hpp"

namespace tdlab {

/// Dense row-major matrix of exact rationals. Column vectors are n x 1 matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const Rational> entries);
  static Matrix column(std::span<const Rational> entries);
  static Matrix scalar(std::size_t n, const Rational& value);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] bool is_zero() const;

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const Rational> entries() const { return data_; }

  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] Matrix col(std::size_t c) const;
  [[nodiscard]] Matrix cols_range(std::size_t first, std::size_t count) const;
  [[nodiscard]] Matrix pow(unsigned exponent) const;
  /// Index of the first nonzero entry (row-major), or -1 when zero.
  [[nodiscard]] long first_nonzero() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= Rational(-1); }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  [[nodiscard]] std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Columns of `parts` side by side; all parts must share a row count.
Matrix hcat(std::span<const Matrix> parts, std::size_t rows);
Matrix hcat(const Matrix& a, const Matrix& b);
Matrix vcat(const Matrix& a, const Matrix& b);

/// Sum of `coefficients[i] * m^i`.
Matrix polynomial(const Matrix& m, std::span<const Rational> coefficients);

/// a*b - b*a
Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace tdlab
