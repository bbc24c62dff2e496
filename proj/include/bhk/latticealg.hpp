#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal forms,
// integer kernels, lattice quotients and primitivity. Everything is backed by
// GMP; no fixed-width arithmetic is used for matrix entries.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bhk/error.hpp"

namespace bhk {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::InvalidArgument, "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  std::vector<std::vector<T>> row_vectors() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> operator*(std::span<const T> v) const {
    if (v.size() != cols_) throw Error(ErrorKind::InvalidArgument, "matrix-vector size mismatch");
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "matrix product size mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix to_rational(const IntegerMatrix& m);
Integer gcd_of(std::span<const Integer> v);
Integer lcm_of_denominators(std::span<const Rational> v);

/// Finite abelian group Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k and
/// every d_i >= 2. The trivial group has no factors.
class AbelianInvariants {
public:
  AbelianInvariants() = default;
  explicit AbelianInvariants(std::vector<Integer> factors);

  const std::vector<Integer>& factors() const noexcept { return factors_; }
  Integer order() const;
  bool trivial() const noexcept { return factors_.empty(); }
  /// Largest invariant factor (1 for the trivial group).
  Integer exponent() const;
  std::string to_string() const;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;

private:
  std::vector<Integer> factors_;
};

struct HermiteForm {
  IntegerMatrix h;  // row-style HNF
  IntegerMatrix u;  // unimodular, u * m == h
};

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot). Zero rows sink to the bottom.
HermiteForm hermite_normal_form(const IntegerMatrix& m);

struct SmithForm {
  IntegerMatrix d;      // diagonal, d_1 | d_2 | ..., zeros last
  AbelianInvariants invariants;
  IntegerMatrix left;   // unimodular
  IntegerMatrix right;  // unimodular, left * m * right == d
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Bareiss fraction-free determinant.
Integer determinant(const IntegerMatrix& m);

/// A sublattice of Z^ambient_rank, stored as the nonzero rows of its
/// row-style HNF. Equal lattices have identical representations.
class LatticeBasis {
public:
  LatticeBasis() = default;
  explicit LatticeBasis(std::size_t ambient_rank) : ambient_rank_(ambient_rank) {}

  static LatticeBasis from_generators(std::size_t ambient_rank, const std::vector<IntVector>& gens);
  static LatticeBasis standard(std::size_t n);

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<IntVector>& basis() const noexcept { return basis_; }
  IntegerMatrix matrix() const;

  /// Integer coordinates of v in the basis, or nullopt when v is not in the lattice.
  std::optional<IntVector> coordinates(std::span<const Integer> v) const;
  bool contains(std::span<const Integer> v) const { return coordinates(v).has_value(); }
  bool contains(const LatticeBasis& other) const;

  /// Vector with the given coordinates.
  IntVector combine(std::span<const Integer> coords) const;

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
  }

private:
  std::size_t ambient_rank_ = 0;
  std::vector<IntVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Saturated integer kernel {v in Z^cols : m v = 0}.
LatticeBasis kernel_lattice(const RationalMatrix& m);
LatticeBasis kernel_lattice(const IntegerMatrix& m);

AbelianInvariants lattice_quotient(const LatticeBasis& ambient, const LatticeBasis& sub);

struct QuotientPresentation {
  AbelianInvariants invariants;
  /// One vector of the ambient lattice per invariant factor; the class of
  /// generators[i] has order invariants.factors()[i].
  std::vector<IntVector> generators;
};

QuotientPresentation quotient_presentation(const LatticeBasis& ambient, const LatticeBasis& sub);

bool is_primitive(std::span<const Integer> v, const LatticeBasis& l);

RatVector solve_rational(const RationalMatrix& m, std::span<const Rational> b);
RationalMatrix inverse(const RationalMatrix& m);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

}  // namespace bhk
