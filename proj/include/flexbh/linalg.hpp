#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "flexbh/rational.hpp"

namespace flexbh {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan elimination to reduced row echelon form.
RowEchelon row_reduce(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// One basis vector per non-pivot column, ordered by that column. The basis
/// vector for free column f has a 1 at f and zeros at every other free column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

/// Rank over GF(2^61 - 1). Used as a fast screen in the searches; every
/// scheme a search emits is re-checked in exact rational arithmetic.
class ModularMatrix {
 public:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  ModularMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::size_t rank() const;

  /// Residue of a rational; the denominator must be invertible mod kPrime.
  static std::uint64_t reduce(const Rational& q);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

}  // namespace flexbh
