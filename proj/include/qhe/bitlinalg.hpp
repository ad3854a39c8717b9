#pragma once

// Dense linear algebra over GF(2).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qhe/rng.hpp"

namespace qhe::gf2 {

using Bit = std::uint8_t;

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length);
  explicit BitVector(std::vector<Bit> bits);
  BitVector(std::initializer_list<int> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  Bit operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, Bit value);

  std::span<const Bit> bits() const noexcept { return bits_; }

  // Little-endian: bit i of `value` lands at index i.
  static BitVector from_integer(std::uint64_t value, std::size_t width);
  std::uint64_t to_integer() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::vector<Bit> bits_;
};

BitVector operator^(const BitVector& a, const BitVector& b);

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  BitMatrix(std::initializer_list<std::initializer_list<int>> rows);

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Bit operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Bit value);

  std::span<const Bit> row(std::size_t r) const;
  std::span<const Bit> entries() const noexcept { return entries_; }

  bool is_identity() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Bit> entries_;
};

// result[i][j] = XOR_k a[i][k] AND b[k][j]. Throws ShapeError on mismatch.
BitMatrix matmul(const BitMatrix& a, const BitMatrix& b);

// Row vector times matrix.
BitVector matmul(const BitVector& v, const BitMatrix& m);

BitMatrix transpose(const BitMatrix& m);

// Gauss-Jordan elimination. Throws SingularMatrixError when m has no inverse.
BitMatrix invert(const BitMatrix& m);

// Rejection-samples uniform n x n matrices until one is invertible.
BitMatrix random_invertible(std::size_t n, Rng& rng);

// Identity with its columns shuffled.
BitMatrix random_permutation(std::size_t n, Rng& rng);

}  // namespace qhe::gf2
