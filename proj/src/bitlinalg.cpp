#include "qhe/bitlinalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "qhe/error.hpp"

namespace qhe::gf2 {

namespace {

Bit checked_bit(int value) {
  if (value != 0 && value != 1) {
    throw ParameterError("GF(2) entry must be 0 or 1, got " + std::to_string(value));
  }
  return static_cast<Bit>(value);
}

}  // namespace

BitVector::BitVector(std::size_t length) : bits_(length, 0) {}

BitVector::BitVector(std::vector<Bit> bits) : bits_(std::move(bits)) {
  for (const Bit b : bits_) checked_bit(b);
}

BitVector::BitVector(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (const int b : bits) bits_.push_back(checked_bit(b));
}

void BitVector::set(std::size_t i, Bit value) { bits_.at(i) = checked_bit(value); }

BitVector BitVector::from_integer(std::uint64_t value, std::size_t width) {
  BitVector v(width);
  for (std::size_t i = 0; i < width && i < 64; ++i) v.bits_[i] = (value >> i) & 1U;
  return v;
}

std::uint64_t BitVector::to_integer() const {
  if (bits_.size() > 64) throw ShapeError("bit vector wider than 64 bits");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) value |= static_cast<std::uint64_t>(bits_[i]) << i;
  return value;
}

BitVector operator^(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw ShapeError("xor of bit vectors of length " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  std::vector<Bit> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return BitVector(std::move(out));
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

BitMatrix::BitMatrix(std::initializer_list<std::initializer_list<int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged rows in bit matrix literal");
    for (const int v : r) entries_.push_back(checked_bit(v));
  }
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, Bit value) {
  if (r >= rows_ || c >= cols_) throw ShapeError("bit matrix index out of range");
  entries_[r * cols_ + c] = checked_bit(value);
}

std::span<const Bit> BitMatrix::row(std::size_t r) const {
  return std::span<const Bit>(entries_).subspan(r * cols_, cols_);
}

bool BitMatrix::is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("gf2 matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.set(i, j, out(i, j) ^ b(k, j));
      }
    }
  }
  return out;
}

BitVector matmul(const BitVector& v, const BitMatrix& m) {
  if (v.size() != m.rows()) {
    throw ShapeError("gf2 vector-matrix product: length " + std::to_string(v.size()) +
                     " against " + std::to_string(m.rows()) + " rows");
  }
  std::vector<Bit> out(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    const auto row = m.row(k);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] ^= row[j];
  }
  return BitVector(std::move(out));
}

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.set(j, i, m(i, j));
  return t;
}

BitMatrix invert(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("cannot invert a non-square bit matrix");
  const std::size_t n = m.rows();

  // Augmented [m | I], reduced in place.
  std::vector<std::vector<Bit>> aug(n, std::vector<Bit>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m(i, j);
    aug[i][n + i] = 1;
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && aug[pivot][col] == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError("bit matrix is singular over GF(2)");
    std::swap(aug[col], aug[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      for (std::size_t j = col; j < 2 * n; ++j) aug[r][j] ^= aug[col][j];
    }
  }

  BitMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, aug[i][n + j]);
  return inv;
}

BitMatrix random_invertible(std::size_t n, Rng& rng) {
  if (n == 0) throw ParameterError("random_invertible needs n >= 1");
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    BitMatrix candidate(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) candidate.set(i, j, coin(rng) ? 1 : 0);
    try {
      invert(candidate);
      return candidate;
    } catch (const SingularMatrixError&) {
    }
  }
}

BitMatrix random_permutation(std::size_t n, Rng& rng) {
  if (n == 0) throw ParameterError("random_permutation needs n >= 1");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  BitMatrix p(n, n);
  // Column j of the result is column order[j] of the identity.
  for (std::size_t j = 0; j < n; ++j) p.set(order[j], j, 1);
  return p;
}

}  // namespace qhe::gf2
