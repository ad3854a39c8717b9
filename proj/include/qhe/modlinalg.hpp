#pragma once

// Integer linear algebra modulo q, prime generation and LWE noise.
//
// Moduli are capped at 32 bits (kMaxModulusBits) so that a product of two
// residues always fits in 64 bits.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qhe/rng.hpp"

namespace qhe::zq {

inline constexpr unsigned kMaxModulusBits = 32;

class ZqVector {
 public:
  ZqVector() = default;
  ZqVector(std::size_t length, std::uint64_t q);
  ZqVector(std::vector<std::uint64_t> entries, std::uint64_t q);

  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t modulus() const noexcept { return q_; }
  std::uint64_t operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, std::uint64_t value);

  std::span<const std::uint64_t> entries() const noexcept { return entries_; }

  friend bool operator==(const ZqVector&, const ZqVector&) = default;

 private:
  std::uint64_t q_ = 2;
  std::vector<std::uint64_t> entries_;
};

class ZqMatrix {
 public:
  ZqMatrix() = default;
  ZqMatrix(std::size_t rows, std::size_t cols, std::uint64_t q);
  ZqMatrix(std::size_t rows, std::size_t cols, std::uint64_t q, std::vector<std::uint64_t> entries);

  static ZqMatrix identity(std::size_t n, std::uint64_t q);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint64_t modulus() const noexcept { return q_; }

  std::uint64_t operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint64_t value);

  std::span<const std::uint64_t> row(std::size_t r) const;
  std::span<const std::uint64_t> entries() const noexcept { return entries_; }

  bool is_zero() const;

  friend bool operator==(const ZqMatrix&, const ZqMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint64_t q_ = 2;
  std::vector<std::uint64_t> entries_;
};

// Exact for all 64-bit n (Miller-Rabin with a deterministic witness set).
bool is_prime(std::uint64_t n);

// A prime q with exactly `bits` bits such that 2q+1 is also prime. The search
// starts at a random point of [2^(bits-1), 2^bits) and wraps around once.
std::uint64_t generate_sophie_germain_prime(unsigned bits, Rng& rng);

// Sparse ternary noise: each entry is 0 with probability 1-p, else +1 or -1
// with equal probability, reduced mod q.
ZqVector sample_noise_vector(std::size_t m, std::uint64_t q, double p, Rng& rng);

ZqVector sample_uniform_vector(std::size_t length, std::uint64_t q, Rng& rng);
ZqMatrix sample_uniform_matrix(std::size_t rows, std::size_t cols, std::uint64_t q, Rng& rng);

// The representative r of x mod q with -floor(q/2) <= r <= floor(q/2)
// (for even q the upper end q/2 is used).
std::int64_t centered_residue(std::int64_t x, std::uint64_t q);

ZqMatrix matmul(const ZqMatrix& a, const ZqMatrix& b);
ZqVector matmul(const ZqVector& v, const ZqMatrix& m);

ZqMatrix add(const ZqMatrix& a, const ZqMatrix& b);
ZqVector add(const ZqVector& a, const ZqVector& b);
ZqMatrix negate(const ZqMatrix& a);
ZqMatrix scale(const ZqMatrix& a, std::uint64_t factor);

// Stacks `bottom` as an extra last row under `top`.
ZqMatrix append_row(const ZqMatrix& top, const ZqVector& bottom);

}  // namespace qhe::zq
