#include "qhe/modlinalg.hpp"

#include <array>
#include <limits>
#include <string>
#include <utility>

#include "qhe/error.hpp"

namespace qhe::zq {

namespace {

void check_modulus(std::uint64_t q) {
  if (q < 2 || q > (std::uint64_t{1} << kMaxModulusBits)) {
    throw ParameterError("modulus must lie in [2, 2^32], got " + std::to_string(q));
  }
}

void check_entries(std::span<const std::uint64_t> entries, std::uint64_t q) {
  for (const auto e : entries) {
    if (e >= q) throw ParameterError("entry " + std::to_string(e) + " not reduced mod " + std::to_string(q));
  }
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1U;
  }
  return result;
}

std::string dims(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

}  // namespace

ZqVector::ZqVector(std::size_t length, std::uint64_t q) : q_(q), entries_(length, 0) {
  check_modulus(q);
}

ZqVector::ZqVector(std::vector<std::uint64_t> entries, std::uint64_t q)
    : q_(q), entries_(std::move(entries)) {
  check_modulus(q);
  check_entries(entries_, q_);
}

void ZqVector::set(std::size_t i, std::uint64_t value) { entries_.at(i) = value % q_; }

ZqMatrix::ZqMatrix(std::size_t rows, std::size_t cols, std::uint64_t q)
    : rows_(rows), cols_(cols), q_(q), entries_(rows * cols, 0) {
  check_modulus(q);
}

ZqMatrix::ZqMatrix(std::size_t rows, std::size_t cols, std::uint64_t q,
                   std::vector<std::uint64_t> entries)
    : rows_(rows), cols_(cols), q_(q), entries_(std::move(entries)) {
  check_modulus(q);
  if (entries_.size() != rows * cols) {
    throw ShapeError("expected " + std::to_string(rows * cols) + " entries for a " + dims(rows, cols) +
                     " matrix, got " + std::to_string(entries_.size()));
  }
  check_entries(entries_, q_);
}

ZqMatrix ZqMatrix::identity(std::size_t n, std::uint64_t q) {
  ZqMatrix m(n, n, q);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

void ZqMatrix::set(std::size_t r, std::size_t c, std::uint64_t value) {
  if (r >= rows_ || c >= cols_) throw ShapeError("matrix index out of range");
  entries_[r * cols_ + c] = value % q_;
}

std::span<const std::uint64_t> ZqMatrix::row(std::size_t r) const {
  return std::span<const std::uint64_t>(entries_).subspan(r * cols_, cols_);
}

bool ZqMatrix::is_zero() const {
  for (const auto e : entries_)
    if (e != 0) return false;
  return true;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (const auto p : witnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (const auto a : witnesses) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t generate_sophie_germain_prime(unsigned bits, Rng& rng) {
  if (bits < 2 || bits > kMaxModulusBits) {
    throw ParameterError("Sophie Germain prime size must be 2..32 bits, got " + std::to_string(bits));
  }
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  const std::uint64_t hi = std::uint64_t{1} << bits;  // exclusive
  const std::uint64_t span = hi - lo;
  const std::uint64_t start = std::uniform_int_distribution<std::uint64_t>(lo, hi - 1)(rng);
  for (std::uint64_t step = 0; step < span; ++step) {
    const std::uint64_t q = lo + (start - lo + step) % span;
    if (is_prime(q) && is_prime(2 * q + 1)) return q;
  }
  throw ExhaustionError("no " + std::to_string(bits) + "-bit Sophie Germain prime");
}

ZqVector sample_noise_vector(std::size_t m, std::uint64_t q, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("noise density must lie in [0, 1]");
  ZqVector e(m, q);
  std::bernoulli_distribution nonzero(p);
  std::bernoulli_distribution negative(0.5);
  for (std::size_t i = 0; i < m; ++i) {
    if (!nonzero(rng)) continue;
    e.set(i, negative(rng) ? q - 1 : 1);
  }
  return e;
}

ZqVector sample_uniform_vector(std::size_t length, std::uint64_t q, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
  std::vector<std::uint64_t> entries(length);
  for (auto& e : entries) e = dist(rng);
  return ZqVector(std::move(entries), q);
}

ZqMatrix sample_uniform_matrix(std::size_t rows, std::size_t cols, std::uint64_t q, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
  std::vector<std::uint64_t> entries(rows * cols);
  for (auto& e : entries) e = dist(rng);
  return ZqMatrix(rows, cols, q, std::move(entries));
}

std::int64_t centered_residue(std::int64_t x, std::uint64_t q) {
  if (q < 2 || q > (std::uint64_t{1} << 62)) throw ParameterError("centered_residue modulus out of range");
  const auto mod = static_cast<std::int64_t>(q);
  std::int64_t r = x % mod;
  if (r < 0) r += mod;
  if (r > mod / 2) r -= mod;
  return r;
}

namespace {

// How many products (each <= (q-1)^2) can be added to a reduced value (< q)
// before a 64-bit accumulator could wrap. At least 1 for every q <= 2^32.
std::size_t terms_before_overflow(std::uint64_t q) {
  const std::uint64_t max_term = (q - 1) * (q - 1);
  if (max_term == 0) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>((std::numeric_limits<std::uint64_t>::max() - (q - 1)) / max_term);
}

}  // namespace

ZqMatrix matmul(const ZqMatrix& a, const ZqMatrix& b) {
  if (a.modulus() != b.modulus()) throw ShapeError("modulus mismatch in matmul");
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: " + dims(a.rows(), a.cols()) + " times " + dims(b.rows(), b.cols()));
  }
  const std::uint64_t q = a.modulus();
  const std::size_t budget = terms_before_overflow(q);
  std::vector<std::uint64_t> out(a.rows() * b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::uint64_t* acc = out.data() + i * b.cols();
    std::size_t pending = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t aik = a(i, k);
      if (aik == 0) continue;
      if (pending == budget) {
        for (std::size_t j = 0; j < b.cols(); ++j) acc[j] %= q;
        pending = 0;
      }
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < brow.size(); ++j) acc[j] += aik * brow[j];
      ++pending;
    }
    for (std::size_t j = 0; j < b.cols(); ++j) acc[j] %= q;
  }
  return ZqMatrix(a.rows(), b.cols(), q, std::move(out));
}

ZqVector matmul(const ZqVector& v, const ZqMatrix& m) {
  if (v.modulus() != m.modulus()) throw ShapeError("modulus mismatch in vector-matrix product");
  if (v.size() != m.rows()) {
    throw ShapeError("vector of length " + std::to_string(v.size()) + " times " + dims(m.rows(), m.cols()));
  }
  const std::uint64_t q = m.modulus();
  const std::size_t budget = terms_before_overflow(q);
  std::vector<std::uint64_t> out(m.cols(), 0);
  std::size_t pending = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    if (pending == budget) {
      for (auto& e : out) e %= q;
      pending = 0;
    }
    const auto mrow = m.row(k);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[k] * mrow[j];
    ++pending;
  }
  for (auto& e : out) e %= q;
  return ZqVector(std::move(out), q);
}

ZqMatrix add(const ZqMatrix& a, const ZqMatrix& b) {
  if (a.modulus() != b.modulus()) throw ShapeError("modulus mismatch in matrix addition");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("adding " + dims(a.rows(), a.cols()) + " and " + dims(b.rows(), b.cols()));
  }
  const std::uint64_t q = a.modulus();
  std::vector<std::uint64_t> out(a.entries().begin(), a.entries().end());
  const auto rhs = b.entries();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] + rhs[i]) % q;
  return ZqMatrix(a.rows(), a.cols(), q, std::move(out));
}

ZqVector add(const ZqVector& a, const ZqVector& b) {
  if (a.modulus() != b.modulus()) throw ShapeError("modulus mismatch in vector addition");
  if (a.size() != b.size()) throw ShapeError("vector length mismatch in addition");
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a[i] + b[i]) % a.modulus();
  return ZqVector(std::move(out), a.modulus());
}

ZqMatrix negate(const ZqMatrix& a) {
  const std::uint64_t q = a.modulus();
  std::vector<std::uint64_t> out(a.entries().begin(), a.entries().end());
  for (auto& e : out) e = (q - e) % q;
  return ZqMatrix(a.rows(), a.cols(), q, std::move(out));
}

ZqMatrix scale(const ZqMatrix& a, std::uint64_t factor) {
  const std::uint64_t q = a.modulus();
  factor %= q;
  std::vector<std::uint64_t> out(a.entries().begin(), a.entries().end());
  for (auto& e : out) e = e * factor % q;
  return ZqMatrix(a.rows(), a.cols(), q, std::move(out));
}

ZqMatrix append_row(const ZqMatrix& top, const ZqVector& bottom) {
  if (top.modulus() != bottom.modulus()) throw ShapeError("modulus mismatch when stacking rows");
  if (top.cols() != bottom.size()) throw ShapeError("row length mismatch when stacking rows");
  std::vector<std::uint64_t> out(top.entries().begin(), top.entries().end());
  out.insert(out.end(), bottom.entries().begin(), bottom.entries().end());
  return ZqMatrix(top.rows() + 1, top.cols(), top.modulus(), std::move(out));
}

}  // namespace qhe::zq
