#pragma once

// Chen's McEliece-style scheme over Hamming codes.
//
// A plaintext is cut into n-bit segments (little-endian, segment 0 holds the
// least significant bits) and each segment row-vector x is encrypted as
// x * psi with psi = S G P. Ciphertexts add by XOR; the arithmetic carry is
// computed in the clear and added back after decryption.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qhe/bitlinalg.hpp"
#include "qhe/rng.hpp"
#include "qhe/service.hpp"

namespace qhe::chen {

struct ChenParams {
  std::size_t n = 4;  // message bits per segment
  std::size_t k = 3;  // parity bits
  std::size_t N = 7;  // codeword bits

  // k = floor(log2 n) + 1, N = n + k.
  static ChenParams for_message_bits(std::size_t n);
};

struct HammingMatrices {
  gf2::BitMatrix s;  // n x n, invertible
  gf2::BitMatrix g;  // n x N
  gf2::BitMatrix p;  // N x N permutation
  gf2::BitMatrix r;  // N x n selector with g * r = I_n
};

struct ChenKeys {
  gf2::BitMatrix psi;    // public, n x N
  gf2::BitMatrix r;      // N x n
  gf2::BitMatrix s_inv;  // n x n
  gf2::BitMatrix p_inv;  // N x N

  std::size_t message_bits() const noexcept { return psi.rows(); }
  std::size_t codeword_bits() const noexcept { return psi.cols(); }
};

struct ChenCiphertext {
  std::vector<gf2::BitVector> segments;

  std::size_t size() const noexcept { return segments.size(); }
  friend bool operator==(const ChenCiphertext&, const ChenCiphertext&) = default;
};

HammingMatrices hamming_code_gen(std::size_t N, std::size_t k, Rng& rng);

// Keys plus the generating matrices, for callers that want to check the key
// algebra.
struct KeyMaterial {
  ChenKeys keys;
  HammingMatrices matrices;
};

KeyMaterial keygen_with_material(std::size_t n, Rng& rng);
ChenKeys keygen(std::size_t n, Rng& rng);

// Number of segments needed for x with n-bit segments (at least one).
std::size_t segment_count(std::uint64_t x, std::size_t n);

// Encrypts x, padding with encrypted zero segments up to `min_segments`.
ChenCiphertext encrypt(std::uint64_t x, const ChenKeys& keys, std::size_t min_segments = 1);

ChenCiphertext xor_add(const ChenCiphertext& c1, const ChenCiphertext& c2);

std::uint64_t decrypt(const ChenCiphertext& c, const ChenKeys& keys);

// Full client round trip: carry in the clear, XOR on the service, decrypt and
// add the carry. Requires x1, x2 < 2^63.
std::uint64_t he_add(std::uint64_t x1, std::uint64_t x2, const ChenKeys& keys, AdditionService& cloud);

}  // namespace qhe::chen
