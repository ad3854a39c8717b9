#pragma once

// Gentry-Sahai-Waters style LWE encryption with additive homomorphism.
//
// Keys: q is a k-bit Sophie Germain prime, n = k, l = ceil(log2 q), m = n*l.
// The secret key is t = (s || 1); the public key B stacks -A over s^T A + e^T
// so that t^T B = e^T. A message mu in [0, M) is encrypted as
// C = B R + mu G (mod q) with R uniform in {0,1}^{m x m} and G the gadget
// matrix. Decryption scans the message space for the mu whose mu * t^T G is
// closest (L1 over centered residues) to t^T C.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "qhe/modlinalg.hpp"
#include "qhe/rng.hpp"
#include "qhe/service.hpp"

namespace qhe::gsw {

inline constexpr double kDefaultNoiseDensity = 0.02;
inline constexpr std::uint64_t kDefaultMessageBound = 16;
inline constexpr unsigned kMinSecurityBits = 3;
inline constexpr unsigned kMaxSecurityBits = 16;

struct GswParams {
  unsigned k = 0;
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::size_t l = 0;
  std::size_t m = 0;
  double noise_density = kDefaultNoiseDensity;
  std::uint64_t message_bound = kDefaultMessageBound;  // exclusive
};

struct GswSecretKey {
  zq::ZqVector t;  // (s || 1), length n
};

struct GswPublicKey {
  zq::ZqMatrix b;  // n x m
};

struct GswKeys {
  GswParams params;
  GswSecretKey sk;
  GswPublicKey pk;
  // The LWE noise used to build pk. Kept so tests can check t^T B = e^T;
  // never serialized.
  zq::ZqVector noise;
};

struct GswCiphertext {
  zq::ZqMatrix c;  // n x m
  // Encryption randomness, retained for diagnostics only; never serialized.
  std::optional<zq::ZqMatrix> randomness;
};

// ceil(log2 q) for q >= 2.
std::size_t ceil_log2(std::uint64_t q);

// `message_bound` of 0 selects min(kDefaultMessageBound, q).
GswKeys keygen(unsigned k, double noise_density, std::uint64_t message_bound, Rng& rng);

// n x (n*l) block diagonal; row i holds 1, 2, ..., 2^(l-1) in block i.
zq::ZqMatrix gadget_matrix(std::size_t n, std::size_t l, std::uint64_t q);

GswCiphertext encrypt(const GswPublicKey& pk, const GswParams& params, std::uint64_t mu, Rng& rng);

// Deterministic core of encrypt with caller-chosen R (m x m, entries 0/1).
GswCiphertext encrypt_with(const GswPublicKey& pk, const GswParams& params, std::uint64_t mu,
                           const zq::ZqMatrix& r);

GswCiphertext add(const GswCiphertext& c1, const GswCiphertext& c2);

std::uint64_t decrypt(const GswSecretKey& sk, const GswParams& params, const GswCiphertext& c);

// L1 distance between t^T C and mu * t^T G over centered residues; the
// quantity decrypt minimizes.
std::uint64_t decryption_score(const GswSecretKey& sk, const GswParams& params,
                               const GswCiphertext& c, std::uint64_t mu);

// Requires x1 + x2 < message_bound (PreconditionError otherwise).
std::uint64_t he_add(std::uint64_t x1, std::uint64_t x2, const GswKeys& keys, AdditionService& cloud,
                     Rng& rng);

}  // namespace qhe::gsw
