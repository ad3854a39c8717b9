#pragma once

// Quantum one-time pad over basis-state registers.
//
// Summand 1 is masked qubit-wise with X^a Z^b, summand 2 with X^c Z^d. The
// service applies a transversal CNOT (register 1 controls register 2), which
// leaves m1 ^ m2 ^ a ^ c in the second register; the client undoes it with
// X^(a^c) Z^d and adds the carry computed with Toffoli gates.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qhe/rng.hpp"
#include "qhe/service.hpp"

namespace qhe::qotp {

using Bits = std::vector<std::uint8_t>;

struct QotpKeys {
  Bits a;  // X mask, summand 1
  Bits b;  // Z mask, summand 1
  Bits c;  // X mask, summand 2
  Bits d;  // Z mask, summand 2

  std::size_t width() const noexcept { return a.size(); }
};

struct QotpCipherPair {
  Bits x_bits;
  Bits y_bits;
  int x_phase = 1;
  int y_phase = 1;

  friend bool operator==(const QotpCipherPair&, const QotpCipherPair&) = default;
};

struct QotpResult {
  Bits bits;
  int phase = 1;

  friend bool operator==(const QotpResult&, const QotpResult&) = default;
};

// Minimum register width for v (at least 1).
std::size_t bit_width_of(std::uint64_t v);

QotpKeys keygen(std::size_t width, Rng& rng);

// (m1 AND m2) << 1, evaluated with one Toffoli per qubit position into a
// carry register of width + 1 qubits.
std::uint64_t bit_carry(std::uint64_t m1, std::uint64_t m2, std::size_t width);

QotpCipherPair encrypt(std::uint64_t m1, std::uint64_t m2, const QotpKeys& keys);

// Transversal CNOT; returns the target register.
QotpResult cloud_parity_add(const QotpCipherPair& pair);

// Undoes the pad on the parity register and adds the carry.
std::uint64_t decrypt(const QotpResult& result, const QotpKeys& keys, std::uint64_t carry);

// Same as decrypt without the carry: the decrypted register itself.
std::uint64_t decrypt_parity(const QotpResult& result, const QotpKeys& keys);

// Requires m1, m2 < 2^63.
std::uint64_t he_add(std::uint64_t m1, std::uint64_t m2, AdditionService& cloud, Rng& rng);

}  // namespace qhe::qotp
