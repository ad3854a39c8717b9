#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qhe/error.hpp"
#include "qhe/modlinalg.hpp"

using namespace qhe;
using zq::ZqMatrix;
using zq::ZqVector;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ZqMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t q, Rng& rng) {
  return zq::sample_uniform_matrix(r, c, q, rng);
}

}  // namespace

TEST_CASE("is_prime agrees with trial division") {
  CHECK_FALSE(zq::is_prime(0));
  CHECK_FALSE(zq::is_prime(1));
  CHECK(zq::is_prime(2));
  CHECK(zq::is_prime(11));
  CHECK(zq::is_prime(359));
  for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(zq::is_prime(n) == trial_division_prime(n));

  Rng rng(9);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = (rng() >> 34) | 1U;  // up to 30 bits
    REQUIRE(zq::is_prime(n) == trial_division_prime(n));
  }
  // Strong pseudoprimes to several small bases.
  CHECK_FALSE(zq::is_prime(3215031751ULL));
  CHECK_FALSE(zq::is_prime(2152302898747ULL));
}

TEST_CASE("generate_sophie_germain_prime") {
  // Oracle: enumerate the b-bit Sophie-Germain primes by trial division.
  auto oracle = [](unsigned bits) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 1ULL << (bits - 1); q < (1ULL << bits); ++q)
      if (trial_division_prime(q) && trial_division_prime(2 * q + 1)) out.push_back(q);
    return out;
  };
  REQUIRE(oracle(3) == std::vector<std::uint64_t>{5});
  REQUIRE(oracle(4) == std::vector<std::uint64_t>{11});

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    CHECK(zq::generate_sophie_germain_prime(3, rng) == 5);
    CHECK(zq::generate_sophie_germain_prime(4, rng) == 11);
  }

  for (unsigned bits = 3; bits <= 16; ++bits) {
    const auto valid = oracle(bits);
    Rng rng(bits);
    const auto q = zq::generate_sophie_germain_prime(bits, rng);
    CHECK(std::find(valid.begin(), valid.end(), q) != valid.end());
  }

  Rng rng(1);
  for (unsigned bits : {20U, 28U, 32U}) {
    const auto q = zq::generate_sophie_germain_prime(bits, rng);
    CHECK((q >> (bits - 1)) == 1U);
    CHECK(zq::is_prime(q));
    CHECK(zq::is_prime(2 * q + 1));
  }

  CHECK_THROWS_AS(zq::generate_sophie_germain_prime(1, rng), ParameterError);
  CHECK_THROWS_AS(zq::generate_sophie_germain_prime(33, rng), ParameterError);
  // 2-bit primes are 2 and 3: 2*2+1=5 is prime, so bits=2 yields 2 or 3.
  const auto two = zq::generate_sophie_germain_prime(2, rng);
  CHECK((two == 2 || two == 3));
}

TEST_CASE("sample_noise_vector") {
  Rng rng(4);
  CHECK(zq::sample_noise_vector(50, 7, 0.0, rng) == ZqVector(50, 7));

  const auto ones = zq::sample_noise_vector(200, 5, 1.0, rng);
  for (auto e : ones.entries()) CHECK((e == 1 || e == 4));

  const auto sparse = zq::sample_noise_vector(10000, 179, 0.05, rng);
  std::size_t nonzero = 0, plus = 0;
  for (auto e : sparse.entries()) {
    CHECK((e == 0 || e == 1 || e == 178));
    nonzero += e != 0;
    plus += e == 1;
  }
  const double fraction = static_cast<double>(nonzero) / 10000.0;
  CHECK(fraction >= 0.03);
  CHECK(fraction <= 0.07);
  // Signs should be roughly balanced.
  CHECK(plus > nonzero / 4);
  CHECK(plus < 3 * nonzero / 4);
}

TEST_CASE("matmul") {
  const ZqVector v({1, 2}, 5);
  const ZqMatrix col(2, 1, 5, {3, 4});
  CHECK(zq::matmul(v, col) == ZqVector(std::vector<std::uint64_t>{1}, 5));

  Rng rng(2);
  const auto m = random_matrix(4, 6, 97, rng);
  CHECK(zq::matmul(ZqMatrix::identity(4, 97), m) == m);

  CHECK_THROWS_AS(zq::matmul(ZqMatrix(2, 3, 5), ZqMatrix(2, 3, 5)), ShapeError);
  CHECK_THROWS_AS(zq::matmul(ZqMatrix(2, 2, 5), ZqMatrix(2, 2, 7)), ShapeError);
  CHECK_THROWS_AS(zq::add(ZqVector(2, 5), ZqVector(3, 5)), ShapeError);
}

TEST_CASE("matmul matches a big-integer reference and obeys ring laws") {
  Rng rng(17);
  for (std::uint64_t q : {5ULL, 179ULL, 4294967291ULL}) {
    const auto a = random_matrix(3, 5, q, rng);
    const auto b = random_matrix(5, 4, q, rng);
    const auto c = random_matrix(4, 2, q, rng);
    const auto ab = zq::matmul(a, b);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        unsigned __int128 sum = 0;
        for (std::size_t k = 0; k < 5; ++k) sum += static_cast<unsigned __int128>(a(i, k)) * b(k, j);
        CHECK(ab(i, j) == static_cast<std::uint64_t>(sum % q));
      }
    CHECK(zq::matmul(ab, c) == zq::matmul(a, zq::matmul(b, c)));
    const auto b2 = random_matrix(5, 4, q, rng);
    CHECK(zq::matmul(a, zq::add(b, b2)) == zq::add(ab, zq::matmul(a, b2)));
    CHECK(zq::add(a, zq::negate(a)).is_zero());
    CHECK(zq::scale(a, 2) == zq::add(a, a));
  }
}

TEST_CASE("centered_residue") {
  CHECK(zq::centered_residue(4, 5) == -1);
  CHECK(zq::centered_residue(2, 5) == 2);
  CHECK(zq::centered_residue(7, 5) == 2);
  CHECK(zq::centered_residue(-1, 5) == -1);
  CHECK(zq::centered_residue(3, 6) == 3);
  for (std::uint64_t q : {5ULL, 6ULL, 179ULL}) {
    for (std::int64_t x = -400; x <= 400; ++x) {
      const auto r = zq::centered_residue(x, q);
      const auto half = static_cast<std::int64_t>(q / 2);
      REQUIRE(r >= -half);
      REQUIRE(r <= half);
      REQUIRE(((x - r) % static_cast<std::int64_t>(q)) == 0);
    }
  }
}

TEST_CASE("containers validate modulus and entries") {
  CHECK_THROWS_AS(ZqVector(std::vector<std::uint64_t>{5}, 5), ParameterError);
  CHECK_THROWS_AS(ZqVector(3, 1), ParameterError);
  CHECK_THROWS_AS(ZqMatrix(2, 2, (1ULL << 32) + 1), ParameterError);
  CHECK_THROWS_AS(ZqMatrix(2, 2, 5, {1, 2, 3}), ShapeError);

  ZqMatrix m(1, 1, 5);
  m.set(0, 0, 12);
  CHECK(m(0, 0) == 2);

  const auto appended = zq::append_row(ZqMatrix(2, 3, 7), ZqVector({1, 2, 3}, 7));
  CHECK(appended.rows() == 3);
  CHECK(appended(2, 2) == 3);
}
