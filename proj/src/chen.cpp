#include "qhe/chen.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <utility>

#include "qhe/error.hpp"
#include "qhe/wire.hpp"

namespace qhe::chen {

ChenParams ChenParams::for_message_bits(std::size_t n) {
  if (n < 1) throw ParameterError("Chen segments need at least one message bit");
  ChenParams params;
  params.n = n;
  params.k = static_cast<std::size_t>(std::bit_width(n));  // floor(log2 n) + 1
  params.N = params.n + params.k;
  return params;
}

HammingMatrices hamming_code_gen(std::size_t N, std::size_t k, Rng& rng) {
  if (N <= k) {
    throw ParameterError("Hamming parameters need N > k, got N=" + std::to_string(N) +
                         " k=" + std::to_string(k));
  }
  const std::size_t n = N - k;
  if (k > n) {
    throw ParameterError("cannot pick " + std::to_string(k) + " distinct complement columns from I_" +
                         std::to_string(n));
  }

  // Column j of G is either identity column e_i (source i) or the
  // ones-complement of e_i (source n + i).
  std::vector<std::size_t> complement(n);
  std::iota(complement.begin(), complement.end(), std::size_t{0});
  std::shuffle(complement.begin(), complement.end(), rng);

  std::vector<std::size_t> sources(n);
  std::iota(sources.begin(), sources.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) sources.push_back(n + complement[i]);
  std::shuffle(sources.begin(), sources.end(), rng);

  gf2::BitMatrix g(n, N);
  gf2::BitMatrix r(N, n);
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t src = sources[j];
    if (src < n) {
      g.set(src, j, 1);
      r.set(j, src, 1);
    } else {
      for (std::size_t row = 0; row < n; ++row) g.set(row, j, row == src - n ? 0 : 1);
    }
  }

  HammingMatrices out;
  out.s = gf2::random_invertible(n, rng);
  out.g = std::move(g);
  out.p = gf2::random_permutation(N, rng);
  out.r = std::move(r);
  return out;
}

KeyMaterial keygen_with_material(std::size_t n, Rng& rng) {
  if (n < 2) throw ParameterError("Chen keygen needs n >= 2");
  const auto params = ChenParams::for_message_bits(n);
  auto matrices = hamming_code_gen(params.N, params.k, rng);
  ChenKeys keys{
      .psi = gf2::matmul(gf2::matmul(matrices.s, matrices.g), matrices.p),
      .r = matrices.r,
      .s_inv = gf2::invert(matrices.s),
      .p_inv = gf2::invert(matrices.p),
  };
  return {std::move(keys), std::move(matrices)};
}

ChenKeys keygen(std::size_t n, Rng& rng) { return keygen_with_material(n, rng).keys; }

std::size_t segment_count(std::uint64_t x, std::size_t n) {
  const auto bits = static_cast<std::size_t>(std::bit_width(x));
  return std::max<std::size_t>(1, (bits + n - 1) / n);
}

ChenCiphertext encrypt(std::uint64_t x, const ChenKeys& keys, std::size_t min_segments) {
  const std::size_t n = keys.message_bits();
  const std::size_t count = std::max(segment_count(x, n), min_segments);
  ChenCiphertext c;
  c.segments.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t shift = i * n;
    const std::uint64_t chunk = shift >= 64 ? 0 : x >> shift;
    c.segments.push_back(gf2::matmul(gf2::BitVector::from_integer(chunk, n), keys.psi));
  }
  return c;
}

ChenCiphertext xor_add(const ChenCiphertext& c1, const ChenCiphertext& c2) {
  if (c1.size() != c2.size()) {
    throw ShapeError("Chen ciphertexts have " + std::to_string(c1.size()) + " and " +
                     std::to_string(c2.size()) + " segments");
  }
  ChenCiphertext out;
  out.segments.reserve(c1.size());
  for (std::size_t i = 0; i < c1.size(); ++i) out.segments.push_back(c1.segments[i] ^ c2.segments[i]);
  return out;
}

std::uint64_t decrypt(const ChenCiphertext& c, const ChenKeys& keys) {
  const std::size_t n = keys.message_bits();
  const auto decoder = gf2::matmul(gf2::matmul(keys.p_inv, keys.r), keys.s_inv);
  std::uint64_t result = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& seg = c.segments[i];
    if (seg.size() != keys.codeword_bits()) {
      throw ShapeError("segment " + std::to_string(i) + " has " + std::to_string(seg.size()) +
                       " bits, expected " + std::to_string(keys.codeword_bits()));
    }
    const std::uint64_t value = gf2::matmul(seg, decoder).to_integer();
    const std::size_t shift = i * n;
    if (value == 0) continue;
    if (shift >= 64 || (shift > 0 && (value >> (64 - shift)) != 0)) {
      throw ShapeError("decrypted value exceeds 64 bits");
    }
    result ^= value << shift;
  }
  return result;
}

std::uint64_t he_add(std::uint64_t x1, std::uint64_t x2, const ChenKeys& keys, AdditionService& cloud) {
  constexpr std::uint64_t limit = std::uint64_t{1} << 63;
  if (x1 >= limit || x2 >= limit) throw PreconditionError("Chen summands must be below 2^63");

  const std::uint64_t carry = (x1 & x2) << 1;
  const std::size_t n = keys.message_bits();
  const std::size_t segments = std::max(segment_count(x1, n), segment_count(x2, n));

  const wire::ProcessRequest request = wire::ChenRequest{encrypt(x1, keys, segments), encrypt(x2, keys, segments)};
  const auto response = wire::decode_response(cloud.process(wire::encode_request(request)), request);
  return decrypt(std::get<wire::ChenResult>(response).sum, keys) + carry;
}

}  // namespace qhe::chen
