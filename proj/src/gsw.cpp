#include "qhe/gsw.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qhe/error.hpp"
#include "qhe/wire.hpp"

namespace qhe::gsw {

namespace {

void check_ciphertext(const GswParams& params, const zq::ZqMatrix& c) {
  if (c.modulus() != params.q) {
    throw ShapeError("ciphertext modulus " + std::to_string(c.modulus()) + " differs from key modulus " +
                     std::to_string(params.q));
  }
  if (c.rows() != params.n || c.cols() != params.m) {
    throw ShapeError("ciphertext must be " + std::to_string(params.n) + "x" + std::to_string(params.m));
  }
}

zq::ZqMatrix sample_binary_matrix(std::size_t rows, std::size_t cols, std::uint64_t q, Rng& rng) {
  std::vector<std::uint64_t> entries(rows * cols);
  std::uint64_t pool = 0;
  unsigned left = 0;
  for (auto& e : entries) {
    if (left == 0) {
      pool = rng();
      left = 64;
    }
    e = pool & 1U;
    pool >>= 1U;
    --left;
  }
  return zq::ZqMatrix(rows, cols, q, std::move(entries));
}

}  // namespace

std::size_t ceil_log2(std::uint64_t q) {
  if (q < 2) throw ParameterError("ceil_log2 needs q >= 2");
  return static_cast<std::size_t>(std::bit_width(q - 1));
}

GswKeys keygen(unsigned k, double noise_density, std::uint64_t message_bound, Rng& rng) {
  if (k < kMinSecurityBits || k > kMaxSecurityBits) {
    throw ParameterError("GSW security parameter must be in [3, 16], got " + std::to_string(k));
  }
  if (!(noise_density >= 0.0 && noise_density <= 1.0)) {
    throw ParameterError("GSW noise density must lie in [0, 1]");
  }

  GswParams params;
  params.k = k;
  params.q = zq::generate_sophie_germain_prime(k, rng);
  params.n = k;
  params.l = ceil_log2(params.q);
  params.m = params.n * params.l;
  params.noise_density = noise_density;
  params.message_bound = message_bound == 0 ? std::min(kDefaultMessageBound, params.q) : message_bound;
  if (params.message_bound < 1 || params.message_bound > params.q) {
    throw ParameterError("GSW message bound must lie in [1, q=" + std::to_string(params.q) + "], got " +
                         std::to_string(params.message_bound));
  }

  const std::uint64_t q = params.q;
  const auto s = zq::sample_uniform_vector(params.n - 1, q, rng);
  const auto a = zq::sample_uniform_matrix(params.n - 1, params.m, q, rng);
  auto e = zq::sample_noise_vector(params.m, q, noise_density, rng);

  const auto b = zq::append_row(zq::negate(a), zq::add(zq::matmul(s, a), e));

  std::vector<std::uint64_t> t(s.entries().begin(), s.entries().end());
  t.push_back(1);

  return GswKeys{
      .params = params,
      .sk = {zq::ZqVector(std::move(t), q)},
      .pk = {b},
      .noise = std::move(e),
  };
}

zq::ZqMatrix gadget_matrix(std::size_t n, std::size_t l, std::uint64_t q) {
  if (n < 1 || l < 1) throw ParameterError("gadget matrix needs n, l >= 1");
  if (l > 63) throw ParameterError("gadget block too wide");
  zq::ZqMatrix g(n, n * l, q);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < l; ++j) g.set(i, i * l + j, (std::uint64_t{1} << j) % q);
  return g;
}

GswCiphertext encrypt_with(const GswPublicKey& pk, const GswParams& params, std::uint64_t mu,
                           const zq::ZqMatrix& r) {
  if (mu >= params.message_bound) {
    throw PreconditionError("GSW message " + std::to_string(mu) + " is not below the bound " +
                            std::to_string(params.message_bound));
  }
  if (r.rows() != params.m || r.cols() != params.m) throw ShapeError("GSW randomness must be m x m");
  for (const auto v : r.entries())
    if (v > 1) throw ParameterError("GSW randomness must be binary");

  const auto g = gadget_matrix(params.n, params.l, params.q);
  return GswCiphertext{
      .c = zq::add(zq::matmul(pk.b, r), zq::scale(g, mu)),
      .randomness = r,
  };
}

GswCiphertext encrypt(const GswPublicKey& pk, const GswParams& params, std::uint64_t mu, Rng& rng) {
  return encrypt_with(pk, params, mu, sample_binary_matrix(params.m, params.m, params.q, rng));
}

GswCiphertext add(const GswCiphertext& c1, const GswCiphertext& c2) {
  return GswCiphertext{.c = zq::add(c1.c, c2.c), .randomness = std::nullopt};
}

namespace {

// Per-coordinate pieces of the score, shared between decrypt and
// decryption_score.
struct Projection {
  std::vector<std::int64_t> w;   // t^T C
  std::vector<std::uint64_t> tg;  // t^T G
};

Projection project(const GswSecretKey& sk, const GswParams& params, const GswCiphertext& c) {
  check_ciphertext(params, c.c);
  const auto w = zq::matmul(sk.t, c.c);
  const auto tg = zq::matmul(sk.t, gadget_matrix(params.n, params.l, params.q));
  Projection p;
  p.w.assign(w.entries().begin(), w.entries().end());
  p.tg.assign(tg.entries().begin(), tg.entries().end());
  return p;
}

std::uint64_t score_of(const Projection& p, std::uint64_t q, std::uint64_t mu) {
  std::uint64_t score = 0;
  for (std::size_t j = 0; j < p.w.size(); ++j) {
    const auto expected = static_cast<std::int64_t>(mu % q * p.tg[j] % q);
    const std::int64_t r = zq::centered_residue(p.w[j] - expected, q);
    score += static_cast<std::uint64_t>(r < 0 ? -r : r);
  }
  return score;
}

}  // namespace

std::uint64_t decryption_score(const GswSecretKey& sk, const GswParams& params, const GswCiphertext& c,
                               std::uint64_t mu) {
  return score_of(project(sk, params, c), params.q, mu);
}

std::uint64_t decrypt(const GswSecretKey& sk, const GswParams& params, const GswCiphertext& c) {
  const auto p = project(sk, params, c);
  const std::uint64_t q = params.q;
  // d[j] = (w_j - mu * tg_j) mod q, stepped from one candidate to the next.
  std::vector<std::uint64_t> d(p.w.begin(), p.w.end());
  std::uint64_t best = 0;
  std::uint64_t best_score = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t mu = 0; mu < params.message_bound; ++mu) {
    std::uint64_t score = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      // Absolute value of the centered residue.
      score += d[j] <= q / 2 ? d[j] : q - d[j];
      d[j] = d[j] >= p.tg[j] ? d[j] - p.tg[j] : d[j] + q - p.tg[j];
    }
    if (score < best_score) {
      best = mu;
      best_score = score;
    }
  }
  return best;
}

std::uint64_t he_add(std::uint64_t x1, std::uint64_t x2, const GswKeys& keys, AdditionService& cloud,
                     Rng& rng) {
  const std::uint64_t bound = keys.params.message_bound;
  if (x1 >= bound || x2 >= bound || x1 + x2 >= bound) {
    throw PreconditionError("GSW sum " + std::to_string(x1) + " + " + std::to_string(x2) +
                            " is not below the message bound " + std::to_string(bound));
  }
  const wire::ProcessRequest request = wire::GswRequest{
      encrypt(keys.pk, keys.params, x1, rng).c,
      encrypt(keys.pk, keys.params, x2, rng).c,
  };
  const auto response = wire::decode_response(cloud.process(wire::encode_request(request)), request);
  return decrypt(keys.sk, keys.params, GswCiphertext{std::get<wire::GswResult>(response).c, std::nullopt});
}

}  // namespace qhe::gsw
