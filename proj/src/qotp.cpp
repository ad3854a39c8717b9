#include "qhe/qotp.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "qhe/error.hpp"
#include "qhe/qsim.hpp"
#include "qhe/wire.hpp"

namespace qhe::qotp {

namespace {

void check_fits(std::uint64_t v, std::size_t width) {
  if (width == 0 || width > 64) throw ShapeError("QOTP width must be in [1, 64]");
  if (width < 64 && (v >> width) != 0) {
    throw ShapeError(std::to_string(v) + " does not fit in " + std::to_string(width) + " qubits");
  }
}

void check_keys(const QotpKeys& keys) {
  const std::size_t w = keys.a.size();
  if (w == 0 || keys.b.size() != w || keys.c.size() != w || keys.d.size() != w) {
    throw ShapeError("QOTP key lists must be nonempty and of equal length");
  }
}

}  // namespace

std::size_t bit_width_of(std::uint64_t v) { return std::max<std::size_t>(1, std::bit_width(v)); }

QotpKeys keygen(std::size_t width, Rng& rng) {
  if (width == 0) throw ParameterError("QOTP key width must be at least 1");
  std::bernoulli_distribution coin(0.5);
  QotpKeys keys;
  for (Bits* list : {&keys.a, &keys.b, &keys.c, &keys.d}) list->resize(width);
  // Per qubit: a, b, c, d in turn.
  for (std::size_t i = 0; i < width; ++i) {
    keys.a[i] = coin(rng) ? 1 : 0;
    keys.b[i] = coin(rng) ? 1 : 0;
    keys.c[i] = coin(rng) ? 1 : 0;
    keys.d[i] = coin(rng) ? 1 : 0;
  }
  return keys;
}

std::uint64_t bit_carry(std::uint64_t m1, std::uint64_t m2, std::size_t width) {
  check_fits(m1, width);
  check_fits(m2, width);
  auto r1 = qsim::BasisRegister::from_integer(m1, width);
  auto r2 = qsim::BasisRegister::from_integer(m2, width);
  qsim::BasisRegister carry(width + 1);
  for (std::size_t i = 0; i < width; ++i) {
    const qsim::Qubit controls[] = {{&r1, i}, {&r2, i}};
    qsim::apply_mcx(controls, {&carry, i});
  }
  const std::uint64_t value = carry.measure();
  if ((value >> 63) != 0) throw ShapeError("carry exceeds 64 bits");
  return value << 1;
}

QotpCipherPair encrypt(std::uint64_t m1, std::uint64_t m2, const QotpKeys& keys) {
  check_keys(keys);
  const std::size_t w = keys.width();
  check_fits(m1, w);
  check_fits(m2, w);
  auto r1 = qsim::BasisRegister::from_integer(m1, w);
  auto r2 = qsim::BasisRegister::from_integer(m2, w);
  for (std::size_t i = 0; i < w; ++i) {
    if (keys.a[i] == 1) qsim::apply_x(r1, i);
    if (keys.b[i] == 1) qsim::apply_z(r1, i);
    if (keys.c[i] == 1) qsim::apply_x(r2, i);
    if (keys.d[i] == 1) qsim::apply_z(r2, i);
  }
  return QotpCipherPair{
      .x_bits = Bits(r1.bits().begin(), r1.bits().end()),
      .y_bits = Bits(r2.bits().begin(), r2.bits().end()),
      .x_phase = r1.phase(),
      .y_phase = r2.phase(),
  };
}

QotpResult cloud_parity_add(const QotpCipherPair& pair) {
  if (pair.x_bits.size() != pair.y_bits.size()) {
    throw ShapeError("QOTP registers have widths " + std::to_string(pair.x_bits.size()) + " and " +
                     std::to_string(pair.y_bits.size()));
  }
  qsim::BasisRegister control(pair.x_bits, pair.x_phase);
  qsim::BasisRegister target(pair.y_bits, pair.y_phase);
  for (std::size_t i = 0; i < control.width(); ++i) qsim::apply_cnot({&control, i}, {&target, i});
  return QotpResult{
      .bits = Bits(target.bits().begin(), target.bits().end()),
      .phase = control.phase() * target.phase(),
  };
}

std::uint64_t decrypt_parity(const QotpResult& result, const QotpKeys& keys) {
  check_keys(keys);
  if (result.bits.size() != keys.width()) {
    throw ShapeError("QOTP result has " + std::to_string(result.bits.size()) + " qubits, keys cover " +
                     std::to_string(keys.width()));
  }
  qsim::BasisRegister r(result.bits, result.phase);
  for (std::size_t i = 0; i < r.width(); ++i) {
    if (keys.a[i] != keys.c[i]) qsim::apply_x(r, i);
    if (keys.d[i] == 1) qsim::apply_z(r, i);
  }
  return r.measure();
}

std::uint64_t decrypt(const QotpResult& result, const QotpKeys& keys, std::uint64_t carry) {
  return decrypt_parity(result, keys) + carry;
}

std::uint64_t he_add(std::uint64_t m1, std::uint64_t m2, AdditionService& cloud, Rng& rng) {
  constexpr std::uint64_t limit = std::uint64_t{1} << 63;
  if (m1 >= limit || m2 >= limit) throw PreconditionError("QOTP summands must be below 2^63");

  const std::size_t w = std::max(bit_width_of(m1), bit_width_of(m2));
  const std::uint64_t carry = bit_carry(m1, m2, w);
  const auto keys = keygen(w, rng);
  const wire::ProcessRequest request = wire::QotpRequest{encrypt(m1, m2, keys)};
  const auto response = wire::decode_response(cloud.process(wire::encode_request(request)), request);
  return decrypt(std::get<wire::QotpResult>(response).result, keys, carry);
}

}  // namespace qhe::qotp
