#include "qhe/qsim.hpp"

#include <string>
#include <utility>

#include "qhe/error.hpp"

namespace qhe::qsim {

namespace {

void check_index(const BasisRegister& r, std::size_t i) {
  if (i >= r.width()) {
    throw ShapeError("qubit index " + std::to_string(i) + " out of range for width " +
                     std::to_string(r.width()));
  }
}

void check_qubit(const Qubit& q) {
  if (q.reg == nullptr) throw ShapeError("qubit refers to no register");
  check_index(*q.reg, q.index);
}

bool same_qubit(const Qubit& a, const Qubit& b) { return a.reg == b.reg && a.index == b.index; }

}  // namespace

BasisRegister::BasisRegister(std::size_t width) : bits_(width, 0) {
  if (width == 0) throw ShapeError("register width must be at least 1");
}

BasisRegister::BasisRegister(std::vector<std::uint8_t> bits, int phase)
    : bits_(std::move(bits)), phase_(phase) {
  if (bits_.empty()) throw ShapeError("register width must be at least 1");
  for (const auto b : bits_)
    if (b > 1) throw ParameterError("register bits must be 0 or 1");
  if (phase_ != 1 && phase_ != -1) throw ParameterError("register phase must be +1 or -1");
}

BasisRegister BasisRegister::from_integer(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0) {
    throw ShapeError(std::to_string(value) + " does not fit in " + std::to_string(width) + " qubits");
  }
  BasisRegister r(width);
  for (std::size_t i = 0; i < width && i < 64; ++i) r.bits_[i] = (value >> i) & 1U;
  return r;
}

std::uint8_t BasisRegister::bit(std::size_t i) const {
  check_index(*this, i);
  return bits_[i];
}

std::uint64_t BasisRegister::measure() const {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] == 0) continue;
    if (i >= 64) throw ShapeError("measured value exceeds 64 bits");
    value |= std::uint64_t{1} << i;
  }
  return value;
}

void BasisRegister::flip(std::size_t i) {
  check_index(*this, i);
  bits_[i] ^= 1U;
}

void apply_x(BasisRegister& r, std::size_t i) { r.flip(i); }

void apply_z(BasisRegister& r, std::size_t i) {
  if (r.bit(i) == 1) r.negate_phase();
}

void apply_cnot(Qubit control, Qubit target) {
  const Qubit controls[] = {control};
  apply_mcx(controls, target);
}

void apply_mcx(std::span<const Qubit> controls, Qubit target) {
  if (controls.empty()) throw ShapeError("multi-controlled X needs at least one control");
  check_qubit(target);
  bool fire = true;
  for (const auto& c : controls) {
    check_qubit(c);
    if (same_qubit(c, target)) throw ShapeError("control and target qubit coincide");
    fire = fire && c.reg->bit(c.index) == 1;
  }
  if (fire) target.reg->flip(target.index);
}

}  // namespace qhe::qsim
