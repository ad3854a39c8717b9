#pragma once

// Computational-basis register simulator.
//
// X, Z, CNOT and multi-controlled X map a basis state to a basis state up to
// a sign, so a register is exactly described by its bit string and a global
// phase in {+1, -1}. No amplitudes are kept.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qhe::qsim {

class BasisRegister {
 public:
  explicit BasisRegister(std::size_t width);
  BasisRegister(std::vector<std::uint8_t> bits, int phase = 1);

  // Bit i holds bit i of `value`; index 0 is least significant.
  static BasisRegister from_integer(std::uint64_t value, std::size_t width);

  std::size_t width() const noexcept { return bits_.size(); }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::uint8_t bit(std::size_t i) const;
  int phase() const noexcept { return phase_; }

  // Reads the register. Deterministic because the state is a basis state.
  std::uint64_t measure() const;

  // Raw state edits used by the gate functions below.
  void flip(std::size_t i);
  void negate_phase() noexcept { phase_ = -phase_; }

  friend bool operator==(const BasisRegister&, const BasisRegister&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  int phase_ = 1;
};

struct Qubit {
  BasisRegister* reg;
  std::size_t index;
};

void apply_x(BasisRegister& r, std::size_t i);

// Negates the phase iff bit i is 1.
void apply_z(BasisRegister& r, std::size_t i);

// target ^= control. Throws ShapeError when control and target coincide.
void apply_cnot(Qubit control, Qubit target);

// target ^= AND(controls). Controls must be nonempty and distinct from target.
void apply_mcx(std::span<const Qubit> controls, Qubit target);

}  // namespace qhe::qsim
