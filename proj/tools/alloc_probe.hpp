#pragma once

#include <cstdint>

#include "qhe/bench.hpp"

namespace qhe::tools {

// Counts bytes handed out by the global operator new of this executable.
class HeapProbe final : public bench::AllocationProbe {
 public:
  void reset_peak() override;
  std::int64_t peak_bytes() const override;
};

}  // namespace qhe::tools
