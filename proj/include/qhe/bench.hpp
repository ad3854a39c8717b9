#pragma once

// Phase timing and ciphertext-size sweeps over the three schemes.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhe/service.hpp"
#include "qhe/wire.hpp"

namespace qhe::bench {

using wire::Scheme;

enum class Sweep { input, key };
enum class Phase { keygen, encrypt, cloud, decrypt, total };

inline constexpr Phase kPhases[] = {Phase::keygen, Phase::encrypt, Phase::cloud, Phase::decrypt, Phase::total};

std::string_view to_string(Sweep sweep);
std::string_view to_string(Phase phase);
Sweep parse_sweep(std::string_view name);

// GSW security parameters accepted by the key sweep.
inline constexpr unsigned kGswMinBenchK = 3;
inline constexpr unsigned kGswMaxBenchK = 12;

inline constexpr std::string_view kCsvHeader = "scheme,sweep,param,phase,run,wall_ns,ct_bytes,peak_alloc_bytes";

struct BenchRecord {
  Scheme scheme = Scheme::chen;
  Sweep sweep = Sweep::input;
  std::uint64_t param = 0;
  Phase phase = Phase::total;
  std::size_t run = 0;
  std::int64_t wall_ns = 0;
  // Bytes of one operand's ciphertext as held in memory: one byte per bit
  // for Chen and QOTP, eight bytes per entry for GSW.
  std::int64_t ct_bytes = 0;
  std::int64_t peak_alloc_bytes = -1;
  // The pipeline threw or produced a wrong sum; wall_ns and ct_bytes are -1.
  bool failed = false;
};

// Optional allocation counter; without one, peak_alloc_bytes is -1.
class AllocationProbe {
 public:
  virtual ~AllocationProbe() = default;
  virtual void reset_peak() = 0;
  // Peak bytes allocated above the level at the last reset_peak().
  virtual std::int64_t peak_bytes() const = 0;
};

struct BenchOptions {
  std::size_t runs = 5;
  std::uint64_t seed = 1;
  double gsw_noise_density = 0.02;
  AllocationProbe* probe = nullptr;
};

// Random summands with exactly `width` bits each, per run.
// GSW uses k = max(3, width + 2) and the full message space M = q, so widths
// above 10 are recorded as failed.
std::vector<BenchRecord> sweep_input_sizes(Scheme scheme, std::span<const unsigned> widths,
                                           const BenchOptions& options, AdditionService& cloud);

// Fixed summands across k. Chen and QOTP have no key-size parameter; k is
// recorded and otherwise ignored. GSW decrypts over the full message space
// M = q. Throws ParameterError for GSW k outside [3, 12].
std::vector<BenchRecord> sweep_key_sizes(Scheme scheme, std::span<const unsigned> ks, const BenchOptions& options,
                                         AdditionService& cloud);

// CSV text (header plus one row per record) in (scheme, sweep, param, run,
// phase) order. Throws ParameterError on empty input.
std::string format_csv(std::vector<BenchRecord> records);
void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path);

// Median wall time per param for one scheme and phase, ignoring failed runs.
std::map<std::uint64_t, double> median_wall_ns(const std::vector<BenchRecord>& records, Scheme scheme, Phase phase);

}  // namespace qhe::bench
