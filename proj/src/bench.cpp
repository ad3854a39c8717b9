#include "qhe/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <sstream>
#include <tuple>
#include <type_traits>
#include <utility>

#include "qhe/chen.hpp"
#include "qhe/error.hpp"
#include "qhe/gsw.hpp"
#include "qhe/qotp.hpp"
#include "qhe/rng.hpp"

namespace qhe::bench {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kPhaseCount = std::size(kPhases);

struct RunResult {
  std::array<std::int64_t, kPhaseCount> wall_ns{};
  std::array<std::int64_t, kPhaseCount> peak{};
  std::int64_t ct_bytes = 0;
  bool ok = true;
};

// Times consecutive phases of one pipeline run.
class PhaseTimer {
 public:
  explicit PhaseTimer(AllocationProbe* probe) : probe_(probe) {
    result_.peak.fill(-1);
    if (probe_) probe_->reset_peak();
    run_start_ = Clock::now();
  }

  template <typename F>
  auto measure(Phase phase, F&& body) {
    const auto i = static_cast<std::size_t>(phase);
    if (probe_) probe_->reset_peak();
    const auto start = Clock::now();
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      record(i, start);
    } else {
      auto value = body();
      record(i, start);
      return value;
    }
  }

  RunResult finish(std::int64_t ct_bytes, bool ok) {
    const auto total = static_cast<std::size_t>(Phase::total);
    result_.wall_ns[total] = elapsed(run_start_);
    std::int64_t peak = -1;
    for (std::size_t i = 0; i < total; ++i) peak = std::max(peak, result_.peak[i]);
    result_.peak[total] = peak;
    result_.ct_bytes = ct_bytes;
    result_.ok = ok;
    return result_;
  }

 private:
  static std::int64_t elapsed(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
  }

  void record(std::size_t i, Clock::time_point start) {
    result_.wall_ns[i] = elapsed(start);
    if (probe_) result_.peak[i] = probe_->peak_bytes();
  }

  AllocationProbe* probe_;
  Clock::time_point run_start_;
  RunResult result_;
};

RunResult run_chen(std::uint64_t x1, std::uint64_t x2, Rng& rng, AdditionService& cloud, AllocationProbe* probe) {
  PhaseTimer timer(probe);
  const auto keys = timer.measure(Phase::keygen, [&] { return chen::keygen(4, rng); });
  const auto request = timer.measure(Phase::encrypt, [&] {
    const std::size_t segments = std::max(chen::segment_count(x1, 4), chen::segment_count(x2, 4));
    return wire::ProcessRequest{wire::ChenRequest{chen::encrypt(x1, keys, segments), chen::encrypt(x2, keys, segments)}};
  });
  const std::uint64_t carry = (x1 & x2) << 1;
  const auto response = timer.measure(Phase::cloud, [&] {
    return wire::decode_response(cloud.process(wire::encode_request(request)), request);
  });
  const auto sum = timer.measure(Phase::decrypt, [&] {
    return chen::decrypt(std::get<wire::ChenResult>(response).sum, keys) + carry;
  });
  std::int64_t bytes = 0;
  for (const auto& seg : std::get<wire::ChenRequest>(request).a.segments) bytes += static_cast<std::int64_t>(seg.size());
  return timer.finish(bytes, sum == x1 + x2);
}

RunResult run_gsw(unsigned k, std::uint64_t x1, std::uint64_t x2, double noise, Rng& rng, AdditionService& cloud,
                  AllocationProbe* probe) {
  PhaseTimer timer(probe);
  const auto keys = timer.measure(Phase::keygen, [&] {
    // Full message space: the decoder scans all of Z_q.
    auto generated = gsw::keygen(k, noise, 0, rng);
    generated.params.message_bound = generated.params.q;
    return generated;
  });
  const auto request = timer.measure(Phase::encrypt, [&] {
    return wire::ProcessRequest{wire::GswRequest{gsw::encrypt(keys.pk, keys.params, x1, rng).c,
                                                 gsw::encrypt(keys.pk, keys.params, x2, rng).c}};
  });
  const auto response = timer.measure(Phase::cloud, [&] {
    return wire::decode_response(cloud.process(wire::encode_request(request)), request);
  });
  const auto sum = timer.measure(Phase::decrypt, [&] {
    return gsw::decrypt(keys.sk, keys.params, gsw::GswCiphertext{std::get<wire::GswResult>(response).c, std::nullopt});
  });
  const auto bytes = static_cast<std::int64_t>(keys.params.n * keys.params.m * sizeof(std::uint64_t));
  return timer.finish(bytes, sum == x1 + x2);
}

RunResult run_qotp(std::uint64_t m1, std::uint64_t m2, Rng& rng, AdditionService& cloud, AllocationProbe* probe) {
  PhaseTimer timer(probe);
  const std::size_t w = std::max(qotp::bit_width_of(m1), qotp::bit_width_of(m2));
  const auto keys = timer.measure(Phase::keygen, [&] { return qotp::keygen(w, rng); });
  std::uint64_t carry = 0;
  const auto request = timer.measure(Phase::encrypt, [&] {
    carry = qotp::bit_carry(m1, m2, w);
    return wire::ProcessRequest{wire::QotpRequest{qotp::encrypt(m1, m2, keys)}};
  });
  const auto response = timer.measure(Phase::cloud, [&] {
    return wire::decode_response(cloud.process(wire::encode_request(request)), request);
  });
  const auto sum = timer.measure(Phase::decrypt, [&] {
    return qotp::decrypt(std::get<wire::QotpResult>(response).result, keys, carry);
  });
  return timer.finish(static_cast<std::int64_t>(w), sum == m1 + m2);
}

void append_records(std::vector<BenchRecord>& out, Scheme scheme, Sweep sweep, std::uint64_t param, std::size_t run,
                    const RunResult& result) {
  for (const Phase phase : kPhases) {
    const auto i = static_cast<std::size_t>(phase);
    BenchRecord rec;
    rec.scheme = scheme;
    rec.sweep = sweep;
    rec.param = param;
    rec.phase = phase;
    rec.run = run;
    rec.failed = !result.ok;
    rec.wall_ns = result.ok ? result.wall_ns[i] : -1;
    rec.ct_bytes = result.ok ? result.ct_bytes : -1;
    rec.peak_alloc_bytes = result.ok ? result.peak[i] : -1;
    out.push_back(rec);
  }
}

RunResult failed_run() {
  RunResult r;
  r.ok = false;
  return r;
}

std::uint64_t summand_with_width(unsigned width, Rng& rng) {
  if (width == 1) return 1;
  const std::uint64_t lo = std::uint64_t{1} << (width - 1);
  const std::uint64_t hi = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

RunResult run_pipeline(Scheme scheme, unsigned gsw_k, std::uint64_t x1, std::uint64_t x2, const BenchOptions& options,
                       Rng& rng, AdditionService& cloud) {
  try {
    switch (scheme) {
      case Scheme::chen:
        return run_chen(x1, x2, rng, cloud, options.probe);
      case Scheme::gsw:
        return run_gsw(gsw_k, x1, x2, options.gsw_noise_density, rng, cloud, options.probe);
      case Scheme::qotp:
        return run_qotp(x1, x2, rng, cloud, options.probe);
    }
  } catch (const Error&) {
  }
  return failed_run();
}

}  // namespace

std::string_view to_string(Sweep sweep) { return sweep == Sweep::input ? "input" : "key"; }

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::keygen:
      return "keygen";
    case Phase::encrypt:
      return "encrypt";
    case Phase::cloud:
      return "cloud";
    case Phase::decrypt:
      return "decrypt";
    case Phase::total:
      return "total";
  }
  return "unknown";
}

Sweep parse_sweep(std::string_view name) {
  if (name == "input") return Sweep::input;
  if (name == "key") return Sweep::key;
  throw ParameterError("unknown sweep \"" + std::string(name) + "\"");
}

std::vector<BenchRecord> sweep_input_sizes(Scheme scheme, std::span<const unsigned> widths,
                                           const BenchOptions& options, AdditionService& cloud) {
  if (widths.empty()) throw ParameterError("input sweep needs at least one width");
  for (const unsigned w : widths) {
    if (w < 1 || w > 32) throw ParameterError("input widths must be in [1, 32], got " + std::to_string(w));
  }
  Rng summands(options.seed);
  Rng crypto(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<BenchRecord> out;
  for (const unsigned w : widths) {
    for (std::size_t run = 0; run < options.runs; ++run) {
      const std::uint64_t x1 = summand_with_width(w, summands);
      const std::uint64_t x2 = summand_with_width(w, summands);
      const unsigned k = std::max(kGswMinBenchK, w + 2);
      const RunResult result = (scheme == Scheme::gsw && k > kGswMaxBenchK)
                                   ? failed_run()
                                   : run_pipeline(scheme, k, x1, x2, options, crypto, cloud);
      append_records(out, scheme, Sweep::input, w, run, result);
    }
  }
  return out;
}

std::vector<BenchRecord> sweep_key_sizes(Scheme scheme, std::span<const unsigned> ks, const BenchOptions& options,
                                         AdditionService& cloud) {
  if (ks.empty()) throw ParameterError("key sweep needs at least one k");
  if (scheme == Scheme::gsw) {
    for (const unsigned k : ks) {
      if (k < kGswMinBenchK || k > kGswMaxBenchK) {
        throw ParameterError("GSW key sweep supports k in [3, 12], got " + std::to_string(k));
      }
    }
  }
  Rng summands(options.seed);
  // GSW summands must fit the smallest modulus (q = 5 at k = 3).
  const std::uint64_t x1 = scheme == Scheme::gsw ? 1 : summand_with_width(16, summands);
  const std::uint64_t x2 = scheme == Scheme::gsw ? 2 : summand_with_width(16, summands);
  Rng crypto(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<BenchRecord> out;
  for (const unsigned k : ks) {
    for (std::size_t run = 0; run < options.runs; ++run) {
      append_records(out, scheme, Sweep::key, k, run, run_pipeline(scheme, k, x1, x2, options, crypto, cloud));
    }
  }
  return out;
}

std::string format_csv(std::vector<BenchRecord> records) {
  if (records.empty()) throw ParameterError("no benchmark records to write");
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.scheme, a.sweep, a.param, a.run, a.phase) < std::tie(b.scheme, b.sweep, b.param, b.run, b.phase);
  });
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << wire::to_string(r.scheme) << ',' << to_string(r.sweep) << ',' << r.param << ',' << to_string(r.phase) << ','
        << r.run << ',' << r.wall_ns << ',' << r.ct_bytes << ',' << r.peak_alloc_bytes << '\n';
  }
  return out.str();
}

void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path) {
  const std::string text = format_csv(records);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing " + path.string());
}

std::map<std::uint64_t, double> median_wall_ns(const std::vector<BenchRecord>& records, Scheme scheme, Phase phase) {
  std::map<std::uint64_t, std::vector<std::int64_t>> samples;
  for (const auto& r : records) {
    if (r.scheme == scheme && r.phase == phase && !r.failed) samples[r.param].push_back(r.wall_ns);
  }
  std::map<std::uint64_t, double> medians;
  for (auto& [param, values] : samples) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    medians[param] = values.size() % 2 == 1 ? static_cast<double>(values[mid])
                                            : (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
  }
  return medians;
}

}  // namespace qhe::bench
