// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "httplib.h"
#include "qhe/bench.hpp"
#include "qhe/chen.hpp"
#include "qhe/cloudsvc.hpp"
#include "qhe/error.hpp"
#include "qhe/gsw.hpp"
#include "qhe/qotp.hpp"
#include "qhe/qsim.hpp"
#include "qhe/wire.hpp"

using namespace qhe;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failure notes; keeps only the first few for the summary line.
struct Checker {
  bool ok = true;
  std::size_t failures = 0;
  std::ostringstream notes;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (failures++ < 3) notes << (failures > 1 ? "; " : "") << what;
  }
  Outcome outcome(const std::string& summary) const {
    if (ok) return {true, summary};
    return {false, summary + " | " + std::to_string(failures) + " failures: " + notes.str()};
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

// 1. Chen XOR homomorphism, exhaustive over 4-bit pairs.
Outcome criterion_1() {
  Checker check;
  const auto start = Clock::now();
  for (std::uint64_t key = 0; key < 20; ++key) {
    Rng rng(1000 + key);
    const auto keys = chen::keygen(4, rng);
    for (std::uint64_t x = 0; x < 16; ++x)
      for (std::uint64_t y = 0; y < 16; ++y) {
        const auto got = chen::decrypt(chen::xor_add(chen::encrypt(x, keys), chen::encrypt(y, keys)), keys);
        check.expect(got == (x ^ y), "key " + std::to_string(key) + " x=" + std::to_string(x) + " y=" +
                                         std::to_string(y) + " got " + std::to_string(got));
      }
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < 5.0, "took " + fixed(elapsed) + " s");
  return check.outcome("5120 pairs over 20 keys in " + fixed(elapsed, 3) + " s");
}

// 2. Chen he_add equals integer addition.
Outcome criterion_2() {
  Checker check;
  cloud::LoopbackService cloud;
  Rng rng(2);
  const auto keys = chen::keygen(4, rng);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = rng() & 0xFFFFFFFFULL, y = rng() & 0xFFFFFFFFULL;
    const auto got = chen::he_add(x, y, keys, cloud);
    check.expect(got == x + y, std::to_string(x) + "+" + std::to_string(y) + " gave " + std::to_string(got));
  }
  return check.outcome("1000 random 32-bit pairs");
}

// 3. Chen key algebra.
Outcome criterion_3() {
  Checker check;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(300 + seed);
    const auto km = chen::keygen_with_material(4, rng);
    const auto& m = km.matrices;
    check.expect(gf2::matmul(m.g, m.r) == gf2::BitMatrix::identity(4), "G*R != I4 for seed " + std::to_string(seed));
    check.expect(gf2::matmul(m.s, km.keys.s_inv) == gf2::BitMatrix::identity(4),
                 "S*S^-1 != I4 for seed " + std::to_string(seed));
    check.expect(gf2::matmul(m.p, km.keys.p_inv) == gf2::BitMatrix::identity(7),
                 "P*P^-1 != I7 for seed " + std::to_string(seed));
  }
  return check.outcome("100 keys");
}

// t^T B computed directly, for criterion 6.
bool key_identity_holds(const gsw::GswKeys& keys) {
  const auto& b = keys.pk.b;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < b.rows(); ++i) acc += static_cast<unsigned __int128>(keys.sk.t[i]) * b(i, j);
    if (static_cast<std::uint64_t>(acc % b.modulus()) != keys.noise[j]) return false;
  }
  return true;
}

std::size_t keys_checked = 0;
std::size_t keys_failed = 0;

void record_key(const gsw::GswKeys& keys) {
  ++keys_checked;
  if (!key_identity_holds(keys)) ++keys_failed;
}

// 4. GSW noiseless oracle.
Outcome criterion_4() {
  Checker check;
  std::size_t cases = 0;
  for (unsigned k : {3U, 8U}) {
    Rng rng(400 + k);
    const auto keys = gsw::keygen(k, 0.0, 0, rng);
    record_key(keys);
    const auto bound = keys.params.message_bound;
    check.expect(bound == std::min<std::uint64_t>(16, keys.params.q), "unexpected bound");
    for (std::uint64_t mu = 0; mu < bound; ++mu) {
      const auto got = gsw::decrypt(keys.sk, keys.params, gsw::encrypt(keys.pk, keys.params, mu, rng));
      check.expect(got == mu, "k=" + std::to_string(k) + " mu=" + std::to_string(mu) + " got " + std::to_string(got));
      ++cases;
    }
    for (std::uint64_t x = 0; x < bound; ++x)
      for (std::uint64_t y = 0; x + y < bound; ++y) {
        const auto sum = gsw::add(gsw::encrypt(keys.pk, keys.params, x, rng), gsw::encrypt(keys.pk, keys.params, y, rng));
        const auto got = gsw::decrypt(keys.sk, keys.params, sum);
        check.expect(got == x + y, "k=" + std::to_string(k) + " " + std::to_string(x) + "+" + std::to_string(y) +
                                       " got " + std::to_string(got));
        ++cases;
      }
  }
  return check.outcome(std::to_string(cases) + " noiseless cases at k=3 and k=8");
}

std::size_t hamming_weight(const zq::ZqVector& v) {
  return static_cast<std::size_t>(std::count_if(v.entries().begin(), v.entries().end(), [](auto e) { return e != 0; }));
}

// 5. GSW with noise, statistical.
Outcome criterion_5() {
  const auto start = Clock::now();
  cloud::LoopbackService cloud;
  Rng rng(5);
  int roundtrip_ok = 0, add_ok = 0;
  constexpr int kTrials = 500;
  std::ostringstream log;
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto keys = gsw::keygen(8, 0.02, 16, rng);
    record_key(keys);
    const std::uint64_t mu = rng() % 16;
    const auto c = gsw::encrypt(keys.pk, keys.params, mu, rng);
    const auto got = gsw::decrypt(keys.sk, keys.params, c);
    if (got == mu) {
      ++roundtrip_ok;
    } else {
      log << "  roundtrip trial " << trial << ": mu=" << mu << " got=" << got
          << " noise_weight=" << hamming_weight(keys.noise)
          << " score(mu)=" << gsw::decryption_score(keys.sk, keys.params, c, mu)
          << " score(got)=" << gsw::decryption_score(keys.sk, keys.params, c, got) << '\n';
    }
    const std::uint64_t x = rng() % 8, y = rng() % 8;
    const auto sum = gsw::he_add(x, y, keys, cloud, rng);
    if (sum == x + y) {
      ++add_ok;
    } else {
      log << "  addition trial " << trial << ": " << x << "+" << y << " got=" << sum
          << " noise_weight=" << hamming_weight(keys.noise) << '\n';
    }
  }
  const double elapsed = seconds_since(start);
  if (!log.str().empty()) std::cout << "criterion 5 failures (k=8, p=0.02, M=16):\n" << log.str();
  const bool pass = roundtrip_ok * 100 >= kTrials * 99 && add_ok * 100 >= kTrials * 99 && elapsed < 60.0;
  return {pass, "roundtrip " + std::to_string(roundtrip_ok) + "/500, addition " + std::to_string(add_ok) + "/500 in " +
                    fixed(elapsed) + " s"};
}

// 6. GSW key identity on every key generated above plus a sweep over k.
Outcome criterion_6() {
  for (unsigned k = 3; k <= 16; ++k)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng rng(600 + 31 * k + seed);
      record_key(gsw::keygen(k, 0.1, 0, rng));
    }
  return {keys_failed == 0, std::to_string(keys_checked - keys_failed) + "/" + std::to_string(keys_checked) +
                                " keys satisfy t^T B = e^T"};
}

// 7. QOTP exhaustive.
Outcome criterion_7() {
  Checker check;
  cloud::LoopbackService cloud;
  for (std::uint64_t set = 0; set < 50; ++set) {
    Rng rng(700 + set);
    const auto keys = qotp::keygen(4, rng);
    for (std::uint64_t x = 0; x < 16; ++x)
      for (std::uint64_t y = 0; y < 16; ++y) {
        const auto pair = qotp::encrypt(x, y, keys);
        const auto request = wire::ProcessRequest{wire::QotpRequest{pair}};
        const auto response = wire::decode_response(cloud.process(wire::encode_request(request)), request);
        const auto got = qotp::decrypt(std::get<wire::QotpResult>(response).result, keys, qotp::bit_carry(x, y, 4));
        check.expect(got == x + y, "key set " + std::to_string(set) + " " + std::to_string(x) + "+" +
                                       std::to_string(y) + " got " + std::to_string(got));
      }
  }
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = rng() & 0xFFFFFFFFULL, y = rng() & 0xFFFFFFFFULL;
    const auto got = qotp::he_add(x, y, cloud, rng);
    check.expect(got == x + y, std::to_string(x) + "+" + std::to_string(y) + " got " + std::to_string(got));
  }
  return check.outcome("12800 4-bit cases over 50 key sets, 1000 random 32-bit pairs");
}

// 8. Simulator against a plain reversible-bit evaluator.
Outcome criterion_8() {
  Checker check;
  Rng rng(8);
  for (int program = 0; program < 1000; ++program) {
    const std::size_t width = 1 + rng() % 8;
    const std::size_t length = rng() % 65;
    qsim::BasisRegister reg(width);
    std::vector<int> bits(width, 0);
    for (std::size_t i = 0; i < width; ++i)
      if (rng() & 1U) {
        qsim::apply_x(reg, i);
        bits[i] = 1;
      }
    int sign = 1;
    for (std::size_t g = 0; g < length; ++g) {
      const std::size_t target = rng() % width;
      const unsigned kind = width == 1 ? rng() % 2 : rng() % 4;
      if (kind == 0) {
        qsim::apply_x(reg, target);
        bits[target] ^= 1;
      } else if (kind == 1) {
        qsim::apply_z(reg, target);
        if (bits[target]) sign = -sign;
      } else if (kind == 2) {
        std::size_t control = rng() % width;
        if (control == target) control = (control + 1) % width;
        qsim::apply_cnot({&reg, control}, {&reg, target});
        bits[target] ^= bits[control];
      } else {
        std::vector<qsim::Qubit> controls;
        int all = 1;
        for (std::size_t i = 0; i < width; ++i)
          if (i != target && (rng() & 1U)) {
            controls.push_back({&reg, i});
            all &= bits[i];
          }
        if (controls.empty()) {
          const std::size_t c = (target + 1) % width;
          controls.push_back({&reg, c});
          all = bits[c];
        }
        qsim::apply_mcx(controls, {&reg, target});
        bits[target] ^= all;
      }
    }
    bool same = true;
    for (std::size_t i = 0; i < width; ++i) same = same && reg.bit(i) == bits[i];
    check.expect(same, "program " + std::to_string(program) + " bits differ");
    check.expect(reg.phase() == 1 || reg.phase() == -1, "program " + std::to_string(program) + " phase out of range");
    check.expect(reg.phase() == sign, "program " + std::to_string(program) + " phase differs");
  }
  return check.outcome("1000 random programs");
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(QHE_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[256];
  while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) result.output += buffer;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(QHE_FIXTURE_DIR) + "/wire/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. End to end: CLI against a running service, golden fixtures, error statuses.
Outcome criterion_9() {
  Checker check;
  cloud::ServiceConfig config;
  config.max_payload_bytes = 64 * 1024;
  cloud::Server server(config);
  const int port = server.start_on_any_port();
  const std::string endpoint = "http://127.0.0.1:" + std::to_string(port);

  Rng rng(9);
  int sums = 0;
  for (const char* scheme : {"chen", "gsw", "qotp"}) {
    const bool gsw = std::string(scheme) == "gsw";
    for (int i = 0; i < 50; ++i) {
      const std::uint64_t a = gsw ? rng() % 8 : rng() & 0xFFFFFFFFULL;
      const std::uint64_t b = gsw ? rng() % 8 : rng() & 0xFFFFFFFFULL;
      const auto result = run_cli(std::string("add --scheme ") + scheme + " --a " + std::to_string(a) + " --b " +
                                  std::to_string(b) + " --seed " + std::to_string(rng() >> 1) + " --endpoint " + endpoint);
      const bool ok = result.exit_code == 0 && result.output == std::to_string(a + b) + "\n";
      check.expect(ok, std::string(scheme) + " " + std::to_string(a) + "+" + std::to_string(b) + " exit " +
                           std::to_string(result.exit_code) + " output " + result.output);
      sums += ok ? 1 : 0;
    }
  }

  httplib::Client client(endpoint);
  int fixtures = 0;
  for (const char* scheme : {"chen", "gsw", "qotp"}) {
    const auto req = read_fixture(std::string(scheme) + "_request.json");
    const auto expected = read_fixture(std::string(scheme) + "_response.json");
    auto res = client.Post("/process", req, "application/json");
    const bool ok = res && res->status == 200 && res->body == expected &&
                    wire::encode_request(wire::decode_request(req)) == req;
    check.expect(ok, std::string(scheme) + " golden fixture mismatch");
    fixtures += ok ? 1 : 0;
  }

  auto status_of = [&](const std::string& body) {
    auto res = client.Post("/process", body, "application/json");
    return res ? res->status : -1;
  };
  const int malformed = status_of("{\"scheme\":");
  const int unknown = status_of(R"({"payload":{},"scheme":"xyz"})");
  const int oversized = status_of(std::string(64 * 1024 + 1, ' '));
  const int short_segment = status_of(R"({"payload":{"a":[[0,0,0,0,0,0]],"b":[[0,0,0,0,0,0,0]]},"scheme":"chen"})");
  const int entry_q = status_of(R"({"payload":{"c1":[[5,0],[1,4]],"c2":[[4,0],[2,2]],"m":2,"n":2,"q":5},"scheme":"gsw"})");
  check.expect(malformed == 400, "malformed body gave " + std::to_string(malformed));
  check.expect(unknown == 400, "unknown scheme gave " + std::to_string(unknown));
  check.expect(oversized == 413, "oversized body gave " + std::to_string(oversized));
  check.expect(short_segment == 422, "short chen segment gave " + std::to_string(short_segment));
  check.expect(entry_q == 422, "gsw entry equal to q gave " + std::to_string(entry_q));
  server.stop();
  return check.outcome(std::to_string(sums) + "/150 CLI sums, " + std::to_string(fixtures) +
                       "/3 fixtures, statuses 400/400/413/422/422 -> " + std::to_string(malformed) + "/" +
                       std::to_string(unknown) + "/" + std::to_string(oversized) + "/" + std::to_string(short_segment) +
                       "/" + std::to_string(entry_q));
}

// 10. Evaluation trends.
Outcome criterion_10() {
  Checker check;
  const auto start = Clock::now();
  cloud::LoopbackService cloud;
  std::ostringstream summary;

  // (a) staircase
  bench::BenchOptions staircase;
  staircase.runs = 1;
  std::vector<unsigned> widths;
  for (unsigned w = 1; w <= 32; ++w) widths.push_back(w);
  const auto chen_records = bench::sweep_input_sizes(bench::Scheme::chen, widths, staircase, cloud);
  bool stairs = true;
  for (const auto& r : chen_records)
    if (r.phase == bench::Phase::total) stairs = stairs && r.ct_bytes == 7 * static_cast<std::int64_t>((r.param + 3) / 4);
  check.expect(stairs, "(a) chen ciphertext sizes are not 7*ceil(w/4)");
  summary << "(a) " << (stairs ? "ok" : "FAIL");

  const std::vector<unsigned> ks{4, 6, 8, 10};

  // (b) gsw growth
  bench::BenchOptions gsw_options;
  gsw_options.runs = 9;
  const auto gsw_records = bench::sweep_key_sizes(bench::Scheme::gsw, ks, gsw_options, cloud);
  const auto gsw_total = bench::median_wall_ns(gsw_records, bench::Scheme::gsw, bench::Phase::total);
  int inversions = 0;
  summary << "; (b) gsw total ms:";
  double previous = -1;
  for (const unsigned k : ks) {
    const double v = gsw_total.count(k) ? gsw_total.at(k) : -1;
    summary << ' ' << k << '=' << fixed(v / 1e6, 3);
    if (previous >= 0 && v < previous) ++inversions;
    previous = v;
  }
  check.expect(gsw_total.size() == ks.size(), "(b) missing gsw medians");
  check.expect(inversions <= 1, "(b) " + std::to_string(inversions) + " inversions");

  // (c) qotp flat
  bench::BenchOptions qotp_options;
  qotp_options.runs = 31;
  const auto qotp_records = bench::sweep_key_sizes(bench::Scheme::qotp, ks, qotp_options, cloud);
  const auto qotp_total = bench::median_wall_ns(qotp_records, bench::Scheme::qotp, bench::Phase::total);
  std::vector<double> medians;
  for (const auto& [k, v] : qotp_total) medians.push_back(v);
  std::vector<double> sorted = medians;
  std::sort(sorted.begin(), sorted.end());
  const double centre = sorted.empty() ? 0 : (sorted[(sorted.size() - 1) / 2] + sorted[sorted.size() / 2]) / 2;
  summary << "; (c) qotp total us:";
  for (const auto& [k, v] : qotp_total) {
    summary << ' ' << k << '=' << fixed(v / 1e3, 1);
    check.expect(v >= 0.5 * centre && v <= 1.5 * centre, "(c) qotp k=" + std::to_string(k) + " median " +
                                                              fixed(v / 1e3, 1) + " us vs centre " + fixed(centre / 1e3, 1));
  }
  check.expect(qotp_total.size() == ks.size(), "(c) missing qotp medians");

  // (d) gsw decrypt dominates at k = 10
  summary << "; (d) k=10 phase ms:";
  std::string largest;
  double largest_value = -1;
  for (const auto phase : {bench::Phase::keygen, bench::Phase::encrypt, bench::Phase::cloud, bench::Phase::decrypt}) {
    const auto medians_by_k = bench::median_wall_ns(gsw_records, bench::Scheme::gsw, phase);
    const double v = medians_by_k.count(10) ? medians_by_k.at(10) : -1;
    summary << ' ' << bench::to_string(phase) << '=' << fixed(v / 1e6, 3);
    if (v > largest_value) {
      largest_value = v;
      largest = std::string(bench::to_string(phase));
    }
  }
  check.expect(largest == "decrypt", "(d) largest gsw phase at k=10 is " + largest);

  const double elapsed = seconds_since(start);
  check.expect(elapsed < 300.0, "took " + fixed(elapsed) + " s");
  summary << "; " << fixed(elapsed) << " s";
  return check.outcome(summary.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},  {5, criterion_5},
      {6, criterion_6}, {7, criterion_7}, {8, criterion_8}, {9, criterion_9}, {10, criterion_10},
  };
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << outcome.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
