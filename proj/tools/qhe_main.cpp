// qhe: client, service and benchmark front end.
//
//   qhe add   --scheme {chen|gsw|qotp} --a N --b N [--endpoint URL] [--seed S]
//   qhe serve [--port P]
//   qhe bench --sweep {input|key} --scheme {chen|gsw|qotp|all} [--runs R] --out FILE
//
// Exit codes: 0 ok, 1 startup/I/O failure, 2 bad arguments, 3 transport
// failure, 4 validation or decryption failure.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alloc_probe.hpp"
#include "qhe/bench.hpp"
#include "qhe/chen.hpp"
#include "qhe/cloudsvc.hpp"
#include "qhe/error.hpp"
#include "qhe/gsw.hpp"
#include "qhe/qotp.hpp"
#include "qhe/rng.hpp"

namespace {

enum ExitCode : int { kOk = 0, kStartup = 1, kUsage = 2, kTransport = 3, kInvalid = 4 };

constexpr const char* kEndpointEnvVar = "QHE_ENDPOINT";

std::string default_endpoint() {
  if (const char* env = std::getenv(kEndpointEnvVar); env != nullptr && *env != '\0') return env;
  return "http://127.0.0.1:8080";
}

struct AddArgs {
  std::string scheme;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::string endpoint = default_endpoint();
  std::optional<std::uint64_t> seed;
  unsigned gsw_k = 8;
  double gsw_p = qhe::gsw::kDefaultNoiseDensity;
  std::uint64_t gsw_bound = qhe::gsw::kDefaultMessageBound;
  bool local = false;
};

struct ServeArgs {
  qhe::cloud::ServiceConfig config = qhe::cloud::ServiceConfig::from_env();
};

struct BenchArgs {
  std::string sweep;
  std::string scheme = "all";
  std::size_t runs = 5;
  std::string out;
  std::optional<std::string> endpoint;
  std::vector<unsigned> widths;
  std::vector<unsigned> ks;
  std::uint64_t seed = 1;
  double gsw_p = qhe::gsw::kDefaultNoiseDensity;
};

std::unique_ptr<qhe::AdditionService> make_service(const std::optional<std::string>& endpoint) {
  if (!endpoint) return std::make_unique<qhe::cloud::LoopbackService>();
  return std::make_unique<qhe::cloud::HttpService>(*endpoint);
}

int run_add(const AddArgs& args) {
  qhe::Rng rng(args.seed ? *args.seed : std::random_device{}());
  const auto service = make_service(args.local ? std::nullopt : std::optional<std::string>(args.endpoint));
  std::uint64_t sum = 0;
  switch (qhe::wire::parse_scheme(args.scheme)) {
    case qhe::wire::Scheme::chen:
      sum = qhe::chen::he_add(args.a, args.b, qhe::chen::keygen(4, rng), *service);
      break;
    case qhe::wire::Scheme::gsw: {
      // Range guard before any key or ciphertext work.
      if (args.a >= args.gsw_bound || args.b >= args.gsw_bound || args.a + args.b >= args.gsw_bound) {
        throw qhe::PreconditionError("sum of " + std::to_string(args.a) + " and " + std::to_string(args.b) +
                                     " is not below the GSW message bound " + std::to_string(args.gsw_bound));
      }
      const auto keys = qhe::gsw::keygen(args.gsw_k, args.gsw_p, args.gsw_bound, rng);
      sum = qhe::gsw::he_add(args.a, args.b, keys, *service, rng);
      break;
    }
    case qhe::wire::Scheme::qotp:
      sum = qhe::qotp::he_add(args.a, args.b, *service, rng);
      break;
  }
  std::cout << sum << '\n';
  return kOk;
}

int run_serve(const ServeArgs& args) {
  args.config.validate();
  qhe::cloud::serve(args.config);
  return kOk;
}

std::vector<unsigned> range(unsigned lo, unsigned hi) {
  std::vector<unsigned> out;
  for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

int run_bench(const BenchArgs& args) {
  const auto sweep = qhe::bench::parse_sweep(args.sweep);
  std::vector<qhe::wire::Scheme> schemes;
  if (args.scheme == "all") {
    schemes = {qhe::wire::Scheme::chen, qhe::wire::Scheme::gsw, qhe::wire::Scheme::qotp};
  } else {
    schemes = {qhe::wire::parse_scheme(args.scheme)};
  }

  qhe::tools::HeapProbe probe;
  qhe::bench::BenchOptions options;
  options.runs = args.runs;
  options.seed = args.seed;
  options.gsw_noise_density = args.gsw_p;
  options.probe = &probe;

  const auto service = make_service(args.endpoint);
  std::vector<qhe::bench::BenchRecord> records;
  for (const auto scheme : schemes) {
    std::vector<qhe::bench::BenchRecord> part;
    if (sweep == qhe::bench::Sweep::input) {
      auto widths = args.widths;
      if (widths.empty()) widths = scheme == qhe::wire::Scheme::gsw ? range(1, 10) : range(1, 32);
      part = qhe::bench::sweep_input_sizes(scheme, widths, options, *service);
    } else {
      auto ks = args.ks.empty() ? range(qhe::bench::kGswMinBenchK, 10) : args.ks;
      part = qhe::bench::sweep_key_sizes(scheme, ks, options, *service);
    }
    records.insert(records.end(), part.begin(), part.end());
  }
  qhe::bench::write_csv(records, args.out);
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.failed && r.phase == qhe::bench::Phase::total ? 1 : 0;
  std::cerr << "wrote " << records.size() << " rows to " << args.out;
  if (failed != 0) std::cerr << " (" << failed << " failed runs)";
  std::cerr << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homomorphic addition client, cloud service and benchmark harness"};
  app.require_subcommand(1);

  AddArgs add_args;
  auto* add = app.add_subcommand("add", "Add two integers through the cloud service");
  add->add_option("--scheme", add_args.scheme, "Cryptosystem")->required()->check(CLI::IsMember({"chen", "gsw", "qotp"}));
  add->add_option("--a", add_args.a, "First summand")->required();
  add->add_option("--b", add_args.b, "Second summand")->required();
  add->add_option("--endpoint", add_args.endpoint, "Service base URL (env QHE_ENDPOINT)");
  add->add_option("--seed", add_args.seed, "Seed for key generation and encryption");
  add->add_option("--gsw-k", add_args.gsw_k, "GSW security parameter (bits of q)")->check(CLI::Range(3, 16));
  add->add_option("--gsw-p", add_args.gsw_p, "GSW noise density")->check(CLI::Range(0.0, 1.0));
  add->add_option("--gsw-bound", add_args.gsw_bound, "GSW exclusive message bound")->check(CLI::PositiveNumber);
  add->add_flag("--local", add_args.local, "Combine in-process instead of calling the service");

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "Run the /process addition service");
  serve->add_option("--port", serve_args.config.port, "Listen port (env QHE_PORT)");
  serve->add_option("--host", serve_args.config.host, "Listen address");
  serve->add_option("--max-payload", serve_args.config.max_payload_bytes, "Maximum request body in bytes");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run input-size or key-size sweeps and write CSV");
  bench->add_option("--sweep", bench_args.sweep, "Sweep kind")->required()->check(CLI::IsMember({"input", "key"}));
  bench->add_option("--scheme", bench_args.scheme, "Cryptosystem or all")
      ->check(CLI::IsMember({"chen", "gsw", "qotp", "all"}));
  bench->add_option("--runs", bench_args.runs, "Runs per parameter")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_args.out, "CSV output path")->required();
  bench->add_option("--endpoint", bench_args.endpoint, "Service base URL; in-process when omitted");
  bench->add_option("--widths", bench_args.widths, "Input bit widths (default 1..32, GSW 1..10)");
  bench->add_option("--ks", bench_args.ks, "Key sizes (default 3..10)");
  bench->add_option("--seed", bench_args.seed, "Seed for summands and keys");
  bench->add_option("--gsw-p", bench_args.gsw_p, "GSW noise density")->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (add->parsed()) return run_add(add_args);
    if (serve->parsed()) return run_serve(serve_args);
    return run_bench(bench_args);
  } catch (const qhe::ParameterError& e) {
    // A bad serve configuration is reported as a startup failure.
    std::cerr << "error: " << e.what() << '\n';
    return serve->parsed() ? kStartup : kUsage;
  } catch (const qhe::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStartup;
  } catch (const qhe::ProtocolError& e) {
    std::cerr << "transport error: " << e.what() << '\n';
    return kTransport;
  } catch (const qhe::Error& e) {
    // Validation, precondition, shape and decoding failures. Startup errors
    // from serve also land here.
    std::cerr << "error: " << e.what() << '\n';
    return serve->parsed() ? kStartup : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStartup;
  }
}
