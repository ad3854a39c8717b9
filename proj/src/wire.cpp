#include "qhe/wire.hpp"

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qhe/error.hpp"

namespace qhe::wire {

using nlohmann::json;

namespace {

constexpr std::uint64_t kMaxWireInteger = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << zq::kMaxModulusBits;
// Bound on n*m so a hostile header cannot request a giant allocation.
constexpr std::uint64_t kMaxGswEntries = std::uint64_t{1} << 22;

std::string field(const std::string& parent, std::string_view name) {
  return parent.empty() ? std::string(name) : parent + "." + std::string(name);
}

std::string index(const std::string& parent, std::size_t i) { return parent + "[" + std::to_string(i) + "]"; }

json parse_document(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  return doc;
}

const json& require_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto name : allowed) known = known || key == name;
    if (!known) throw ValidationError(field(path, key), "unknown field");
  }
  for (const auto name : allowed) {
    if (!j.contains(name)) throw ValidationError(field(path, name), "missing field");
  }
  return j;
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  if (j.empty()) throw ValidationError(path, "must not be empty");
  return j;
}

std::uint64_t read_uint(const json& j, const std::string& path, std::uint64_t max) {
  if (!j.is_number_integer()) throw ValidationError(path, "expected an integer");
  std::uint64_t value = 0;
  if (j.is_number_unsigned()) {
    value = j.get<std::uint64_t>();
  } else {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw ValidationError(path, "must not be negative");
    value = static_cast<std::uint64_t>(v);
  }
  if (value > kMaxWireInteger || value > max) {
    throw ValidationError(path, "value " + std::to_string(value) + " exceeds " + std::to_string(max));
  }
  return value;
}

std::uint8_t read_bit(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path, "expected a bit");
  if (j != 0 && j != 1) throw ValidationError(path, "bit must be 0 or 1");
  return j == 1 ? 1 : 0;
}

int read_phase(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j != 1 && j != -1)) throw ValidationError(path, "phase must be 1 or -1");
  return j == 1 ? 1 : -1;
}

qotp::Bits read_bits(const json& j, const std::string& path) {
  require_array(j, path);
  qotp::Bits bits;
  bits.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) bits.push_back(read_bit(j[i], index(path, i)));
  return bits;
}

chen::ChenCiphertext read_chen(const json& j, const std::string& path) {
  require_array(j, path);
  chen::ChenCiphertext c;
  for (std::size_t s = 0; s < j.size(); ++s) {
    const std::string seg_path = index(path, s);
    const json& seg = j[s];
    if (!seg.is_array()) throw ValidationError(seg_path, "expected an array of bits");
    if (seg.size() != kChenCodewordBits) {
      throw ValidationError(seg_path, "segment must have 7 bits, got " + std::to_string(seg.size()));
    }
    std::vector<std::uint8_t> bits;
    for (std::size_t i = 0; i < seg.size(); ++i) bits.push_back(read_bit(seg[i], index(seg_path, i)));
    c.segments.emplace_back(std::move(bits));
  }
  return c;
}

zq::ZqMatrix read_zq(const json& j, const std::string& path, std::size_t rows, std::size_t cols, std::uint64_t q) {
  if (!j.is_array()) throw ValidationError(path, "expected an array of rows");
  if (j.size() != rows) {
    throw ValidationError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  std::vector<std::uint64_t> entries;
  entries.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = index(path, r);
    const json& row = j[r];
    if (!row.is_array()) throw ValidationError(row_path, "expected an array");
    if (row.size() != cols) {
      throw ValidationError(row_path, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string entry_path = index(row_path, c);
      const std::uint64_t v = read_uint(row[c], entry_path, kMaxWireInteger);
      if (v >= q) throw ValidationError(entry_path, "entry " + std::to_string(v) + " is not below q=" + std::to_string(q));
      entries.push_back(v);
    }
  }
  return zq::ZqMatrix(rows, cols, q, std::move(entries));
}

json chen_json(const chen::ChenCiphertext& c, const std::string& path) {
  if (c.segments.empty()) throw ValidationError(path, "must not be empty");
  json out = json::array();
  for (std::size_t s = 0; s < c.size(); ++s) {
    const auto& seg = c.segments[s];
    if (seg.size() != kChenCodewordBits) throw ValidationError(index(path, s), "segment must have 7 bits");
    json bits = json::array();
    for (const auto b : seg.bits()) bits.push_back(static_cast<int>(b));
    out.push_back(std::move(bits));
  }
  return out;
}

json zq_json(const zq::ZqMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (const auto v : m.row(r)) row.push_back(v);
    out.push_back(std::move(row));
  }
  return out;
}

json bits_json(const qotp::Bits& bits, const std::string& path) {
  if (bits.empty()) throw ValidationError(path, "must not be empty");
  json out = json::array();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw ValidationError(index(path, i), "bit must be 0 or 1");
    out.push_back(static_cast<int>(bits[i]));
  }
  return out;
}

int checked_phase(int phase, const std::string& path) {
  if (phase != 1 && phase != -1) throw ValidationError(path, "phase must be 1 or -1");
  return phase;
}

void check_gsw_pair(const zq::ZqMatrix& c1, const zq::ZqMatrix& c2) {
  if (c1.rows() == 0 || c1.cols() == 0) throw ValidationError("payload.c1", "must not be empty");
  if (c1.modulus() != c2.modulus() || c1.rows() != c2.rows() || c1.cols() != c2.cols()) {
    throw ValidationError("payload.c2", "shape or modulus differs from payload.c1");
  }
}

Scheme read_scheme(const json& doc) {
  const auto it = doc.find("scheme");
  if (it == doc.end()) throw SchemeError("missing scheme tag");
  if (!it->is_string()) throw SchemeError("scheme tag must be a string");
  return parse_scheme(it->get<std::string>());
}

std::string dump(const json& doc) { return doc.dump(); }

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::chen:
      return "chen";
    case Scheme::gsw:
      return "gsw";
    case Scheme::qotp:
      return "qotp";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "chen") return Scheme::chen;
  if (name == "gsw") return Scheme::gsw;
  if (name == "qotp") return Scheme::qotp;
  throw SchemeError("unknown scheme \"" + std::string(name) + "\"");
}

Scheme scheme_of(const ProcessRequest& request) {
  return static_cast<Scheme>(request.index());
}

Scheme scheme_of(const ProcessResponse& response) {
  return static_cast<Scheme>(response.index());
}

std::string encode_request(const ProcessRequest& request) {
  json payload;
  if (const auto* r = std::get_if<ChenRequest>(&request)) {
    payload["a"] = chen_json(r->a, "payload.a");
    payload["b"] = chen_json(r->b, "payload.b");
    if (r->a.size() != r->b.size()) throw ValidationError("payload.b", "segment count differs from payload.a");
  } else if (const auto* r = std::get_if<GswRequest>(&request)) {
    check_gsw_pair(r->c1, r->c2);
    payload["q"] = r->c1.modulus();
    payload["n"] = r->c1.rows();
    payload["m"] = r->c1.cols();
    payload["c1"] = zq_json(r->c1);
    payload["c2"] = zq_json(r->c2);
  } else {
    const auto& pair = std::get<QotpRequest>(request).pair;
    payload["x"] = bits_json(pair.x_bits, "payload.x");
    payload["y"] = bits_json(pair.y_bits, "payload.y");
    if (pair.x_bits.size() != pair.y_bits.size()) throw ValidationError("payload.y", "width differs from payload.x");
    payload["x_phase"] = checked_phase(pair.x_phase, "payload.x_phase");
    payload["y_phase"] = checked_phase(pair.y_phase, "payload.y_phase");
  }
  return dump(json{{"scheme", std::string(to_string(scheme_of(request)))}, {"payload", std::move(payload)}});
}

ProcessRequest decode_request(std::string_view document) {
  const json doc = parse_document(document);
  const Scheme scheme = read_scheme(doc);
  require_object(doc, "", {"payload", "scheme"});
  const json& payload = doc["payload"];

  switch (scheme) {
    case Scheme::chen: {
      require_object(payload, "payload", {"a", "b"});
      ChenRequest r{read_chen(payload["a"], "payload.a"), read_chen(payload["b"], "payload.b")};
      if (r.a.size() != r.b.size()) {
        throw ValidationError("payload.b", "has " + std::to_string(r.b.size()) + " segments, payload.a has " +
                                               std::to_string(r.a.size()));
      }
      return r;
    }
    case Scheme::gsw: {
      require_object(payload, "payload", {"c1", "c2", "m", "n", "q"});
      const std::uint64_t q = read_uint(payload["q"], "payload.q", kMaxModulus);
      if (q < 2) throw ValidationError("payload.q", "modulus must be at least 2");
      const std::uint64_t n = read_uint(payload["n"], "payload.n", kMaxGswEntries);
      const std::uint64_t m = read_uint(payload["m"], "payload.m", kMaxGswEntries);
      if (n == 0) throw ValidationError("payload.n", "must be positive");
      if (m == 0) throw ValidationError("payload.m", "must be positive");
      if (n * m > kMaxGswEntries) throw ValidationError("payload.m", "ciphertext too large");
      return GswRequest{read_zq(payload["c1"], "payload.c1", n, m, q), read_zq(payload["c2"], "payload.c2", n, m, q)};
    }
    case Scheme::qotp: {
      require_object(payload, "payload", {"x", "x_phase", "y", "y_phase"});
      QotpRequest r;
      r.pair.x_bits = read_bits(payload["x"], "payload.x");
      r.pair.y_bits = read_bits(payload["y"], "payload.y");
      if (r.pair.x_bits.size() != r.pair.y_bits.size()) {
        throw ValidationError("payload.y", "width differs from payload.x");
      }
      r.pair.x_phase = read_phase(payload["x_phase"], "payload.x_phase");
      r.pair.y_phase = read_phase(payload["y_phase"], "payload.y_phase");
      return r;
    }
  }
  throw SchemeError("unknown scheme");
}

std::string encode_response(const ProcessResponse& response) {
  json result;
  if (const auto* r = std::get_if<ChenResult>(&response)) {
    result["segments"] = chen_json(r->sum, "result.segments");
  } else if (const auto* r = std::get_if<GswResult>(&response)) {
    if (r->c.rows() == 0 || r->c.cols() == 0) throw ValidationError("result.c", "must not be empty");
    result["c"] = zq_json(r->c);
  } else {
    const auto& res = std::get<QotpResult>(response).result;
    result["bits"] = bits_json(res.bits, "result.bits");
    result["phase"] = checked_phase(res.phase, "result.phase");
  }
  return dump(json{{"scheme", std::string(to_string(scheme_of(response)))}, {"result", std::move(result)}});
}

ProcessResponse decode_response(std::string_view document, const ProcessRequest& request) {
  const json doc = parse_document(document);
  const Scheme scheme = read_scheme(doc);
  require_object(doc, "", {"result", "scheme"});
  if (scheme != scheme_of(request)) {
    throw ValidationError("scheme", "response scheme \"" + std::string(to_string(scheme)) +
                                        "\" does not answer a \"" + std::string(to_string(scheme_of(request))) +
                                        "\" request");
  }
  const json& result = doc["result"];

  switch (scheme) {
    case Scheme::chen: {
      require_object(result, "result", {"segments"});
      ChenResult r{read_chen(result["segments"], "result.segments")};
      const std::size_t expected = std::get<ChenRequest>(request).a.size();
      if (r.sum.size() != expected) {
        throw ValidationError("result.segments", "expected " + std::to_string(expected) + " segments");
      }
      return r;
    }
    case Scheme::gsw: {
      require_object(result, "result", {"c"});
      const auto& c1 = std::get<GswRequest>(request).c1;
      return GswResult{read_zq(result["c"], "result.c", c1.rows(), c1.cols(), c1.modulus())};
    }
    case Scheme::qotp: {
      require_object(result, "result", {"bits", "phase"});
      QotpResult r;
      r.result.bits = read_bits(result["bits"], "result.bits");
      const std::size_t expected = std::get<QotpRequest>(request).pair.x_bits.size();
      if (r.result.bits.size() != expected) {
        throw ValidationError("result.bits", "expected " + std::to_string(expected) + " bits");
      }
      r.result.phase = read_phase(result["phase"], "result.phase");
      return r;
    }
  }
  throw SchemeError("unknown scheme");
}

}  // namespace qhe::wire
