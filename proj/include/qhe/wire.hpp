#pragma once

// Canonical JSON documents exchanged with the /process endpoint.
//
// Documents are compact (no insignificant whitespace) with keys in sorted
// order, integers only. Request:
//   chen: {"payload":{"a":[[7 bits],...],"b":[[7 bits],...]},"scheme":"chen"}
//   gsw:  {"payload":{"c1":[[...m]...n],"c2":...,"m":M,"n":N,"q":Q},"scheme":"gsw"}
//   qotp: {"payload":{"x":[bits],"x_phase":1,"y":[bits],"y_phase":-1},"scheme":"qotp"}
// Response:
//   chen: {"result":{"segments":[[7 bits],...]},"scheme":"chen"}
//   gsw:  {"result":{"c":[[...]]},"scheme":"gsw"}
//   qotp: {"result":{"bits":[...],"phase":1},"scheme":"qotp"}
// Chen segment 0 and QOTP bit 0 are least significant.
//
// Decoding is strict: unknown fields are rejected and every ValidationError
// names the offending field path (e.g. "payload.a[0]").

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "qhe/chen.hpp"
#include "qhe/gsw.hpp"
#include "qhe/modlinalg.hpp"
#include "qhe/qotp.hpp"

namespace qhe::wire {

enum class Scheme { chen, gsw, qotp };

inline constexpr std::size_t kChenCodewordBits = 7;

std::string_view to_string(Scheme scheme);
// Throws SchemeError for anything but "chen", "gsw", "qotp".
Scheme parse_scheme(std::string_view name);

struct ChenRequest {
  chen::ChenCiphertext a;
  chen::ChenCiphertext b;
  friend bool operator==(const ChenRequest&, const ChenRequest&) = default;
};

struct GswRequest {
  zq::ZqMatrix c1;
  zq::ZqMatrix c2;
  friend bool operator==(const GswRequest&, const GswRequest&) = default;
};

struct QotpRequest {
  qotp::QotpCipherPair pair;
  friend bool operator==(const QotpRequest&, const QotpRequest&) = default;
};

using ProcessRequest = std::variant<ChenRequest, GswRequest, QotpRequest>;

struct ChenResult {
  chen::ChenCiphertext sum;
  friend bool operator==(const ChenResult&, const ChenResult&) = default;
};

struct GswResult {
  zq::ZqMatrix c;
  friend bool operator==(const GswResult&, const GswResult&) = default;
};

struct QotpResult {
  qotp::QotpResult result;
  friend bool operator==(const QotpResult&, const QotpResult&) = default;
};

using ProcessResponse = std::variant<ChenResult, GswResult, QotpResult>;

Scheme scheme_of(const ProcessRequest& request);
Scheme scheme_of(const ProcessResponse& response);

std::string encode_request(const ProcessRequest& request);
ProcessRequest decode_request(std::string_view document);

std::string encode_response(const ProcessResponse& response);
// Validates the response against the request it answers: same scheme, same
// Chen segment count, same GSW shape and modulus, same QOTP width.
ProcessResponse decode_response(std::string_view document, const ProcessRequest& request);

}  // namespace qhe::wire
