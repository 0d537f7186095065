#pragma once

#include <stdexcept>
#include <string>

namespace lexcon {

/// Invalid configuration: bad schema, missing file, out-of-range parameter.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A generation backend failed. `kind` separates the failure classes so
/// callers can decide what is retryable; `payload` keeps the raw upstream
/// body (or queue state) for diagnosis.
class BackendError : public std::runtime_error {
 public:
  enum class Kind {
    transport,           // connection refused, timeout, DNS, ...
    auth,                // credentials rejected by the server
    rate_limit,          // retry budget exhausted on 429s
    malformed_response,  // upstream replied but not in the expected shape
    exhausted,           // scripted queue ran out of responses
  };

  BackendError(Kind kind, const std::string& what, std::string payload = {})
      : std::runtime_error(what), kind(kind), payload(std::move(payload)) {}

  Kind kind;
  std::string payload;
};

inline const char* to_string(BackendError::Kind k) {
  switch (k) {
    case BackendError::Kind::transport: return "transport";
    case BackendError::Kind::auth: return "auth";
    case BackendError::Kind::rate_limit: return "rate_limit";
    case BackendError::Kind::malformed_response: return "malformed_response";
    case BackendError::Kind::exhausted: return "exhausted";
  }
  return "unknown";
}

/// Structured text could not be parsed out of a model response (e.g. judge
/// scores). The raw text is retained for inspection.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string raw)
      : std::runtime_error(what), raw(std::move(raw)) {}

  std::string raw;
};

}  // namespace lexcon
