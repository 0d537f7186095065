#pragma once

#include "lexcon/backend.hpp"

#include <string>

namespace lexcon {

struct HttpBackendConfig {
  // Base URL including any path prefix, e.g. "http://localhost:8000/v1".
  // The request goes to <base_url>/chat/completions.
  std::string base_url = "http://localhost:8000/v1";

  // Bearer token. Empty means read from the environment variable below.
  std::string api_key;
  std::string api_key_env = "LEXCON_API_KEY";

  std::string default_model = "gpt-3.5-turbo";

  // Retry budget for transient failures (transport errors, 429, 5xx).
  int max_retries = 3;
  double backoff_base_ms = 250.0;
  double backoff_max_ms = 8000.0;
  double timeout_s = 120.0;

  // Concurrent in-flight request cap shared by all worker threads.
  int max_in_flight = 4;

  // GPT-style endpoints reject a top_k field; leave off unless the server
  // is known to accept it.
  bool send_top_k = false;
};

/// OpenAI-compatible chat-completions client (POST /chat/completions).
/// Transient failures are retried with exponential backoff up to the
/// configured budget; auth failures, rate-limit exhaustion, and malformed
/// upstream responses surface as distinct BackendError kinds with the raw
/// payload attached.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  GenerationResult generate(const GenerationRequest& req) override;
  std::string id() const override;
  bool supports_top_k() const override { return config_.send_top_k; }

  const HttpBackendConfig& config() const { return config_; }

 private:
  struct Limiter;

  HttpBackendConfig config_;
  std::string host_;         // scheme://authority
  std::string path_prefix_;  // leading path from base_url, no trailing slash
  std::shared_ptr<Limiter> limiter_;
};

}  // namespace lexcon
