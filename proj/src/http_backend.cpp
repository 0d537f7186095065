#include "lexcon/http_backend.hpp"

#include "lexcon/error.hpp"
#include "lexcon/json_io.hpp"

#include <httplib.h>

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace lexcon {

// Counting semaphore over a mutex; caps concurrent upstream requests.
struct HttpBackend::Limiter {
  explicit Limiter(int slots) : available(slots) {}

  void acquire() {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return available > 0; });
    --available;
  }
  void release() {
    {
      std::lock_guard lock(mu);
      ++available;
    }
    cv.notify_one();
  }

  std::mutex mu;
  std::condition_variable cv;
  int available;
};

namespace {

struct SlotGuard {
  explicit SlotGuard(HttpBackend::Limiter& l) : limiter(l) { limiter.acquire(); }
  ~SlotGuard() { limiter.release(); }
  HttpBackend::Limiter& limiter;
};

nlohmann::json build_body(const GenerationRequest& req, const HttpBackendConfig& cfg) {
  nlohmann::json body{
      {"model", req.model_id.empty() ? cfg.default_model : req.model_id},
      {"messages", req.messages},
      {"temperature", req.params.temperature},
      {"top_p", req.params.top_p},
      {"max_tokens", req.params.max_tokens},
  };
  if (req.params.top_k && cfg.send_top_k) body["top_k"] = *req.params.top_k;
  if (req.params.seed) body["seed"] = *req.params.seed;
  return body;
}

GenerationResult parse_completion(const std::string& body, const std::string& id) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(BackendError::Kind::malformed_response,
                       std::string("response is not JSON: ") + e.what(), body);
  }
  try {
    GenerationResult res;
    res.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    res.backend_id = id;
    if (j.contains("usage")) {
      const auto& usage = j["usage"];
      if (usage.contains("prompt_tokens")) {
        res.prompt_tokens = usage["prompt_tokens"].get<int>();
      }
      if (usage.contains("completion_tokens")) {
        res.completion_tokens = usage["completion_tokens"].get<int>();
      }
    }
    return res;
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(BackendError::Kind::malformed_response,
                       std::string("unexpected completion shape: ") + e.what(),
                       body);
  }
}

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)),
      limiter_(std::make_shared<Limiter>(std::max(1, config_.max_in_flight))) {
  if (config_.api_key.empty() && !config_.api_key_env.empty()) {
    if (const char* env = std::getenv(config_.api_key_env.c_str())) {
      config_.api_key = env;
    }
  }
  // Split "scheme://host:port/prefix" into client target and path prefix.
  std::string url = config_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  size_t scheme_end = url.find("://");
  size_t path_start =
      url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) {
    host_ = url;
  } else {
    host_ = url.substr(0, path_start);
    path_prefix_ = url.substr(path_start);
  }
  if (host_.empty()) {
    throw ConfigError("http backend: base_url has no host: " + config_.base_url);
  }
}

std::string HttpBackend::id() const {
  return "http:" + (config_.default_model.empty() ? host_ : config_.default_model);
}

GenerationResult HttpBackend::generate(const GenerationRequest& req) {
  req.validate();
  SlotGuard slot(*limiter_);

  const std::string path = path_prefix_ + "/chat/completions";
  const std::string body = build_body(req, config_).dump();

  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  std::string last_failure = "no attempt made";
  std::string last_payload;
  bool rate_limited = false;

  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      double ms = std::min(config_.backoff_max_ms,
                           config_.backoff_base_ms * static_cast<double>(1u << (attempt - 1)));
      std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(ms));
    }

    // One client per call: connections are not shared across worker threads.
    httplib::Client client(host_);
    client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(config_.timeout_s));

    const auto start = std::chrono::steady_clock::now();
    httplib::Result result = client.Post(path, headers, body, "application/json");
    const double latency_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();

    if (!result) {
      last_failure = "transport error: " + httplib::to_string(result.error());
      continue;
    }

    const int status = result->status;
    if (status == 401 || status == 403) {
      throw BackendError(BackendError::Kind::auth,
                         "authentication rejected (HTTP " + std::to_string(status) +
                             ")",
                         result->body);
    }
    if (status == 429) {
      rate_limited = true;
      last_failure = "rate limited (HTTP 429)";
      last_payload = result->body;
      continue;
    }
    if (status >= 500) {
      rate_limited = false;
      last_failure = "server error (HTTP " + std::to_string(status) + ")";
      last_payload = result->body;
      continue;
    }
    if (status < 200 || status >= 300) {
      throw BackendError(BackendError::Kind::transport,
                         "unexpected HTTP status " + std::to_string(status),
                         result->body);
    }

    GenerationResult res = parse_completion(result->body, id());
    res.latency_ms = latency_ms;
    return res;
  }

  if (rate_limited) {
    throw BackendError(BackendError::Kind::rate_limit,
                       "rate limit persisted after " +
                           std::to_string(config_.max_retries + 1) + " attempts",
                       last_payload);
  }
  throw BackendError(BackendError::Kind::transport,
                     last_failure + " after " +
                         std::to_string(config_.max_retries + 1) + " attempts",
                     last_payload);
}

}  // namespace lexcon
