#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace lexcon {

/// Sampling parameters carried on every generation request. Unset optionals
/// are omitted from wire requests.
struct DecodingParams {
  double temperature = 0.7;       // in (0, 1]
  std::optional<int> top_k;       // positive, or unset
  double top_p = 1.0;             // in (0, 1]
  int max_tokens = 512;
  std::optional<uint64_t> seed;

  /// Greedy approximation: the chat-completions wire format has no true
  /// greedy switch, so this pins the grid minimum temperature with top_k=1.
  static DecodingParams greedy() {
    DecodingParams p;
    p.temperature = 0.05;
    p.top_k = 1;
    p.top_p = 1.0;
    return p;
  }

  /// Throws ConfigError if any field is outside its stated range.
  void validate() const;

  bool operator==(const DecodingParams&) const = default;
};

struct Message {
  enum class Role { system, user, assistant };
  Role role = Role::user;
  std::string content;

  bool operator==(const Message&) const = default;
};

const char* to_string(Message::Role role);
Message::Role role_from_string(const std::string& s);

struct GenerationRequest {
  std::vector<Message> messages;  // >= 1; last must be role user
  DecodingParams params;
  std::string model_id;

  // Structured copy of the constraint keywords in prompt order. The HTTP
  // backend ignores it; the synthetic backend consumes it instead of parsing
  // the rendered prompt back apart.
  std::vector<std::string> constraint_keywords;

  static GenerationRequest single_user(std::string prompt, DecodingParams params = {},
                                       std::string model_id = {});

  /// Throws ConfigError if the message list is empty or does not end with a
  /// user message, or params are out of range.
  void validate() const;
};

struct GenerationResult {
  std::string text;  // assistant content verbatim, no post-processing
  double latency_ms = 0.0;
  std::optional<int> prompt_tokens;
  std::optional<int> completion_tokens;
  std::string backend_id;
  bool cached = false;
};

/// Uniform generation interface. Implementations must tolerate concurrent
/// generate() calls from multiple worker threads.
class Backend {
 public:
  virtual ~Backend() = default;

  /// Exactly one result per call. Transient transport failures are retried
  /// internally (HTTP backend); errors surface as BackendError.
  virtual GenerationResult generate(const GenerationRequest& req) = 0;

  virtual std::string id() const = 0;

  /// False for endpoints that reject a top_k field (GPT-style APIs).
  virtual bool supports_top_k() const { return true; }
};

using BackendPtr = std::shared_ptr<Backend>;

/// Deterministic replayer for tests: the i-th call returns the i-th queued
/// response. Also records every request it served, in order.
class ScriptedBackend : public Backend {
 public:
  ScriptedBackend() = default;
  explicit ScriptedBackend(std::vector<std::string> responses);

  void push(std::string response);

  /// Throws BackendError{exhausted} once the queue runs dry.
  GenerationResult generate(const GenerationRequest& req) override;

  std::string id() const override { return "scripted"; }

  size_t calls_made() const;
  size_t remaining() const;
  /// Snapshot of the requests served so far (prompt assertions in tests).
  std::vector<GenerationRequest> calls() const;

 private:
  mutable std::mutex mu_;
  std::deque<std::string> queue_;
  std::vector<GenerationRequest> calls_;
};

}  // namespace lexcon
