#include "lexcon/backend.hpp"

#include "lexcon/error.hpp"

namespace lexcon {

void DecodingParams::validate() const {
  if (!(temperature > 0.0 && temperature <= 1.0)) {
    throw ConfigError("temperature must be in (0, 1]");
  }
  if (top_k && *top_k <= 0) {
    throw ConfigError("top_k must be positive when set");
  }
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw ConfigError("top_p must be in (0, 1]");
  }
  if (max_tokens <= 0) {
    throw ConfigError("max_tokens must be positive");
  }
}

const char* to_string(Message::Role role) {
  switch (role) {
    case Message::Role::system: return "system";
    case Message::Role::user: return "user";
    case Message::Role::assistant: return "assistant";
  }
  return "user";
}

Message::Role role_from_string(const std::string& s) {
  if (s == "system") return Message::Role::system;
  if (s == "user") return Message::Role::user;
  if (s == "assistant") return Message::Role::assistant;
  throw ConfigError("unknown message role: " + s);
}

GenerationRequest GenerationRequest::single_user(std::string prompt,
                                                 DecodingParams params,
                                                 std::string model_id) {
  GenerationRequest req;
  req.messages.push_back({Message::Role::user, std::move(prompt)});
  req.params = params;
  req.model_id = std::move(model_id);
  return req;
}

void GenerationRequest::validate() const {
  if (messages.empty()) {
    throw ConfigError("request must carry at least one message");
  }
  if (messages.back().role != Message::Role::user) {
    throw ConfigError("last message must have role user");
  }
  params.validate();
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> responses) {
  for (std::string& r : responses) queue_.push_back(std::move(r));
}

void ScriptedBackend::push(std::string response) {
  std::lock_guard lock(mu_);
  queue_.push_back(std::move(response));
}

GenerationResult ScriptedBackend::generate(const GenerationRequest& req) {
  req.validate();
  std::lock_guard lock(mu_);
  if (queue_.empty()) {
    throw BackendError(BackendError::Kind::exhausted,
                       "scripted backend: response queue exhausted after " +
                           std::to_string(calls_.size()) + " calls");
  }
  calls_.push_back(req);
  GenerationResult res;
  res.text = std::move(queue_.front());
  queue_.pop_front();
  res.backend_id = id();
  return res;
}

size_t ScriptedBackend::calls_made() const {
  std::lock_guard lock(mu_);
  return calls_.size();
}

size_t ScriptedBackend::remaining() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

std::vector<GenerationRequest> ScriptedBackend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

}  // namespace lexcon
