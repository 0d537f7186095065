#pragma once

// nlohmann ADL serializers for the wire-facing types. Object keys come out
// sorted (nlohmann default), which keeps cache fingerprints and JSONL rows
// byte-stable across runs.

#include "lexcon/backend.hpp"
#include "lexcon/metrics.hpp"
#include "lexcon/strategies.hpp"
#include "lexcon/text.hpp"

#include <json.hpp>

namespace lexcon {

inline void to_json(nlohmann::json& j, const DecodingParams& p) {
  j = nlohmann::json{{"temperature", p.temperature},
                     {"top_p", p.top_p},
                     {"max_tokens", p.max_tokens}};
  if (p.top_k) j["top_k"] = *p.top_k;
  if (p.seed) j["seed"] = *p.seed;
}

inline void from_json(const nlohmann::json& j, DecodingParams& p) {
  p = DecodingParams{};
  if (j.contains("temperature")) j.at("temperature").get_to(p.temperature);
  if (j.contains("top_p")) j.at("top_p").get_to(p.top_p);
  if (j.contains("max_tokens")) j.at("max_tokens").get_to(p.max_tokens);
  if (j.contains("top_k")) p.top_k = j.at("top_k").get<int>();
  if (j.contains("seed")) p.seed = j.at("seed").get<uint64_t>();
}

inline void to_json(nlohmann::json& j, const Message& m) {
  j = nlohmann::json{{"role", to_string(m.role)}, {"content", m.content}};
}

inline void from_json(const nlohmann::json& j, Message& m) {
  m.role = role_from_string(j.at("role").get<std::string>());
  j.at("content").get_to(m.content);
}

inline void to_json(nlohmann::json& j, const GenerationResult& r) {
  j = nlohmann::json{{"text", r.text},
                     {"latency_ms", r.latency_ms},
                     {"backend_id", r.backend_id},
                     {"cached", r.cached}};
  if (r.prompt_tokens) j["prompt_tokens"] = *r.prompt_tokens;
  if (r.completion_tokens) j["completion_tokens"] = *r.completion_tokens;
}

inline void from_json(const nlohmann::json& j, GenerationResult& r) {
  r = GenerationResult{};
  j.at("text").get_to(r.text);
  j.at("latency_ms").get_to(r.latency_ms);
  j.at("backend_id").get_to(r.backend_id);
  if (j.contains("cached")) j.at("cached").get_to(r.cached);
  if (j.contains("prompt_tokens")) r.prompt_tokens = j.at("prompt_tokens").get<int>();
  if (j.contains("completion_tokens")) {
    r.completion_tokens = j.at("completion_tokens").get<int>();
  }
}

inline void to_json(nlohmann::json& j, const MatchPolicy& p) {
  j = nlohmann::json{{"case_fold", p.case_fold},
                     {"unicode_normalize", p.unicode_normalize},
                     {"morphological", p.morphological}};
}

inline void from_json(const nlohmann::json& j, MatchPolicy& p) {
  p = MatchPolicy{};
  if (j.contains("case_fold")) j.at("case_fold").get_to(p.case_fold);
  if (j.contains("unicode_normalize")) {
    j.at("unicode_normalize").get_to(p.unicode_normalize);
  }
  if (j.contains("morphological")) j.at("morphological").get_to(p.morphological);
}

inline void to_json(nlohmann::json& j, const KeywordOutcome& k) {
  j = nlohmann::json{
      {"keyword", k.keyword}, {"satisfied", k.satisfied}, {"position", k.position}};
}

inline void from_json(const nlohmann::json& j, KeywordOutcome& k) {
  j.at("keyword").get_to(k.keyword);
  j.at("satisfied").get_to(k.satisfied);
  j.at("position").get_to(k.position);
}

inline void to_json(nlohmann::json& j, const TrialMetrics& m) {
  j = nlohmann::json{{"instance_success", m.instance_success},
                     {"satisfied_count", m.satisfied_count},
                     {"total", m.total},
                     {"keyword_coverage", m.keyword_coverage},
                     {"per_keyword", m.per_keyword}};
}

inline void from_json(const nlohmann::json& j, TrialMetrics& m) {
  j.at("instance_success").get_to(m.instance_success);
  j.at("satisfied_count").get_to(m.satisfied_count);
  j.at("total").get_to(m.total);
  j.at("keyword_coverage").get_to(m.keyword_coverage);
  j.at("per_keyword").get_to(m.per_keyword);
}

inline void to_json(nlohmann::json& j, const IterationTrace& t) {
  j = nlohmann::json{{"iteration", t.iteration},
                     {"prompt", t.prompt},
                     {"response", t.response},
                     {"newly_satisfied", t.newly_satisfied}};
}

inline void from_json(const nlohmann::json& j, IterationTrace& t) {
  j.at("iteration").get_to(t.iteration);
  j.at("prompt").get_to(t.prompt);
  j.at("response").get_to(t.response);
  j.at("newly_satisfied").get_to(t.newly_satisfied);
}

inline void to_json(nlohmann::json& j, const StrategyOutcome& o) {
  j = nlohmann::json{{"final_text", o.final_text},
                     {"satisfied", o.satisfied},
                     {"iterations_used", o.iterations_used},
                     {"trace", o.trace},
                     {"strategy_id", o.strategy_id},
                     {"terminated_by", to_string(o.terminated_by)}};
}

inline void from_json(const nlohmann::json& j, StrategyOutcome& o) {
  j.at("final_text").get_to(o.final_text);
  j.at("satisfied").get_to(o.satisfied);
  j.at("iterations_used").get_to(o.iterations_used);
  j.at("trace").get_to(o.trace);
  j.at("strategy_id").get_to(o.strategy_id);
  o.terminated_by = terminated_from_string(j.at("terminated_by").get<std::string>());
}

/// Canonical fingerprint of a request: exactly the fields that define a
/// cache identity (model, messages, params including seed).
inline nlohmann::json request_fingerprint(const GenerationRequest& req) {
  return nlohmann::json{{"model_id", req.model_id},
                        {"messages", req.messages},
                        {"params", req.params}};
}

}  // namespace lexcon
