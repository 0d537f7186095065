#pragma once

#include "lexcon/backend.hpp"
#include "lexcon/metrics.hpp"
#include "lexcon/templates.hpp"
#include "lexcon/text.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lexcon {

enum class MergeMode { concat, llm_rewrite };

const char* to_string(MergeMode mode);
MergeMode merge_mode_from_string(const std::string& s);

struct IterationTrace {
  int iteration = 0;  // 1-based
  std::string prompt;
  std::string response;
  // Keywords this iteration contributes to the final text. Unions to the
  // outcome's satisfied set across the trace.
  std::vector<std::string> newly_satisfied;
};

enum class Terminated { all_satisfied, budget_exhausted };

const char* to_string(Terminated t);
Terminated terminated_from_string(const std::string& s);

struct StrategyOutcome {
  std::string final_text;
  std::vector<KeywordOutcome> satisfied;  // verified against final_text
  int iterations_used = 0;                // == trace.size()
  std::vector<IterationTrace> trace;
  std::string strategy_id;
  Terminated terminated_by = Terminated::all_satisfied;

  bool all_satisfied() const {
    for (const KeywordOutcome& k : satisfied) {
      if (!k.satisfied) return false;
    }
    return true;
  }
};

/// Per-call knobs shared by all strategies. When params.seed is set, call j
/// of a strategy run goes out with seed + j (merge rewrites use a separate
/// lane), so repeated attempts sample fresh completions and stay cacheable.
struct GenOptions {
  DecodingParams params;
  std::string model_id;
};

/// One backend call, flags from constraint-core.
StrategyOutcome vanilla_generate(Backend& backend, const PromptTemplate& tpl,
                                 const KeywordSet& X, const GenOptions& opts);

/// Up to K+1 independent full-prompt attempts; returns the first attempt
/// satisfying all of X, otherwise the attempt with the highest keyword
/// coverage (ties go to the earliest). The trace holds every attempt.
StrategyOutcome rejection_sampling(Backend& backend, const PromptTemplate& tpl,
                                   const KeywordSet& X, const GenOptions& opts,
                                   int K);

/// Divide-and-conquer loop: each iteration prompts with only the keywords
/// still missing, computes newly satisfied keywords from the latest response
/// alone, and merges the response into the accumulated text. Stops when
/// nothing is missing or K+1 generation calls are spent. Final flags are
/// re-verified against the final text.
StrategyOutcome dnc_generate(Backend& backend, const PromptTemplate& tpl,
                             const KeywordSet& X, const GenOptions& opts, int K,
                             MergeMode merge_mode = MergeMode::concat,
                             const PromptTemplate* rewrite_tpl = nullptr);

/// Context for llm_rewrite merges.
struct MergeContext {
  Backend* backend = nullptr;
  const PromptTemplate* rewrite_template = nullptr;  // null -> builtin
  GenOptions options;
  const KeywordSet* preserve = nullptr;  // keywords that must survive
};

/// concat: s + " " + s' (s empty -> s'). llm_rewrite: one backend call
/// turning the concatenation into a cohesive paragraph; if the rewrite drops
/// any keyword in ctx->preserve, the concat result is returned instead.
std::string merge(const std::string& s, const std::string& s_prime,
                  MergeMode mode, const MergeContext* ctx = nullptr);

struct QualityScores {
  int coherence = 0;
  int fluency = 0;
  int readability = 0;
};

/// One-shot judge call on the quality_eval template; parses the three 1..5
/// scores out of the reply. Throws ParseError (raw reply retained) when the
/// scores cannot be found.
QualityScores llm_quality_eval(const std::string& text, Backend& judge,
                               const std::string& example,
                               const GenOptions& opts = {},
                               const PromptTemplate* tpl = nullptr);

}  // namespace lexcon
