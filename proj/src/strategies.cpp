#include "lexcon/strategies.hpp"

#include "lexcon/error.hpp"

#include <algorithm>
#include <regex>
#include <unordered_set>

namespace lexcon {
namespace {

// Merge rewrites draw seeds from a separate lane so they never collide with
// generation calls of the same trial.
constexpr uint64_t kRewriteSeedLane = 1ull << 20;

DecodingParams call_params(const GenOptions& opts, uint64_t ordinal,
                           bool rewrite = false) {
  DecodingParams p = opts.params;
  if (p.seed) {
    *p.seed += ordinal + (rewrite ? kRewriteSeedLane : 0);
  }
  return p;
}

GenerationRequest make_request(std::string prompt, const KeywordSet& prompted,
                               const GenOptions& opts, uint64_t ordinal) {
  GenerationRequest req = GenerationRequest::single_user(
      std::move(prompt), call_params(opts, ordinal), opts.model_id);
  req.constraint_keywords.reserve(prompted.size());
  for (const Keyword& kw : prompted.keywords) {
    req.constraint_keywords.push_back(kw.surface);
  }
  return req;
}

std::vector<KeywordOutcome> verify_against(const KeywordSet& X,
                                           const std::string& text) {
  const TokenizedText toks = normalize_and_tokenize(text, X.policy);
  std::vector<KeywordOutcome> out;
  out.reserve(X.size());
  int position = 0;
  for (const Keyword& kw : X.keywords) {
    out.push_back({kw.surface, contains_keyword(toks, kw, X.policy), position++});
  }
  return out;
}

// Keeps the trace invariant exact: every surface listed as newly satisfied
// must be satisfied in the final text.
void restrict_trace_to_final(StrategyOutcome& outcome) {
  std::unordered_set<std::string> satisfied;
  for (const KeywordOutcome& k : outcome.satisfied) {
    if (k.satisfied) satisfied.insert(k.keyword);
  }
  for (IterationTrace& t : outcome.trace) {
    std::erase_if(t.newly_satisfied, [&](const std::string& s) {
      return !satisfied.contains(s);
    });
  }
}

int parse_score(const std::string& text, const char* label) {
  // Label followed by a 1..5 within a short window, e.g. "Coherence: 4".
  std::regex re(std::string(label) + R"([^0-9]{0,20}([1-5]))",
                std::regex::icase);
  std::smatch m;
  if (!std::regex_search(text, m, re)) {
    throw ParseError(std::string("no ") + label + " score found in judge reply",
                     text);
  }
  return m[1].str()[0] - '0';
}

}  // namespace

const char* to_string(MergeMode mode) {
  return mode == MergeMode::concat ? "concat" : "llm_rewrite";
}

MergeMode merge_mode_from_string(const std::string& s) {
  if (s == "concat") return MergeMode::concat;
  if (s == "llm_rewrite") return MergeMode::llm_rewrite;
  throw ConfigError("unknown merge mode: " + s);
}

const char* to_string(Terminated t) {
  return t == Terminated::all_satisfied ? "all_satisfied" : "budget_exhausted";
}

Terminated terminated_from_string(const std::string& s) {
  if (s == "all_satisfied") return Terminated::all_satisfied;
  if (s == "budget_exhausted") return Terminated::budget_exhausted;
  throw ConfigError("unknown termination state: " + s);
}

StrategyOutcome vanilla_generate(Backend& backend, const PromptTemplate& tpl,
                                 const KeywordSet& X, const GenOptions& opts) {
  StrategyOutcome outcome;
  outcome.strategy_id = "vanilla";

  const std::string prompt = render_prompt(tpl, X);
  const GenerationResult res = backend.generate(make_request(prompt, X, opts, 0));

  outcome.final_text = res.text;
  outcome.satisfied = verify_against(X, res.text);
  outcome.iterations_used = 1;
  IterationTrace trace{1, prompt, res.text, {}};
  for (const KeywordOutcome& k : outcome.satisfied) {
    if (k.satisfied) trace.newly_satisfied.push_back(k.keyword);
  }
  outcome.trace.push_back(std::move(trace));
  outcome.terminated_by = outcome.all_satisfied() ? Terminated::all_satisfied
                                                  : Terminated::budget_exhausted;
  return outcome;
}

StrategyOutcome rejection_sampling(Backend& backend, const PromptTemplate& tpl,
                                   const KeywordSet& X, const GenOptions& opts,
                                   int K) {
  if (K < 0) throw ConfigError("rejection_sampling: K must be >= 0");

  StrategyOutcome outcome;
  outcome.strategy_id = "rj";

  const std::string prompt = render_prompt(tpl, X);

  int best_index = -1;
  int best_satisfied = -1;
  std::vector<KeywordOutcome> best_flags;
  std::vector<std::string> responses;

  for (int attempt = 0; attempt <= K; ++attempt) {
    const GenerationResult res = backend.generate(
        make_request(prompt, X, opts, static_cast<uint64_t>(attempt)));
    responses.push_back(res.text);
    outcome.trace.push_back({attempt + 1, prompt, res.text, {}});

    std::vector<KeywordOutcome> flags = verify_against(X, res.text);
    int satisfied =
        static_cast<int>(std::count_if(flags.begin(), flags.end(),
                                       [](const KeywordOutcome& k) {
                                         return k.satisfied;
                                       }));
    if (satisfied > best_satisfied) {
      best_satisfied = satisfied;
      best_index = attempt;
      best_flags = std::move(flags);
    }
    if (best_satisfied == static_cast<int>(X.size())) break;
  }

  outcome.final_text = responses[static_cast<size_t>(best_index)];
  outcome.satisfied = std::move(best_flags);
  outcome.iterations_used = static_cast<int>(outcome.trace.size());
  for (const KeywordOutcome& k : outcome.satisfied) {
    if (k.satisfied) {
      outcome.trace[static_cast<size_t>(best_index)].newly_satisfied.push_back(
          k.keyword);
    }
  }
  outcome.terminated_by = outcome.all_satisfied() ? Terminated::all_satisfied
                                                  : Terminated::budget_exhausted;
  return outcome;
}

std::string merge(const std::string& s, const std::string& s_prime,
                  MergeMode mode, const MergeContext* ctx) {
  std::string concatenated;
  if (s.empty()) {
    concatenated = s_prime;
  } else if (s_prime.empty()) {
    concatenated = s;
  } else {
    concatenated = s + " " + s_prime;
  }
  if (mode == MergeMode::concat) return concatenated;

  if (ctx == nullptr || ctx->backend == nullptr) {
    throw ConfigError("merge: llm_rewrite requires a backend");
  }
  static const TemplateLibrary builtin = TemplateLibrary::builtins();
  const PromptTemplate& tpl =
      ctx->rewrite_template ? *ctx->rewrite_template : builtin.get("dnc_rewrite");

  GenerationRequest req = GenerationRequest::single_user(
      render_placeholders(tpl.preamble, {{"text", concatenated}}),
      ctx->options.params, ctx->options.model_id);
  const GenerationResult res = ctx->backend->generate(req);

  if (ctx->preserve != nullptr && !ctx->preserve->empty()) {
    const TokenizedText toks =
        normalize_and_tokenize(res.text, ctx->preserve->policy);
    for (const Keyword& kw : ctx->preserve->keywords) {
      if (!contains_keyword(toks, kw, ctx->preserve->policy)) {
        return concatenated;  // rewrite lost a keyword
      }
    }
  }
  return res.text;
}

StrategyOutcome dnc_generate(Backend& backend, const PromptTemplate& tpl,
                             const KeywordSet& X, const GenOptions& opts, int K,
                             MergeMode merge_mode,
                             const PromptTemplate* rewrite_tpl) {
  if (K < 0) throw ConfigError("dnc_generate: K must be >= 0");

  StrategyOutcome outcome;
  outcome.strategy_id = "dnc";

  if (X.empty()) {
    outcome.terminated_by = Terminated::all_satisfied;
    return outcome;
  }

  std::vector<bool> satisfied(X.size(), false);
  std::string accumulated;
  const int max_calls = K + 1;

  for (int iteration = 1; iteration <= max_calls; ++iteration) {
    KeywordSet missing;
    missing.policy = X.policy;
    for (size_t i = 0; i < X.size(); ++i) {
      if (!satisfied[i]) missing.keywords.push_back(X.keywords[i]);
    }
    if (missing.empty()) break;

    const std::string prompt = render_prompt(tpl, missing);
    const GenerationResult res = backend.generate(
        make_request(prompt, missing, opts, static_cast<uint64_t>(iteration - 1)));

    // Newly satisfied keywords come from the latest response alone.
    const TokenizedText response_tokens =
        normalize_and_tokenize(res.text, X.policy);
    IterationTrace trace{iteration, prompt, res.text, {}};
    for (size_t i = 0; i < X.size(); ++i) {
      if (satisfied[i]) continue;
      if (contains_keyword(response_tokens, X.keywords[i], X.policy)) {
        satisfied[i] = true;
        trace.newly_satisfied.push_back(X.keywords[i].surface);
      }
    }
    outcome.trace.push_back(std::move(trace));

    if (merge_mode == MergeMode::llm_rewrite) {
      KeywordSet preserve;
      preserve.policy = X.policy;
      for (size_t i = 0; i < X.size(); ++i) {
        if (satisfied[i]) preserve.keywords.push_back(X.keywords[i]);
      }
      MergeContext ctx;
      ctx.backend = &backend;
      ctx.rewrite_template = rewrite_tpl;
      ctx.options = opts;
      ctx.options.params =
          call_params(opts, static_cast<uint64_t>(iteration - 1), true);
      ctx.preserve = &preserve;
      accumulated = merge(accumulated, res.text, MergeMode::llm_rewrite, &ctx);
    } else {
      accumulated = merge(accumulated, res.text, MergeMode::concat);
    }
  }

  outcome.final_text = accumulated;
  outcome.satisfied = verify_against(X, accumulated);
  outcome.iterations_used = static_cast<int>(outcome.trace.size());
  outcome.terminated_by = outcome.all_satisfied() ? Terminated::all_satisfied
                                                  : Terminated::budget_exhausted;
  restrict_trace_to_final(outcome);
  return outcome;
}

QualityScores llm_quality_eval(const std::string& text, Backend& judge,
                               const std::string& example,
                               const GenOptions& opts,
                               const PromptTemplate* tpl) {
  static const TemplateLibrary builtin = TemplateLibrary::builtins();
  const PromptTemplate& eval_tpl = tpl ? *tpl : builtin.get("quality_eval");

  GenerationRequest req = GenerationRequest::single_user(
      render_placeholders(eval_tpl.preamble,
                          {{"example", example}, {"text", text}}),
      opts.params, opts.model_id);
  const GenerationResult res = judge.generate(req);

  QualityScores scores;
  scores.coherence = parse_score(res.text, "coherence");
  scores.fluency = parse_score(res.text, "fluency");
  scores.readability = parse_score(res.text, "readability");
  return scores;
}

}  // namespace lexcon
