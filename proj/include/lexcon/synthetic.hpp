#pragma once

#include "lexcon/backend.hpp"
#include "lexcon/text.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace lexcon {

/// Compound surface (normalized) -> its two constituent words.
using CompoundLexicon = std::map<std::string, std::pair<std::string, std::string>>;

/// Parameters of the seeded biased generator used for desk-scale runs.
/// Per-keyword inclusion probability at prompt position i (0-based, m
/// keywords total):
///
///   p_i = clamp(p0 * d^max(0, m-5) * w_i, 0, 1)
///   w_i = 1                          bias none (or m == 1)
///   w_i = 1 + b * (m-1-i) / (m-1)    primacy  (earlier favored)
///   w_i = 1 + b * i / (m-1)          recency  (later favored)
///
/// Decay starts beyond 5 keywords, matching the observed near-flat regime
/// for small constraint sets.
struct SyntheticModelConfig {
  double base_coverage = 0.8;  // p0
  enum class BiasMode { none, primacy, recency };
  BiasMode bias_mode = BiasMode::none;
  double bias_strength = 0.0;        // b >= 0
  double count_decay = 1.0;          // d in [0, 1]
  double compound_split_prob = 0.0;  // c in [0, 1]
  uint64_t seed = 0;

  /// Throws ConfigError when a field is outside its range.
  void validate() const;

  bool independence_regime() const {
    return bias_mode == BiasMode::none && count_decay == 1.0 &&
           compound_split_prob == 0.0;
  }
};

const char* to_string(SyntheticModelConfig::BiasMode mode);
SyntheticModelConfig::BiasMode bias_mode_from_string(const std::string& s);

double inclusion_probability(const SyntheticModelConfig& cfg, size_t position,
                             size_t m);

/// Emits a trivial sentence containing keyword i independently with
/// probability p_i. The random stream is keyed by (cfg.seed, call_index,
/// keyword position), so identical inputs give identical text from any
/// thread. With probability c an included single-token compound keyword
/// found in `compounds` is emitted as its two constituents instead of
/// intact.
GenerationResult synth_generate(const KeywordSet& X,
                                const SyntheticModelConfig& cfg,
                                uint64_t call_index,
                                const CompoundLexicon& compounds = {});

enum class StrategyKind { vanilla, rj, dnc };

const char* to_string(StrategyKind kind);
StrategyKind strategy_kind_from_string(const std::string& s);

/// Closed-form instance success probability for a strategy run against the
/// synthetic model in the independence regime (bias none, d=1, c=0):
///
///   vanilla          p0^m
///   RJ, budget K     1 - (1 - p0^m)^(K+1)
///   DnC, budget K    (1 - (1-p0)^(K+1))^m
///
/// K counts additional iterations beyond the first call. Throws
/// std::invalid_argument outside the independence regime.
double implied_instance_success(const SyntheticModelConfig& cfg, size_t m,
                                StrategyKind strategy, int K);

/// Backend adapter. Reads the keyword list from
/// GenerationRequest::constraint_keywords (rendered prompts are never parsed
/// back apart) and takes params.seed as the call index when present,
/// otherwise a process-local counter.
class SyntheticBackend : public Backend {
 public:
  explicit SyntheticBackend(SyntheticModelConfig cfg,
                            CompoundLexicon compounds = {},
                            MatchPolicy policy = {});

  GenerationResult generate(const GenerationRequest& req) override;
  std::string id() const override { return "synthetic"; }

  const SyntheticModelConfig& config() const { return cfg_; }

 private:
  SyntheticModelConfig cfg_;
  CompoundLexicon compounds_;
  MatchPolicy policy_;
  std::atomic<uint64_t> counter_{0};
};

}  // namespace lexcon
